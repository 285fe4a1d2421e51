#pragma once

#include <optional>

#include "minkowski/curve.hpp"
#include "minkowski/norm.hpp"
#include "minkowski/sturm_liouville.hpp"

namespace minkowski {

// All curves below share one parameter grid. Identities that involve
// derivatives only through ratios such as rho'/omega(psi, psi') hold on any
// common parameter, so the boundary-chart grid of SLCoefficients is used.

// Centers of curvature xi = gamma - rho phi.
[[nodiscard]] ClosedCurve evolute(const ClosedCurve& gamma, const ClosedCurve& phi);

// eta = xi - (rho'/omega(psi, psi')) psi, with rho' from a spline through rho.
[[nodiscard]] ClosedCurve bi_evolute(const ClosedCurve& gamma, const ClosedCurve& phi, const ClosedCurve& psi,
                                     const SymplecticForm& form);
// Same construction for a cycloid of a solution, taking rho = u and the
// quotient rho'/omega(psi, psi') from the quasi-derivative w. This stays
// finite where omega(psi, psi') vanishes.
[[nodiscard]] ClosedCurve bi_evolute(const SLSolution& rho, const ClosedCurve& gamma, const ClosedCurve& phi,
                                     const ClosedCurve& psi);

struct Cycloid {
    ClosedCurve curve;    // samples gamma(s_0), ..., gamma(s_{n-1})
    Vec2 displacement;    // gamma(end of rho) - gamma(0)
};

// gamma(s) = gamma0 + integral of rho phi' by cumulative composite Simpson.
// rho must be sampled on phi's grid over one full period.
[[nodiscard]] Cycloid cycloid_from_radius(const SLSolution& rho, const ClosedCurve& phi, Vec2 gamma0);

struct ClosureVerdict {
    double periodic_residual;      // max |rho(t + half) - rho(t)| relative to max |rho|
    double antiperiodic_residual;  // max |rho(t + half) + rho(t)| relative to max |rho|
    double gap;                    // |gamma(end) - gamma(0)|
    double diameter;
    bool closed;
    std::optional<double> support_residual;  // max |h_gamma - rho/(1 - lambda)|
};

// rho must be a full-period solution from integrate_sl on coeffs (which must
// carry geometry). The support branch runs for antiperiodic rho with lambda != 1.
[[nodiscard]] ClosureVerdict closure_check(const SLCoefficients& coeffs, double lambda, const SLSolution& rho,
                                           double tol);

// Cycloid whose support function is rho/(1 - lambda), and the residual of
// that identity. Throws DomainError for lambda = 1.
struct SupportIdentity {
    Cycloid cycloid;
    double residual;
};
[[nodiscard]] SupportIdentity support_identity(const SLCoefficients& coeffs, double lambda, const SLSolution& rho);

[[nodiscard]] ScalarPeriodic support_function(const ClosedCurve& gamma, const ClosedCurve& psi,
                                              const SymplecticForm& form);
// max |gamma - (h phi + (h'/omega(psi, psi')) psi) - c| with c the mean offset.
// Nodes where omega(psi, psi') is below 1e-8 of its maximum are skipped.
[[nodiscard]] double support_reconstruction_residual(const ClosedCurve& gamma, const ClosedCurve& phi,
                                                     const ClosedCurve& psi, const SymplecticForm& form);

struct HomothetyFit {
    double ratio;     // b - mean(b) ~ ratio * (a - mean(a))
    double residual;  // max pointwise misfit relative to max |a - mean(a)|
};
[[nodiscard]] HomothetyFit fit_homothety(const ClosedCurve& a, const ClosedCurve& b);

struct RadonTrigReport {
    double calibration_residual;
    bool radon;
    double sm_residual;  // sup |u - RK4 solution| for u(t) = sm(phi'(t), phi'(0))
    double cm_residual;  // same for u(t) = cm(phi(t), phi(0))
    double sm_scale;     // max |u| of each trigonometric solution
    double cm_scale;
};

// Compares the Minkowskian sine and cosine solutions with RK4 solutions of
// (u'/delta)' + u = 0, delta = |phi''|, from the same initial data. With
// strict set, a profile whose Radon calibration residual exceeds
// radon_tol raises NotRadonError; otherwise the report is produced anyway.
[[nodiscard]] RadonTrigReport radon_trig_check(const NormProfile& profile, const SymplecticForm& form,
                                               bool strict = true, int steps = 4096, double radon_tol = 1e-6);

}  // namespace minkowski
