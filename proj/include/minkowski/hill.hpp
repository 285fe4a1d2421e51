#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minkowski/curve.hpp"
#include "minkowski/expression.hpp"
#include "minkowski/norm.hpp"
#include "minkowski/spectral.hpp"
#include "minkowski/sturm_liouville.hpp"

namespace minkowski {

// Coefficient f of the Hill equation u'' + f(t) u = 0, carried as an
// SLCoefficients object with b = 1 and half period c.
//
// Coefficients from an expression or from samples use t itself as the grid
// parameter. Coefficients induced by a norm use the boundary chart as the
// grid, with dt = B dtau; f is then A/B and is infinite wherever the unit
// circle has a curvature zero, which the density form handles without
// special cases.
class HillCoefficient {
public:
    static HillCoefficient from_function(std::function<double(double)> f, double c, int steps = 4096);
    static HillCoefficient from_expression(const Expression& f, double c, int steps = 4096);
    // Uniform samples f(t_i) over one period, the endpoint excluded. The
    // period is n times the sample spacing; c defaults to half of it.
    static HillCoefficient from_samples(std::span<const double> t, std::span<const double> f,
                                        std::optional<double> c = std::nullopt, int steps = 4096);
    // Density rows (A, B, speed) at the grid nodes and step midpoints of a
    // grid of rows.size() / 2 steps over [0, grid_period).
    static HillCoefficient from_density_table(std::span<const FormSample> rows, double grid_period);

    [[nodiscard]] double c() const noexcept { return equation_.half_period(); }
    [[nodiscard]] double period() const noexcept { return equation_.period(); }
    [[nodiscard]] double operator()(double t) const;
    // f on a uniform grid of n points over one period (default: step count).
    [[nodiscard]] ScalarPeriodic samples(std::optional<int> n = std::nullopt) const;
    [[nodiscard]] const SLCoefficients& equation() const noexcept { return equation_; }
    [[nodiscard]] HillCoefficient scaled(double factor) const;
    // Rows for from_density_table: start and midpoint of every step.
    [[nodiscard]] std::vector<FormSample> density_table() const;

    explicit HillCoefficient(SLCoefficients equation) : equation_(std::move(equation)) {}

private:
    SLCoefficients equation_;
};

[[nodiscard]] HillCoefficient hill_from_geometry(const NormProfile& profile, const SymplecticForm& form,
                                                 int steps = 4096);

// u1(t) = omega(psi(t), psi'(0)) and u2(t) = -omega(psi(t), psi(0)) with
// their t-derivatives, on the anti-circle area parameter.
struct ClosedFormSolutions {
    ScalarPeriodic u1;
    ScalarPeriodic u2;
    ScalarPeriodic du1;
    ScalarPeriodic du2;
};
[[nodiscard]] ClosedFormSolutions hill_closed_form_solutions(const NormProfile& profile, const SymplecticForm& form,
                                                             int n = 4096);

// Wronskian u v' - u' v.
[[nodiscard]] double wronskian(double u, double du, double v, double dv) noexcept;

struct ClosedFormCheck {
    double initial_u1 = 0, initial_du1 = 0, initial_u2 = 0, initial_du2 = 0;
    // Integrated form of u'' + f u = 0 along the grid, sup over nodes.
    double equation_residual = 0;
    // Sup distance to RK4 solutions started from (1, 0) and (0, 1).
    double rk4_mismatch = 0;
    // max |W(u1, u2) - 1| and max |W - W(0)|.
    double wronskian_deviation = 0;
    double wronskian_drift = 0;
    // max |psi(t) - u1(t) psi(0) - u2(t) psi'(0)|.
    double decomposition_residual = 0;
};
[[nodiscard]] ClosedFormCheck closed_form_check(const NormProfile& profile, const SymplecticForm& form,
                                                int steps = 4096);

// Advance m(t) in (0, L) with psi(t + m) parallel to psi'(t), psi from
// antinorm_arclength_param. Throws DegenerateCurveError without a bracket.
[[nodiscard]] ScalarPeriodic m_function(const ClosedCurve& psi, const NormProfile& profile,
                                        const SymplecticForm& form);

struct DiagnosticsThresholds {
    double euclidean = 1e-6;
    double radon = 1e-3;
};

struct DiagnosticsReport {
    ScalarPeriodic m;
    double period = 0;  // L, length of the anti-circle parameter
    double m_std = 0;
    double xi_min = 0;
    double xi_max = 0;
    double double_m_deviation = 0;
    double shift_residual = 0;
    bool xi_constant = false;
    bool double_m_holds = false;
    bool shift_holds = false;
    bool is_euclidean = false;
    bool is_radon = false;
    DiagnosticsThresholds thresholds;

    [[nodiscard]] double xi_width() const noexcept { return xi_max - xi_min; }
    [[nodiscard]] bool radon_criteria_agree() const noexcept {
        return xi_constant == double_m_holds && double_m_holds == shift_holds;
    }
};
[[nodiscard]] DiagnosticsReport diagnostics(const NormProfile& profile, const SymplecticForm& form, int n = 4096,
                                            DiagnosticsThresholds thresholds = {});

enum class Verdict { induces, rejected };
enum class RejectReason { not_double_at_1, antiperiodic_below_1, nonpositive_f, self_intersection, nonconvex };
[[nodiscard]] std::string to_string(Verdict v);
[[nodiscard]] std::string to_string(RejectReason r);

struct ReconstructionReport {
    Verdict verdict = Verdict::rejected;
    std::optional<RejectReason> reason;
    ClosedCurve psi;  // anti-circle, on the coefficient's grid parameter
    ClosedCurve phi;  // unit circle
    std::optional<double> lambda1;
    double monodromy_distance = 0;  // ||M(1) + I||_F after any rescaling
    std::optional<double> antiperiodic_witness;
    double closure_gap = 0;
    double symmetry_residual = 0;
    double wronskian_deviation = 0;  // max |omega(psi, psi') - 1|
    double f_residual = 0;           // max |omega(phi, phi') / f - 1|
    double winding = 0;              // total turning of psi, in turns
    std::vector<std::string> log;

    [[nodiscard]] bool accepted() const noexcept { return verdict == Verdict::induces; }
    // Unit ball of the induced norm (requires acceptance).
    [[nodiscard]] NormProfile circle_profile() const;
};
[[nodiscard]] ReconstructionReport reconstruct_geometry(const HillCoefficient& f);

// Canonical position of a closed polygon: centroid at the origin and the
// area second-moment matrix a multiple of the identity, by a symmetric
// positive map of determinant one.
[[nodiscard]] std::vector<Vec2> affine_normalize(std::span<const Vec2> polygon);
// Hausdorff distance between two closed polygons (vertices to segments).
[[nodiscard]] double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b);
// Hausdorff distance after affine normalization of both polygons,
// minimized over rotations of the first.
[[nodiscard]] double normalized_hausdorff(std::span<const Vec2> a, std::span<const Vec2> b);

struct RoundTripReport {
    double hausdorff = 0;
    double f_mismatch = 0;       // sup |f_reextracted / f - 1| at matched boundary points
    double period_mismatch = 0;  // |L_reextracted - L|
    int excluded_nodes = 0;      // nodes at curvature zeros, where f is infinite
};
// Compares an accepted reconstruction with the norm its coefficient came from.
[[nodiscard]] RoundTripReport round_trip(const ReconstructionReport& report, const HillCoefficient& input,
                                         const NormProfile& original);

struct CurvatureIdentityReport {
    double max_relative_residual = 0;  // max |f k_m - 1|
    double period_mismatch = 0;
    int excluded_nodes = 0;  // nodes at curvature zeros, where f is infinite
    double first_eigenvalue = 0;
    bool first_is_double = false;
    // The first positive eigenvalue is 1 and double, as it must be for an
    // inverse Minkowski curvature.
    bool eigen_consistent = false;
};
[[nodiscard]] CurvatureIdentityReport curvature_identity_check(const NormProfile& profile, const SymplecticForm& form,
                                                               int n = 4096);

struct ReparamProbeReport {
    std::vector<double> alphas;
    std::vector<double> residuals;  // max_t |f(alpha t) - (lambda / alpha^2) f(t)|
    double min_residual = 0;
    double best_alpha = 0;
    bool f_constant = false;
    // A nonconstant f satisfying the scaling relation.
    bool contradiction = false;
    // For constant f: every alpha with alpha^2 = lambda passes.
    std::optional<bool> euclidean_consistent;
    double tolerance = 0;
};
[[nodiscard]] ReparamProbeReport reparam_probe(const HillCoefficient& f, double lambda, std::span<const double> alphas,
                                               int n = 2048, double tol = 1e-6);

}  // namespace minkowski
