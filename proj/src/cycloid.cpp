#include "minkowski/cycloid.hpp"

#include <algorithm>
#include <cmath>

#include "minkowski/errors.hpp"
#include "minkowski/numerics.hpp"
#include "minkowski/param.hpp"

namespace minkowski {

namespace {

void require_same_grid(const ClosedCurve& a, const ClosedCurve& b) {
    if (a.size() != b.size() || std::fabs(a.period() - b.period()) > 1e-12 * b.period()) {
        throw ParametrizationMismatch("curves must share their parameter grid");
    }
}

double max_norm(std::span<const Vec2> pts, Vec2 center) {
    double m = 0.0;
    for (Vec2 p : pts) m = std::max(m, euclid(p - center));
    return m;
}

}  // namespace

ClosedCurve evolute(const ClosedCurve& gamma, const ClosedCurve& phi) {
    const ScalarPeriodic rho = radius_of_curvature(gamma, phi);
    std::vector<Vec2> xi(gamma.size());
    for (std::size_t i = 0; i < xi.size(); ++i) xi[i] = gamma[i] - rho[i] * phi[i];
    return ClosedCurve(gamma.period(), std::move(xi));
}

ClosedCurve bi_evolute(const ClosedCurve& gamma, const ClosedCurve& phi, const ClosedCurve& psi,
                       const SymplecticForm& form) {
    require_same_grid(gamma, psi);
    const ScalarPeriodic rho = radius_of_curvature(gamma, phi);
    std::vector<Vec2> eta(gamma.size());
    for (std::size_t i = 0; i < eta.size(); ++i) {
        const CurveJet p = psi.jet_at(i);
        const double delta = rho.derivative(rho.param(i)) / form(p.p, p.d1);
        eta[i] = gamma[i] - rho[i] * phi[i] - delta * p.p;
    }
    return ClosedCurve(gamma.period(), std::move(eta));
}

ClosedCurve bi_evolute(const SLSolution& rho, const ClosedCurve& gamma, const ClosedCurve& phi,
                       const ClosedCurve& psi) {
    require_same_grid(gamma, phi);
    require_same_grid(gamma, psi);
    if (rho.size() < gamma.size()) throw ParametrizationMismatch("solution does not cover the curve grid");
    std::vector<Vec2> eta(gamma.size());
    for (std::size_t i = 0; i < eta.size(); ++i) eta[i] = gamma[i] - rho.u[i] * phi[i] - rho.w[i] * psi[i];
    return ClosedCurve(gamma.period(), std::move(eta));
}

Cycloid cycloid_from_radius(const SLSolution& rho, const ClosedCurve& phi, Vec2 gamma0) {
    const std::size_t n = phi.size();
    const double h = phi.step();
    if (n % 2 != 0) throw ParametrizationMismatch("Simpson quadrature needs an even number of samples");
    if (rho.size() < n + 1 || std::fabs(rho.s[n] - phi.period()) > 1e-9 * phi.period() ||
        std::fabs(rho.s[1] - h) > 1e-9 * h) {
        throw ParametrizationMismatch("radius must be sampled on the circle grid over one full period");
    }
    // Integrand at a node, taken from the left or the right so that each
    // Simpson panel sees one smooth piece of a piecewise chart.
    const double nudge = 1e-10 * h;
    const auto right = [&](std::size_t i) { return rho.u[i] * phi.jet(phi.param(i)).d1; };
    const auto left = [&](std::size_t i) { return rho.u[i] * phi.jet(static_cast<double>(i) * h - nudge).d1; };

    std::vector<Vec2> pts(n);
    Vec2 g = gamma0;
    for (std::size_t m = 0; m < n; m += 2) {
        const Vec2 f0 = right(m), f1 = right(m + 1), f2 = left(m + 2);
        pts[m] = g;
        pts[m + 1] = g + (h / 12.0) * (5.0 * f0 + 8.0 * f1 - f2);
        g = g + (h / 3.0) * (f0 + 4.0 * f1 + f2);
    }
    return {ClosedCurve(phi.period(), std::move(pts)), g - gamma0};
}

SupportIdentity support_identity(const SLCoefficients& coeffs, double lambda, const SLSolution& rho) {
    if (std::fabs(1.0 - lambda) < 1e-12) throw DomainError("support identity divides by 1 - lambda");
    const ClosedCurve phi = coeffs.phi();
    const ClosedCurve psi = coeffs.psi();
    const SymplecticForm form = coeffs.geometry().form;
    const Vec2 g0 = (rho.u[0] * phi[0] + rho.w[0] * psi[0]) / (1.0 - lambda);
    Cycloid cyc = cycloid_from_radius(rho, phi, g0);
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        worst = std::max(worst, std::fabs(form(cyc.curve[i], psi[i]) - rho.u[i] / (1.0 - lambda)));
    }
    return {std::move(cyc), worst};
}

ClosureVerdict closure_check(const SLCoefficients& coeffs, double lambda, const SLSolution& rho, double tol) {
    const auto n = static_cast<std::size_t>(coeffs.steps());
    if (rho.size() != n + 1) throw DomainError("closure check needs a solution over one full period");
    // The grid is symmetric under the half-turn, so t + half lands on node i + n/2.
    const std::size_t half = n / 2;
    const double scale = std::max(rho.max_abs(), 1e-300);
    ClosureVerdict v{};
    for (std::size_t i = 0; i <= half; ++i) {
        v.periodic_residual = std::max(v.periodic_residual, std::fabs(rho.u[i + half] - rho.u[i]) / scale);
        v.antiperiodic_residual = std::max(v.antiperiodic_residual, std::fabs(rho.u[i + half] + rho.u[i]) / scale);
    }
    const bool support_branch = v.antiperiodic_residual < 1e-6 && std::fabs(1.0 - lambda) >= 1e-12;
    if (support_branch) {
        const SupportIdentity s = support_identity(coeffs, lambda, rho);
        v.gap = euclid(s.cycloid.displacement);
        v.diameter = s.cycloid.curve.diameter();
        v.support_residual = s.residual;
    } else {
        const Cycloid c = cycloid_from_radius(rho, coeffs.phi(), Vec2{});
        v.gap = euclid(c.displacement);
        v.diameter = c.curve.diameter();
    }
    v.closed = v.gap <= tol * std::max(1.0, v.diameter);
    return v;
}

ScalarPeriodic support_function(const ClosedCurve& gamma, const ClosedCurve& psi, const SymplecticForm& form) {
    require_same_grid(gamma, psi);
    std::vector<double> h(gamma.size());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = form(gamma[i], psi[i]);
    return ScalarPeriodic(gamma.period(), std::move(h));
}

double support_reconstruction_residual(const ClosedCurve& gamma, const ClosedCurve& phi, const ClosedCurve& psi,
                                       const SymplecticForm& form) {
    require_same_grid(gamma, phi);
    const ScalarPeriodic h = support_function(gamma, psi, form);
    const std::size_t n = gamma.size();
    std::vector<double> b(n);
    double b_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const CurveJet p = psi.jet_at(i);
        b[i] = form(p.p, p.d1);
        b_max = std::max(b_max, std::fabs(b[i]));
    }
    std::vector<Vec2> diff;
    diff.reserve(n);
    Vec2 mean{};
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(b[i]) < 1e-8 * b_max) continue;
        const Vec2 rec = h[i] * phi[i] + (h.derivative(h.param(i)) / b[i]) * psi[i];
        diff.push_back(gamma[i] - rec);
        mean += diff.back();
    }
    if (diff.empty()) throw DegenerateCurveError("anti-circle has no usable samples");
    mean = mean / static_cast<double>(diff.size());
    return max_norm(diff, mean);
}

HomothetyFit fit_homothety(const ClosedCurve& a, const ClosedCurve& b) {
    require_same_grid(a, b);
    const Vec2 ca = a.centroid(), cb = b.centroid();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += dot(b[i] - cb, a[i] - ca);
        den += dot(a[i] - ca, a[i] - ca);
    }
    if (!(den > 0.0)) throw DegenerateCurveError("reference curve is a single point");
    const double r = num / den;
    double misfit = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) misfit = std::max(misfit, euclid((b[i] - cb) - r * (a[i] - ca)));
    return {r, misfit / max_norm(a.points(), ca)};
}

RadonTrigReport radon_trig_check(const NormProfile& profile, const SymplecticForm& form, bool strict, int steps,
                                 double radon_tol) {
    const RadonCalibration cal = measure_radon_scale(profile);
    RadonTrigReport rep{};
    rep.calibration_residual = cal.residual;
    rep.radon = cal.residual <= radon_tol;
    if (strict && !rep.radon) {
        throw NotRadonError("profile is not Radon: calibration residual " + std::to_string(cal.residual),
                            cal.residual);
    }

    const auto& chart = profile.chart();
    // Unit-speed system: a = 1 and b = |phi''| in t; as densities on the
    // chart parameter the speed g = |gamma'| multiplies both. The rate of the
    // unit tangent T is det(gamma', gamma'')/g^2 in angle against the circle's
    // tangent at T, whose norm is gauge(J grad g(T)).
    const auto density = [profile, chart](int k, double tau) {
        const CurveJet j = chart.on_piece(k, tau);
        const double g = profile.gauge(j.d1);
        const Vec2 grad = profile.gauge_gradient(j.d1 / g);
        const double turn = std::fabs(det(j.d1, j.d2)) / (g * g) * profile.gauge(Vec2{-grad.y, grad.x});
        return FormSample{g, turn, g};
    };
    const SLCoefficients coeffs(density, BoundaryChart::period(), BoundaryChart::piece_count, steps);
    const double span = coeffs.period();
    const SLSolution e1 = integrate_sl(coeffs, 1.0, 1.0, 0.0, span);
    const SLSolution e2 = integrate_sl(coeffs, 1.0, 0.0, 1.0, span);

    const auto tangent = [&](double tau) {
        const Vec2 d = chart(tau).d1;
        return d / profile.gauge(d);
    };
    const Vec2 t0 = tangent(0.0);
    const Vec2 p0 = chart(0.0).p;
    const auto n = static_cast<std::size_t>(steps);
    std::vector<double> u_sm(n + 1), u_cm(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double tau = coeffs.grid_param(static_cast<int>(i));
        u_sm[i] = sm(profile, form, tangent(tau), t0);
        u_cm[i] = cm(profile, form, chart(tau).p, p0);
    }
    // u(0) fixes the first basis coefficient; the quasi-derivative at 0 is
    // fitted by least squares because b can vanish there.
    const auto misfit = [&](const std::vector<double>& u, double& scale) {
        const double alpha = u[0];
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            num += (u[i] - alpha * e1.u[i]) * e2.u[i];
            den += e2.u[i] * e2.u[i];
        }
        const double beta = num / den;
        double worst = 0.0;
        scale = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            worst = std::max(worst, std::fabs(u[i] - alpha * e1.u[i] - beta * e2.u[i]));
            scale = std::max(scale, std::fabs(u[i]));
        }
        return worst;
    };
    rep.sm_residual = misfit(u_sm, rep.sm_scale);
    rep.cm_residual = misfit(u_cm, rep.cm_scale);
    return rep;
}

}  // namespace minkowski
