#include "minkowski/hill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "minkowski/errors.hpp"
#include "minkowski/numerics.hpp"
#include "minkowski/param.hpp"
#include "minkowski/spline.hpp"

namespace minkowski {

using numerics::two_pi;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Below this fraction of its maximum a curvature zero is resolved only to
// roundoff: f there is a finite stand-in for +inf and is not compared.
constexpr double singular_cut = 1e-6;

double ratio(double num, double den) { return den == 0.0 ? inf : num / den; }

}  // namespace

// ---------------------------------------------------------------------------
// HillCoefficient

HillCoefficient HillCoefficient::from_function(std::function<double(double)> f, double c, int steps) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("half period c must be positive");
    const double period = 2.0 * c;
    auto density = [f = std::move(f), period](int, double s) {
        return FormSample{f(numerics::wrap(s, period)), 1.0, 1.0};
    };
    return HillCoefficient(SLCoefficients(std::move(density), period, 1, steps));
}

HillCoefficient HillCoefficient::from_expression(const Expression& f, double c, int steps) {
    return from_function([f](double t) { return f(t); }, c, steps);
}

HillCoefficient HillCoefficient::from_samples(std::span<const double> t, std::span<const double> f,
                                              std::optional<double> c, int steps) {
    if (t.size() != f.size()) throw ParseError("t and f columns differ in length");
    if (t.size() < 4) throw ParseError("need at least 4 samples of f");
    const double dt = t[1] - t[0];
    if (!(dt > 0.0)) throw ParseError("t samples must increase");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::fabs(t[i] - t[i - 1] - dt) > 1e-6 * dt) throw ParseError("t samples must be uniformly spaced");
    }
    for (double v : f) {
        if (!std::isfinite(v)) throw ParseError("f samples must be finite; use a density table instead");
    }
    const double period = dt * static_cast<double>(t.size());
    auto spline = std::make_shared<const PeriodicSpline>(f, period);
    const double t0 = t[0];
    return from_function([spline, t0](double s) { return (*spline)(s - t0); }, c.value_or(0.5 * period), steps);
}

HillCoefficient HillCoefficient::from_density_table(std::span<const FormSample> rows, double grid_period) {
    const std::size_t n = rows.size();
    if (n < 8 || n % 4 != 0) throw ParseError("density table needs a positive multiple of 4 rows");
    if (!(grid_period > 0.0) || !std::isfinite(grid_period)) throw ParseError("density table period must be positive");
    for (const FormSample& r : rows) {
        if (!std::isfinite(r.a_density) || !std::isfinite(r.b_density) || !std::isfinite(r.speed)) {
            throw ParseError("density table entries must be finite");
        }
    }
    auto table = std::make_shared<const std::vector<FormSample>>(rows.begin(), rows.end());
    const double step = 2.0 * grid_period / static_cast<double>(n);
    // Rows are hit exactly at grid nodes and midpoints. Elsewhere (the clock's
    // quadrature nodes) the quadratic through the step's start, midpoint and
    // end rows is used, so step-aligned kinks are not smeared.
    auto density = [table, n, step](int, double s) {
        const double x = s / step;
        const double i = std::min(std::floor(x), static_cast<double>(n / 2 - 1));
        const double u = x - i;
        const std::size_t k = 2 * static_cast<std::size_t>(i);
        const FormSample& r0 = (*table)[k];
        const FormSample& r1 = (*table)[k + 1];
        const FormSample& r2 = (*table)[(k + 2) % n];
        if (u == 0.0) return r0;
        if (u == 0.5) return r1;
        const double l0 = 2.0 * (u - 0.5) * (u - 1.0), l1 = -4.0 * u * (u - 1.0), l2 = 2.0 * u * (u - 0.5);
        const auto mix = [&](double FormSample::*f) { return l0 * r0.*f + l1 * r1.*f + l2 * r2.*f; };
        return FormSample{mix(&FormSample::a_density), mix(&FormSample::b_density),
                          std::max(0.0, mix(&FormSample::speed))};
    };
    return HillCoefficient(SLCoefficients(std::move(density), grid_period, 1, static_cast<int>(n / 2)));
}

double HillCoefficient::operator()(double t) const {
    const FormSample x = equation_.at(equation_.s_of(numerics::wrap(t, period())));
    return ratio(x.a_density, x.speed);
}

ScalarPeriodic HillCoefficient::samples(std::optional<int> n) const {
    const int count = n.value_or(equation_.steps());
    if (count < 4) throw DomainError("need at least 4 samples");
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) v[static_cast<std::size_t>(j)] = (*this)(period() * j / count);
    const HillCoefficient self = *this;
    return ScalarPeriodic(period(), std::move(v), [self](double t) { return self(t); });
}

HillCoefficient HillCoefficient::scaled(double factor) const { return HillCoefficient(equation_.scaled(factor)); }

std::vector<FormSample> HillCoefficient::density_table() const {
    std::vector<FormSample> rows;
    rows.reserve(2 * static_cast<std::size_t>(equation_.steps()));
    for (int i = 0; i < equation_.steps(); ++i) {
        const auto& s = equation_.step_samples(i);
        rows.push_back(s[0]);
        rows.push_back(s[1]);
    }
    return rows;
}

HillCoefficient hill_from_geometry(const NormProfile& profile, const SymplecticForm& form, int steps) {
    const SLCoefficients base = SLCoefficients::from_profile(profile, form, steps);
    // Same A and B; the clock switches from norm arc length to dt = B dtau.
    auto density = [profile, form](int k, double tau) {
        const CurveJet j = profile.chart().on_piece(k, tau);
        const double a = form(j.p, j.d1);
        const double b = form(j.d1, j.d2) / (a * a);
        return FormSample{a, b, std::max(0.0, b)};
    };
    return HillCoefficient(SLCoefficients(std::move(density), base.grid_period(), base.pieces(), steps,
                                          base.geometry()));
}

// ---------------------------------------------------------------------------
// Closed-form solutions

double wronskian(double u, double du, double v, double dv) noexcept { return u * dv - du * v; }

ClosedFormSolutions hill_closed_form_solutions(const NormProfile& profile, const SymplecticForm& form, int n) {
    const auto psi = std::make_shared<const ClosedCurve>(antinorm_arclength_param(profile, form, n));
    const CurveJet at0 = psi->jet(0.0);
    const Vec2 p0 = at0.p, d0 = at0.d1;
    const double L = psi->period();
    const auto make = [&](auto value) {
        std::vector<double> v(psi->size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = value(psi->jet_at(i));
        return ScalarPeriodic(L, std::move(v), [psi, value](double t) { return value(psi->jet(t)); });
    };
    return {make([form, d0](const CurveJet& j) { return form(j.p, d0); }),
            make([form, p0](const CurveJet& j) { return -form(j.p, p0); }),
            make([form, d0](const CurveJet& j) { return form(j.d1, d0); }),
            make([form, p0](const CurveJet& j) { return -form(j.d1, p0); })};
}

ClosedFormCheck closed_form_check(const NormProfile& profile, const SymplecticForm& form, int steps) {
    const HillCoefficient hill = hill_from_geometry(profile, form, steps);
    const SLCoefficients& eq = hill.equation();
    const auto& chart = profile.chart();

    // On the chart parameter: psi = anticircle_jet, psi' = -gamma (t-derivative).
    const Vec2 psi0 = anticircle_jet(profile, form, 0.0).p;
    const Vec2 dpsi0 = -chart.on_piece(0, 0.0).p;
    struct Values {
        double u1, du1, u2, du2;
        Vec2 psi;
    };
    const auto values = [&](int k, double tau) {
        const CurveJet g = chart.on_piece(k, tau);
        const Vec2 psi = g.d1 / form(g.p, g.d1);
        const Vec2 dpsi = -g.p;
        return Values{form(psi, dpsi0), form(dpsi, dpsi0), -form(psi, psi0), -form(dpsi, psi0), psi};
    };

    ClosedFormCheck out;
    const Values v0 = values(0, 0.0);
    out.initial_u1 = v0.u1;
    out.initial_du1 = v0.du1;
    out.initial_u2 = v0.u2;
    out.initial_du2 = v0.du2;
    const double w0 = wronskian(v0.u1, v0.du1, v0.u2, v0.du2);

    const SLSolution s1 = integrate_sl(eq, 1.0, 1.0, 0.0, eq.period());
    const SLSolution s2 = integrate_sl(eq, 1.0, 0.0, 1.0, eq.period());
    const double h = eq.grid_step();
    const int per_piece = eq.steps() / eq.pieces();
    // Running integrals of B u' and A u for both solutions.
    double ib1 = 0, ia1 = 0, ib2 = 0, ia2 = 0;
    for (int i = 0; i <= eq.steps(); ++i) {
        const int k = std::min(i, eq.steps() - 1) / per_piece;
        const Values v = values(k, i * h);
        out.rk4_mismatch = std::max({out.rk4_mismatch, std::fabs(v.u1 - s1.u[static_cast<std::size_t>(i)]),
                                     std::fabs(v.u2 - s2.u[static_cast<std::size_t>(i)]),
                                     std::fabs(v.du1 - s1.w[static_cast<std::size_t>(i)]),
                                     std::fabs(v.du2 - s2.w[static_cast<std::size_t>(i)])});
        const double w = wronskian(v.u1, v.du1, v.u2, v.du2);
        out.wronskian_deviation = std::max(out.wronskian_deviation, std::fabs(w - 1.0));
        out.wronskian_drift = std::max(out.wronskian_drift, std::fabs(w - w0));
        out.decomposition_residual =
            std::max(out.decomposition_residual, euclid(v.psi - v.u1 * psi0 - v.u2 * dpsi0));
        out.equation_residual = std::max({out.equation_residual, std::fabs(v.u1 - v0.u1 - ib1),
                                          std::fabs(v.du1 - v0.du1 + ia1), std::fabs(v.u2 - v0.u2 - ib2),
                                          std::fabs(v.du2 - v0.du2 + ia2)});
        if (i == eq.steps()) break;
        const double lo = i * h;
        const auto cell = [&](auto pick) {
            return numerics::gauss_legendre(
                [&](double tau) {
                    const FormSample d = eq.on_piece(k, tau);
                    return pick(d, values(k, tau));
                },
                lo, lo + h);
        };
        ib1 += cell([](const FormSample& d, const Values& x) { return d.b_density * x.du1; });
        ia1 += cell([](const FormSample& d, const Values& x) { return d.a_density * x.u1; });
        ib2 += cell([](const FormSample& d, const Values& x) { return d.b_density * x.du2; });
        ia2 += cell([](const FormSample& d, const Values& x) { return d.a_density * x.u2; });
    }
    return out;
}

// ---------------------------------------------------------------------------
// m(t) and diagnostics

namespace {

struct ParallelHit {
    double m;
    Vec2 point;
};

// Smallest advance m in (0, L) with psi(t + m) a positive multiple of d.
ParallelHit solve_parallel(const ClosedCurve& psi, const SymplecticForm& form, double t, Vec2 d) {
    const std::size_t n = psi.size();
    const double L = psi.period();
    for (std::size_t j = 0; j < n; ++j) {
        const Vec2 a = psi[j], b = psi[(j + 1) % n];
        const double ga = form(a, d), gb = form(b, d);
        if (!(ga > 0.0 && gb <= 0.0 && dot(a + b, d) > 0.0)) continue;
        const double lo = psi.param(j);
        const double s = gb == 0.0 ? lo + psi.step()
                                   : numerics::illinois([&](double x) { return form(psi(x), d); }, lo,
                                                        lo + psi.step(), ga, gb, 1e-13);
        double m = numerics::wrap(s - t, L);
        if (m <= 0.0) m += L;
        return {m, psi(s)};
    }
    throw DegenerateCurveError("no parallel point found on the anti-circle");
}

}  // namespace

ScalarPeriodic m_function(const ClosedCurve& psi, const NormProfile& /*profile*/, const SymplecticForm& form) {
    std::vector<double> m(psi.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = solve_parallel(psi, form, psi.param(i), psi.jet_at(i).d1).m;
    return ScalarPeriodic(psi.period(), std::move(m));
}

DiagnosticsReport diagnostics(const NormProfile& profile, const SymplecticForm& form, int n,
                              DiagnosticsThresholds thresholds) {
    const ClosedCurve psi = antinorm_arclength_param(profile, form, n);
    const double L = psi.period();
    const CurveJet j0 = psi.jet(0.0);
    const auto u1 = [&](Vec2 p) { return form(p, j0.d1); };
    const auto u2 = [&](Vec2 p) { return -form(p, j0.p); };

    DiagnosticsReport r;
    r.thresholds = thresholds;
    r.period = L;
    r.xi_min = inf;
    r.xi_max = -inf;
    std::vector<double> m(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double t = psi.param(i);
        const CurveJet j = psi.jet_at(i);
        const ParallelHit hit = solve_parallel(psi, form, t, j.d1);
        m[i] = hit.m;
        const double xi = u1(j.p) * u2(hit.point) - u1(hit.point) * u2(j.p);
        r.xi_min = std::min(r.xi_min, xi);
        r.xi_max = std::max(r.xi_max, xi);
        // u'(t) = u(t + m(t)) for both basis solutions.
        r.shift_residual = std::max({r.shift_residual, std::fabs(u1(j.d1) - u1(hit.point)),
                                     std::fabs(u2(j.d1) - u2(hit.point))});
        // The sum is taken in R before any reduction modulo L.
        const double t2 = t + hit.m;
        const ParallelHit second = solve_parallel(psi, form, t2, psi.jet(t2).d1);
        r.double_m_deviation = std::max(r.double_m_deviation, std::fabs(hit.m + second.m - 0.5 * L));
    }
    r.m = ScalarPeriodic(L, std::move(m));
    r.m_std = r.m.stddev();
    r.xi_constant = r.xi_width() < thresholds.radon;
    r.double_m_holds = r.double_m_deviation < thresholds.radon;
    r.shift_holds = r.shift_residual < thresholds.radon;
    r.is_euclidean = r.m_std < thresholds.euclidean;
    r.is_radon = r.xi_constant && r.double_m_holds && r.shift_holds;
    return r;
}

// ---------------------------------------------------------------------------
// Reconstruction

std::string to_string(Verdict v) { return v == Verdict::induces ? "induces" : "rejected"; }

std::string to_string(RejectReason r) {
    switch (r) {
        case RejectReason::not_double_at_1: return "not-double-at-1";
        case RejectReason::antiperiodic_below_1: return "antiperiodic-below-1";
        case RejectReason::nonpositive_f: return "nonpositive-f";
        case RejectReason::self_intersection: return "self-intersection";
        case RejectReason::nonconvex: return "nonconvex";
    }
    return "unknown";
}

namespace {

constexpr double eigen_tol = 1e-5;

// Two lambda = 1 solutions with (u, w) = (1, 0) and (0, 1) at s = 0. Values
// between nodes come from one RK4 step off the preceding node.
class SolutionPair {
public:
    explicit SolutionPair(SLCoefficients eq) : eq_(std::move(eq)) {
        const SLSolution a = integrate_sl(eq_, 1.0, 1.0, 0.0, eq_.period());
        const SLSolution b = integrate_sl(eq_, 1.0, 0.0, 1.0, eq_.period());
        const std::size_t n = static_cast<std::size_t>(eq_.steps()) + 1;
        if (a.size() < n || b.size() < n) throw IntegrationBlowup("incomplete solution over one period");
        nodes_.resize(n);
        for (std::size_t i = 0; i < n; ++i) nodes_[i] = {a.u[i], a.w[i], b.u[i], b.w[i]};
    }

    [[nodiscard]] const SLCoefficients& equation() const noexcept { return eq_; }
    [[nodiscard]] std::size_t nodes() const noexcept { return nodes_.size(); }
    [[nodiscard]] Vec2 psi_node(std::size_t i) const { return {nodes_[i][0], nodes_[i][2]}; }
    [[nodiscard]] Vec2 phi_node(std::size_t i) const { return {nodes_[i][1], nodes_[i][3]}; }

    struct Local {
        Vec2 psi, phi;
        FormSample d;
        double da, db;  // s-derivatives of the densities
    };

    [[nodiscard]] Local at(double s) const {
        const double P = eq_.grid_period(), h = eq_.grid_step();
        s = numerics::wrap(s, P);
        const int steps = eq_.steps();
        const int i = std::min(steps - 1, static_cast<int>(s / h));
        const int k = i / (steps / eq_.pieces());
        const double s0 = i * h, dlt = s - s0;
        std::array<double, 4> y = nodes_[static_cast<std::size_t>(i)];
        if (dlt > 0.0) {
            const FormSample c0 = eq_.on_piece(k, s0), cm = eq_.on_piece(k, s0 + 0.5 * dlt),
                             c1 = eq_.on_piece(k, s);
            const auto f = [](const FormSample& c, const std::array<double, 4>& v) {
                return std::array<double, 4>{c.b_density * v[1], -c.a_density * v[0], c.b_density * v[3],
                                             -c.a_density * v[2]};
            };
            const auto axpy = [](const std::array<double, 4>& v, double a, const std::array<double, 4>& k1) {
                return std::array<double, 4>{v[0] + a * k1[0], v[1] + a * k1[1], v[2] + a * k1[2], v[3] + a * k1[3]};
            };
            const auto k1 = f(c0, y);
            const auto k2 = f(cm, axpy(y, 0.5 * dlt, k1));
            const auto k3 = f(cm, axpy(y, 0.5 * dlt, k2));
            const auto k4 = f(c1, axpy(y, dlt, k3));
            for (std::size_t q = 0; q < 4; ++q) y[q] += dlt / 6.0 * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
        }
        // Density derivatives by differences kept inside the piece.
        const double piece_len = P / eq_.pieces();
        const double lo = k * piece_len, hi = (k + 1) * piece_len, e = 1e-4 * h;
        const double x0 = std::max(lo, s - e), x1 = std::min(hi, s + e);
        const FormSample a0 = eq_.on_piece(k, x0), a1 = eq_.on_piece(k, x1);
        return {{y[0], y[2]}, {y[1], y[3]}, eq_.on_piece(k, s), (a1.a_density - a0.a_density) / (x1 - x0),
                (a1.b_density - a0.b_density) / (x1 - x0)};
    }

    // psi_s = B phi, phi_s = -A psi.
    [[nodiscard]] CurveJet psi_jet(double s) const {
        const Local l = at(s);
        return {l.psi, l.d.b_density * l.phi, l.db * l.phi - l.d.a_density * l.d.b_density * l.psi};
    }
    [[nodiscard]] CurveJet phi_jet(double s) const {
        const Local l = at(s);
        return {l.phi, -l.d.a_density * l.psi, -l.da * l.psi - l.d.a_density * l.d.b_density * l.phi};
    }

private:
    SLCoefficients eq_;
    std::vector<std::array<double, 4>> nodes_;
};

// Crossings of Delta = -2 for lambda in (0, 1), including tangencies.
std::optional<double> antiperiodic_below_one(const SLCoefficients& eq, std::vector<std::string>& log) {
    constexpr int grid = 500;
    const auto g = [&](double l) { return discriminant(eq, l) + 2.0; };
    std::vector<double> v(grid + 1);
    for (int k = 1; k <= grid; ++k) v[static_cast<std::size_t>(k)] = g(static_cast<double>(k) / grid);
    v[0] = g(0.0);
    // Cells touching lambda = 1 are excluded: Delta(1) = -2 by hypothesis.
    for (int k = 1; k + 1 < grid; ++k) {
        const double a = v[static_cast<std::size_t>(k)], b = v[static_cast<std::size_t>(k) + 1];
        const double la = static_cast<double>(k) / grid, lb = static_cast<double>(k + 1) / grid;
        if (a == 0.0) return la;
        if ((a < 0.0) != (b < 0.0) && b != 0.0) {
            const double root = numerics::bisect(g, la, lb, a, 1e-12);
            log.push_back("Delta = -2 crossing at lambda = " + std::to_string(root));
            return root;
        }
    }
    for (int k = 1; k + 1 < grid; ++k) {
        const double c = v[static_cast<std::size_t>(k)];
        if (c > v[static_cast<std::size_t>(k) - 1] || c > v[static_cast<std::size_t>(k) + 1] || c > 0.1) continue;
        const auto [arg, neg] = numerics::golden_max([&](double l) { return -g(l); }, static_cast<double>(k - 1) / grid,
                                                     static_cast<double>(k + 1) / grid, 1e-12);
        if (-neg <= 1e-9) {
            log.push_back("Delta touches -2 at lambda = " + std::to_string(arg));
            return arg;
        }
    }
    return std::nullopt;
}

std::optional<SpectrumEntry> first_positive_eigenvalue(const SLCoefficients& eq) {
    for (double lmax = 4.0; lmax <= 1e6; lmax *= 4.0) {
        const Spectrum s = find_eigenvalues(eq, lmax);
        for (const SpectrumEntry& e : s.entries) {
            if (e.lambda > 0.0) return e;
        }
    }
    return std::nullopt;
}

ReconstructionReport reject(ReconstructionReport r, RejectReason why) {
    r.verdict = Verdict::rejected;
    r.reason = why;
    r.log.push_back("rejected: " + to_string(why));
    return r;
}

}  // namespace

NormProfile ReconstructionReport::circle_profile() const {
    if (!accepted()) throw DomainError("no geometry: the coefficient was rejected");
    return NormProfile(ReconstructedNorm{phi});
}

ReconstructionReport reconstruct_geometry(const HillCoefficient& f) {
    ReconstructionReport r;
    SLCoefficients eq = f.equation();

    for (int i = 0; i < eq.steps(); ++i) {
        for (const FormSample& x : eq.step_samples(i)) {
            if (!(x.a_density > 0.0) || !std::isfinite(x.a_density) || x.b_density < 0.0 || x.speed < 0.0) {
                r.log.push_back("f is not positive near grid parameter " + std::to_string(eq.grid_param(i)));
                return reject(std::move(r), RejectReason::nonpositive_f);
            }
        }
    }

    r.monodromy_distance = monodromy(eq, 1.0).distance_to(-1.0);
    r.log.push_back("||M(1) + I|| = " + std::to_string(r.monodromy_distance));
    if (r.monodromy_distance >= eigen_tol) {
        if (auto w = antiperiodic_below_one(eq, r.log)) {
            r.antiperiodic_witness = *w;
            return reject(std::move(r), RejectReason::antiperiodic_below_1);
        }
        const auto first = first_positive_eigenvalue(eq);
        if (!first || !first->is_double || first->parity != Parity::antiperiodic) {
            if (first) {
                r.log.push_back("first positive eigenvalue " + std::to_string(first->lambda) + " is " +
                                (first->is_double ? "double " : "simple ") + to_string(first->parity));
            }
            return reject(std::move(r), RejectReason::not_double_at_1);
        }
        r.lambda1 = first->lambda;
        r.log.push_back("rescaling f by the first eigenvalue " + std::to_string(first->lambda));
        eq = eq.scaled(first->lambda);
        r.monodromy_distance = monodromy(eq, 1.0).distance_to(-1.0);
        r.log.push_back("||M(1) + I|| after rescaling = " + std::to_string(r.monodromy_distance));
        if (r.monodromy_distance >= eigen_tol) return reject(std::move(r), RejectReason::not_double_at_1);
    }
    if (auto w = antiperiodic_below_one(eq, r.log)) {
        r.antiperiodic_witness = *w;
        return reject(std::move(r), RejectReason::antiperiodic_below_1);
    }

    const auto pair = std::make_shared<const SolutionPair>(eq);
    const std::size_t n = static_cast<std::size_t>(eq.steps());
    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i) diam = std::max(diam, 2.0 * euclid(pair->psi_node(i)));
    r.closure_gap = euclid(pair->psi_node(n) - pair->psi_node(0)) + euclid(pair->phi_node(n) - pair->phi_node(0));
    double turn = 0.0;
    bool monotone = true, convex = true;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = pair->psi_node(i), q = pair->phi_node(i);
        r.symmetry_residual = std::max(r.symmetry_residual, euclid(pair->psi_node((i + n / 2) % n) + p));
        r.wronskian_deviation = std::max(r.wronskian_deviation, std::fabs(det(p, q) - 1.0));
        const Vec2 p1 = pair->psi_node(i + 1), q1 = pair->phi_node(i + 1);
        const double step = std::atan2(det(p, p1), dot(p, p1));
        monotone = monotone && step > 0.0;
        turn += step;
        convex = convex && det(q, q1) > 0.0;
    }
    // omega(phi, phi') = A omega(psi, phi) against f = A: the ratio is the Wronskian.
    r.f_residual = r.wronskian_deviation;
    r.winding = turn / two_pi;
    r.log.push_back("closure gap " + std::to_string(r.closure_gap) + ", symmetry residual " +
                    std::to_string(r.symmetry_residual) + ", winding " + std::to_string(r.winding));
    if (r.closure_gap > 1e-6 * std::max(1.0, diam) || r.symmetry_residual > 1e-6 * std::max(1.0, diam)) {
        r.log.push_back("solutions are not antiperiodic to tolerance");
        return reject(std::move(r), RejectReason::not_double_at_1);
    }
    if (!monotone || std::fabs(r.winding - 1.0) > 1e-6) return reject(std::move(r), RejectReason::self_intersection);
    if (!convex) return reject(std::move(r), RejectReason::nonconvex);
    if (r.wronskian_deviation > 1e-6) {
        r.log.push_back("Wronskian drifted by " + std::to_string(r.wronskian_deviation));
        return reject(std::move(r), RejectReason::not_double_at_1);
    }

    r.psi = ClosedCurve(eq.grid_period(), n, [pair](double s) { return pair->psi_jet(s); });
    r.phi = ClosedCurve(eq.grid_period(), n, [pair](double s) { return pair->phi_jet(s); });
    r.verdict = Verdict::induces;
    r.log.push_back("accepted");
    return r;
}

// ---------------------------------------------------------------------------
// Affine normalization and Hausdorff distance

namespace {

struct Moments {
    double area, cx, cy, xx, xy, yy;  // central second moments per unit area
};

Moments polygon_moments(std::span<const Vec2> p) {
    double a = 0, sx = 0, sy = 0, ixx = 0, iyy = 0, ixy = 0;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 u = p[i], v = p[(i + 1) % n];
        const double c = det(u, v);
        a += c;
        sx += (u.x + v.x) * c;
        sy += (u.y + v.y) * c;
        ixx += (u.x * u.x + u.x * v.x + v.x * v.x) * c;
        iyy += (u.y * u.y + u.y * v.y + v.y * v.y) * c;
        ixy += (u.x * v.y + 2 * u.x * u.y + 2 * v.x * v.y + v.x * u.y) * c;
    }
    a *= 0.5;
    if (a == 0.0) throw DegenerateCurveError("polygon encloses no area");
    const double cx = sx / (6 * a), cy = sy / (6 * a);
    return {a, cx, cy, ixx / (12 * a) - cx * cx, ixy / (24 * a) - cx * cy, iyy / (12 * a) - cy * cy};
}

double point_segment(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double len2 = dot(d, d);
    const double t = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
    return euclid(p - (a + t * d));
}

double directed_hausdorff(std::span<const Vec2> a, std::span<const Vec2> b) {
    double worst = 0.0;
    for (const Vec2 p : a) {
        double best = inf;
        for (std::size_t j = 0; j < b.size(); ++j) best = std::min(best, point_segment(p, b[j], b[(j + 1) % b.size()]));
        worst = std::max(worst, best);
    }
    return worst;
}

// Radial function of a polygon star-shaped about the origin.
class Radial {
public:
    explicit Radial(std::span<const Vec2> p) : pts_(p.begin(), p.end()) {
        ang_.resize(pts_.size());
        for (std::size_t i = 0; i < pts_.size(); ++i) ang_[i] = std::atan2(pts_[i].y, pts_[i].x);
        // Rotate so angles increase from the smallest one.
        const auto first = std::min_element(ang_.begin(), ang_.end()) - ang_.begin();
        std::rotate(pts_.begin(), pts_.begin() + first, pts_.end());
        std::rotate(ang_.begin(), ang_.begin() + first, ang_.end());
    }

    [[nodiscard]] double operator()(double theta) const {
        theta = numerics::wrap(theta - ang_.front(), two_pi) + ang_.front();
        const auto it = std::upper_bound(ang_.begin(), ang_.end(), theta);
        const std::size_t j = static_cast<std::size_t>(it - ang_.begin());
        const Vec2 a = pts_[(j + pts_.size() - 1) % pts_.size()], b = pts_[j % pts_.size()];
        const Vec2 dir{std::cos(theta), std::sin(theta)};
        // Ray dir * r meets segment a + s (b - a): r = det(a, b - a) / det(dir, b - a).
        return det(a, b - a) / det(dir, b - a);
    }

private:
    std::vector<Vec2> pts_;
    std::vector<double> ang_;
};

std::vector<Vec2> rotated(std::span<const Vec2> p, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    std::vector<Vec2> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = {c * p[i].x - s * p[i].y, s * p[i].x + c * p[i].y};
    return out;
}

}  // namespace

std::vector<Vec2> affine_normalize(std::span<const Vec2> polygon) {
    const Moments m = polygon_moments(polygon);
    // M^{-1/2} of the symmetric positive moment matrix via its eigenvectors.
    const double tr = m.xx + m.yy, dt = m.xx * m.yy - m.xy * m.xy;
    if (!(dt > 0.0)) throw DegenerateCurveError("degenerate second-moment matrix");
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - dt));
    const double l1 = 0.5 * tr + disc, l2 = 0.5 * tr - disc;
    const double theta = 0.5 * std::atan2(2 * m.xy, m.xx - m.yy);
    const double c = std::cos(theta), s = std::sin(theta);
    const double scale = std::pow(dt, 0.25);
    const double e1 = scale / std::sqrt(l1), e2 = scale / std::sqrt(l2);
    const double t11 = e1 * c * c + e2 * s * s, t12 = (e1 - e2) * c * s, t22 = e1 * s * s + e2 * c * c;
    std::vector<Vec2> out(polygon.size());
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Vec2 q{polygon[i].x - m.cx, polygon[i].y - m.cy};
        out[i] = {t11 * q.x + t12 * q.y, t12 * q.x + t22 * q.y};
    }
    return out;
}

double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double normalized_hausdorff(std::span<const Vec2> a, std::span<const Vec2> b) {
    const std::vector<Vec2> na = affine_normalize(a), nb = affine_normalize(b);
    const Radial ra(na), rb(nb);
    constexpr int grid = 2048;
    std::vector<double> va(grid), vb(grid);
    for (int i = 0; i < grid; ++i) {
        va[static_cast<std::size_t>(i)] = ra(two_pi * i / grid);
        vb[static_cast<std::size_t>(i)] = rb(two_pi * i / grid);
    }
    // Rotating a by alpha: compare r_a(theta) with r_b(theta + alpha).
    int best_k = 0;
    double best = inf;
    for (int k = 0; k < grid; ++k) {
        double worst = 0.0;
        for (int i = 0; i < grid && worst < best; ++i) {
            worst = std::max(worst, std::fabs(va[static_cast<std::size_t>(i)] -
                                              vb[static_cast<std::size_t>((i + k) % grid)]));
        }
        if (worst < best) {
            best = worst;
            best_k = k;
        }
    }
    const auto misfit = [&](double alpha) {
        double worst = 0.0;
        for (int i = 0; i < grid; ++i) {
            const double th = two_pi * i / grid;
            worst = std::max(worst, std::fabs(va[static_cast<std::size_t>(i)] - rb(th + alpha)));
        }
        return -worst;
    };
    const double step = two_pi / grid;
    const auto [alpha, neg] = numerics::golden_max(misfit, (best_k - 1) * step, (best_k + 1) * step, 1e-12);
    const std::vector<Vec2> aligned = rotated(na, alpha);
    return hausdorff_distance(aligned, nb);
}

RoundTripReport round_trip(const ReconstructionReport& report, const HillCoefficient& input,
                           const NormProfile& original) {
    if (!report.accepted()) throw DomainError("round trip needs an accepted reconstruction");
    RoundTripReport out;
    const ClosedCurve reference = boundary_curve(original, static_cast<int>(report.phi.size()));
    out.hausdorff = normalized_hausdorff(report.phi.points(), reference.points());

    const NormProfile circle = report.circle_profile();
    const int steps = input.equation().steps();
    const HillCoefficient again = hill_from_geometry(circle, SymplecticForm{}, steps);
    out.period_mismatch = std::fabs(again.period() - input.period());

    // Compare f at matching boundary points: locate each chart node of the
    // re-extracted coefficient on the reconstructed circle by its direction.
    const SLCoefficients& eq = again.equation();
    const SLCoefficients& src = input.equation();
    const double factor = report.lambda1.value_or(1.0);
    const ClosedCurve& phi = report.phi;
    const std::size_t m = phi.size();
    std::vector<double> ang(m + 1);
    ang[0] = std::atan2(phi[0].y, phi[0].x);
    for (std::size_t i = 1; i <= m; ++i) {
        ang[i] = ang[i - 1] + std::atan2(det(phi[i - 1], phi[i % m]), dot(phi[i - 1], phi[i % m]));
    }
    double b_max = 0.0;
    for (int i = 0; i < src.steps(); ++i) b_max = std::max(b_max, src.step_samples(i)[0].b_density);
    const int per_piece = eq.steps() / eq.pieces();
    for (int i = 0; i < eq.steps(); ++i) {
        const FormSample d = eq.step_samples(i)[0];
        const double f_new = ratio(d.a_density, d.b_density);
        const Vec2 p = circle.chart().on_piece(i / per_piece, eq.grid_param(i)).p;
        double target = std::atan2(p.y, p.x);
        while (target < ang[0]) target += two_pi;
        while (target >= ang[0] + two_pi) target -= two_pi;
        const std::size_t j =
            std::min<std::size_t>(m - 1, static_cast<std::size_t>(std::upper_bound(ang.begin(), ang.end(), target) -
                                                                   ang.begin()) - 1);
        const double lo = phi.param(j);
        const double g0 = det(phi(lo), p);
        const double s = g0 == 0.0 ? lo : numerics::bisect([&](double x) { return det(phi(x), p); }, lo,
                                                           lo + phi.step(), g0, 1e-13);
        const FormSample o = src.at(s);
        const double f_old = factor * ratio(o.a_density, o.b_density);
        if (!std::isfinite(f_new) || !std::isfinite(f_old) || o.b_density < singular_cut * b_max) {
            ++out.excluded_nodes;
            continue;
        }
        out.f_mismatch = std::max(out.f_mismatch, std::fabs(f_new / f_old - 1.0));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Curvature identity and the reparametrization probe

CurvatureIdentityReport curvature_identity_check(const NormProfile& profile, const SymplecticForm& form, int n) {
    const ScalarPeriodic km = minkowski_curvature_antinorm(profile, form, n);
    const HillCoefficient hill = hill_from_geometry(profile, form, n);
    CurvatureIdentityReport r;
    r.period_mismatch = std::fabs(km.period() - hill.period());
    const double k_max = km.max();
    for (std::size_t j = 0; j < km.size(); ++j) {
        const double f = hill(km.param(j));
        const double k = km[j];
        if (!std::isfinite(f) || k < singular_cut * k_max) {
            ++r.excluded_nodes;
            continue;
        }
        r.max_relative_residual = std::max(r.max_relative_residual, std::fabs(f * k - 1.0));
    }
    if (const auto first = first_positive_eigenvalue(hill.equation())) {
        r.first_eigenvalue = first->lambda;
        r.first_is_double = first->is_double;
        r.eigen_consistent = first->is_double && std::fabs(first->lambda - 1.0) < 1e-6;
    }
    return r;
}

ReparamProbeReport reparam_probe(const HillCoefficient& f, double lambda, std::span<const double> alphas, int n,
                                 double tol) {
    if (!(lambda > 0.0) || lambda == 1.0) throw DomainError("probe needs lambda > 0 and lambda != 1");
    if (alphas.empty()) throw DomainError("probe needs at least one alpha");
    ReparamProbeReport r;
    r.tolerance = tol;
    r.alphas.assign(alphas.begin(), alphas.end());
    const double P = f.period();
    std::vector<double> base(static_cast<std::size_t>(n));
    double lo = inf, hi = -inf;
    bool finite = true;
    for (int j = 0; j < n; ++j) {
        const double v = f(P * j / n);
        base[static_cast<std::size_t>(j)] = v;
        finite = finite && std::isfinite(v);
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    r.f_constant = finite && hi - lo <= 1e-9 * std::max(1.0, std::fabs(hi));
    r.min_residual = inf;
    for (double alpha : alphas) {
        if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            const double v = base[static_cast<std::size_t>(j)];
            const double w = f(alpha * P * j / n);
            if (!std::isfinite(v) || !std::isfinite(w)) continue;
            worst = std::max(worst, std::fabs(w - lambda / (alpha * alpha) * v));
        }
        r.residuals.push_back(worst);
        if (worst < r.min_residual) {
            r.min_residual = worst;
            r.best_alpha = alpha;
        }
    }
    r.contradiction = !r.f_constant && r.min_residual < tol;
    if (r.f_constant) {
        bool ok = true;
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if (std::fabs(alphas[i] * alphas[i] - lambda) < 1e-12 * lambda) ok = ok && r.residuals[i] < tol;
        }
        r.euclidean_consistent = ok;
    }
    return r;
}

}  // namespace minkowski
