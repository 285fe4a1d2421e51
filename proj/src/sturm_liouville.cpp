#include "minkowski/sturm_liouville.hpp"

#include <algorithm>
#include <cmath>

#include "minkowski/errors.hpp"
#include "minkowski/numerics.hpp"

namespace minkowski {

namespace {

struct State {
    double u;
    double w;
};

// One RK4 step of u_s = B w, w_s = -lambda A u with the three samples of the step.
State rk4(State y, double h, double lambda, const FormSample& s0, const FormSample& sm, const FormSample& s1) {
    const auto f = [lambda](const FormSample& c, State v) { return State{c.b_density * v.w, -lambda * c.a_density * v.u}; };
    const State k1 = f(s0, y);
    const State k2 = f(sm, {y.u + 0.5 * h * k1.u, y.w + 0.5 * h * k1.w});
    const State k3 = f(sm, {y.u + 0.5 * h * k2.u, y.w + 0.5 * h * k2.w});
    const State k4 = f(s1, {y.u + h * k3.u, y.w + h * k3.w});
    return {y.u + h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
            y.w + h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w)};
}

void require_finite(State y, double s) {
    if (!std::isfinite(y.u) || !std::isfinite(y.w)) {
        throw IntegrationBlowup("solution became nonfinite at grid parameter " + std::to_string(s));
    }
}

}  // namespace

SLCoefficients::SLCoefficients(Density density, double grid_period, int pieces, int steps,
                               std::optional<Geometry> geometry)
    : density_(std::move(density)), grid_period_(grid_period), pieces_(pieces), steps_(steps),
      geometry_(std::move(geometry)) {
    if (pieces < 1 || steps < 2 * pieces || steps % (2 * pieces) != 0) {
        throw DomainError("step count must be a positive multiple of twice the piece count");
    }
    if (!(grid_period > 0.0) || !std::isfinite(grid_period)) throw DomainError("grid period must be positive");
    const double h = grid_step();
    const int per_piece = steps / pieces;
    cache_.resize(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const int k = i / per_piece;
        cache_[static_cast<std::size_t>(i)] = {density_(k, i * h), density_(k, (i + 0.5) * h), density_(k, (i + 1) * h)};
    }
    const Density d = density_;
    clock_ = std::make_shared<const ParameterClock>([d](int k, double s) { return d(k, s).speed; }, grid_period,
                                                    pieces, steps);
}

SLCoefficients SLCoefficients::from_profile(const NormProfile& profile, const SymplecticForm& form, int steps) {
    if (form.kappa() <= 0.0) throw DomainError("curve constructions need a positive symplectic scale");
    const auto density = [profile, form](int k, double tau) {
        const CurveJet j = profile.chart().on_piece(k, tau);
        const double a = form(j.p, j.d1);
        return FormSample{a, form(j.d1, j.d2) / (a * a), profile.gauge(j.d1)};
    };
    Geometry geo{[profile](double tau) { return profile.chart()(tau); },
                 [profile, form](double tau) { return anticircle_jet(profile, form, tau); }, form};
    SLCoefficients c(density, BoundaryChart::period(), BoundaryChart::piece_count, steps, std::move(geo));
    double scale = 0.0;
    for (const auto& row : c.cache_) {
        for (const FormSample& x : row) scale = std::max(scale, std::fabs(x.b_density));
    }
    for (int i = 0; i < c.steps_; ++i) {
        for (const FormSample& x : c.cache_[static_cast<std::size_t>(i)]) {
            if (!(x.a_density > 0.0) || x.b_density < -1e-12 * scale || !std::isfinite(x.b_density)) {
                throw ConvexityError("nonpositive coefficient near grid parameter " + std::to_string(c.grid_param(i)));
            }
        }
    }
    return c;
}

int SLCoefficients::piece_of(double s) const noexcept {
    const double r = numerics::wrap(s, grid_period_);
    return std::min(pieces_ - 1, static_cast<int>(r / (grid_period_ / pieces_)));
}

FormSample SLCoefficients::at(double s) const { return density_(piece_of(s), numerics::wrap(s, grid_period_)); }

double SLCoefficients::t_at_node(int i) const {
    const int turns = i >= 0 ? i / steps_ : -((-i + steps_ - 1) / steps_);
    return turns * period() + clock_->at_node(i - turns * steps_);
}

ScalarPeriodic SLCoefficients::a() const {
    std::vector<double> v(static_cast<std::size_t>(steps_));
    for (int j = 0; j < steps_; ++j) {
        const FormSample x = at(s_of(period() * j / steps_));
        v[static_cast<std::size_t>(j)] = x.a_density / x.speed;
    }
    return ScalarPeriodic(period(), std::move(v));
}

ScalarPeriodic SLCoefficients::b() const {
    std::vector<double> v(static_cast<std::size_t>(steps_));
    for (int j = 0; j < steps_; ++j) {
        const FormSample x = at(s_of(period() * j / steps_));
        v[static_cast<std::size_t>(j)] = x.b_density / x.speed;
    }
    return ScalarPeriodic(period(), std::move(v));
}

const SLCoefficients::Geometry& SLCoefficients::geometry() const {
    if (!geometry_) throw DomainError("coefficients carry no geometry");
    return *geometry_;
}

ClosedCurve SLCoefficients::phi() const {
    return ClosedCurve(grid_period_, static_cast<std::size_t>(steps_), geometry().phi);
}

ClosedCurve SLCoefficients::psi() const {
    return ClosedCurve(grid_period_, static_cast<std::size_t>(steps_), geometry().psi);
}

SLCoefficients SLCoefficients::with_steps(int steps) const {
    return SLCoefficients(density_, grid_period_, pieces_, steps, geometry_);
}

SLCoefficients SLCoefficients::scaled(double factor) const {
    if (!(factor > 0.0)) throw DomainError("coefficient scale must be positive");
    const Density d = density_;
    return SLCoefficients(
        [d, factor](int k, double s) {
            FormSample x = d(k, s);
            x.a_density *= factor;
            return x;
        },
        grid_period_, pieces_, steps_, geometry_);
}

double SLSolution::max_abs() const {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::fabs(v));
    return m;
}

SLSolution integrate_sl(const SLCoefficients& coeffs, double lambda, double u0, double w0, double span) {
    if (!(span > 0.0) || !std::isfinite(span)) throw DomainError("integration span must be positive");
    const int n_grid = coeffs.steps();
    const double h = coeffs.grid_step();
    const double s_end = coeffs.s_of(span);
    int n = static_cast<int>(std::floor(s_end / h + 1e-9));
    double rest = s_end - n * h;
    if (rest < 1e-9 * h) rest = 0.0;

    SLSolution sol;
    sol.lambda = lambda;
    const std::size_t count = static_cast<std::size_t>(n) + 1 + (rest > 0.0 ? 1 : 0);
    sol.s.reserve(count);
    sol.t.reserve(count);
    sol.u.reserve(count);
    sol.w.reserve(count);
    State y{u0, w0};
    sol.s.push_back(0.0);
    sol.t.push_back(0.0);
    sol.u.push_back(y.u);
    sol.w.push_back(y.w);
    for (int i = 0; i < n; ++i) {
        const auto& c = coeffs.step_samples(i % n_grid);
        y = rk4(y, h, lambda, c[0], c[1], c[2]);
        require_finite(y, (i + 1) * h);
        sol.s.push_back((i + 1) * h);
        sol.t.push_back(coeffs.t_at_node(i + 1));
        sol.u.push_back(y.u);
        sol.w.push_back(y.w);
    }
    if (rest > 0.0) {
        const double s0 = n * h;
        const int k = coeffs.piece_of(s0);
        const double base = std::floor(s0 / coeffs.grid_period()) * coeffs.grid_period();
        const double r0 = s0 - base;
        y = rk4(y, rest, lambda, coeffs.on_piece(k, r0), coeffs.on_piece(k, r0 + 0.5 * rest),
                coeffs.on_piece(k, r0 + rest));
        require_finite(y, s_end);
        sol.s.push_back(s_end);
        sol.t.push_back(span);
        sol.u.push_back(y.u);
        sol.w.push_back(y.w);
    }

    // Step doubling over whole pairs of steps; pairs never straddle pieces.
    State z{u0, w0};
    double worst = 0.0;
    for (int j = 0; 2 * j + 1 < n; ++j) {
        const auto& c0 = coeffs.step_samples((2 * j) % n_grid);
        const auto& c1 = coeffs.step_samples((2 * j + 1) % n_grid);
        z = rk4(z, 2.0 * h, lambda, c0[0], c0[2], c1[2]);
        worst = std::max(worst, std::fabs(z.u - sol.u[static_cast<std::size_t>(2 * j + 2)]));
    }
    sol.error_estimate = worst / 15.0;
    return sol;
}

std::array<double, 4> transfer_steps(const SLCoefficients& coeffs, double lambda, int count) {
    State c1{1.0, 0.0}, c2{0.0, 1.0};
    const double h = coeffs.grid_step();
    for (int i = 0; i < count; ++i) {
        const auto& c = coeffs.step_samples(i % coeffs.steps());
        c1 = rk4(c1, h, lambda, c[0], c[1], c[2]);
        c2 = rk4(c2, h, lambda, c[0], c[1], c[2]);
    }
    require_finite(c1, count * h);
    require_finite(c2, count * h);
    return {c1.u, c2.u, c1.w, c2.w};
}

}  // namespace minkowski
