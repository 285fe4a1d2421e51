#include "minkowski/param.hpp"

#include <algorithm>
#include <cmath>

#include "minkowski/errors.hpp"
#include "minkowski/numerics.hpp"

namespace minkowski {

using numerics::two_pi;

ParameterClock::ParameterClock(Density density, double period, int pieces, int cells)
    : density_(std::move(density)), period_(period), cells_(cells) {
    if (pieces < 1 || cells < pieces || cells % pieces != 0) {
        throw DomainError("clock cells must be a positive multiple of the piece count");
    }
    cells_per_piece_ = cells / pieces;
    width_ = period / cells;
    cum_.resize(static_cast<std::size_t>(cells) + 1);
    cum_[0] = 0.0;
    for (int i = 0; i < cells; ++i) {
        cum_[static_cast<std::size_t>(i) + 1] = cum_[static_cast<std::size_t>(i)] + partial(i, (i + 1) * width_);
    }
    if (!(total() > 0.0) || !std::isfinite(total())) throw DegenerateCurveError("parameter clock has no length");
}

double ParameterClock::partial(int cell, double tau) const {
    const int piece = cell / cells_per_piece_;
    return numerics::gauss_legendre([&](double s) { return density_(piece, s); }, cell * width_, tau);
}

double ParameterClock::forward(double tau) const {
    const double turns = std::floor(tau / period_);
    const double r = tau - turns * period_;
    const int cell = std::min(cells_ - 1, static_cast<int>(r / width_));
    return turns * total() + cum_[static_cast<std::size_t>(cell)] + partial(cell, r);
}

double ParameterClock::density(double tau) const {
    const double r = numerics::wrap(tau, period_);
    const int cell = std::min(cells_ - 1, static_cast<int>(r / width_));
    return density_(cell / cells_per_piece_, r);
}

double ParameterClock::inverse(double t) const {
    const double turns = std::floor(t / total());
    const double r = t - turns * total();
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), r);
    const int cell = std::clamp(static_cast<int>(it - cum_.begin()) - 1, 0, cells_ - 1);
    const int piece = cell / cells_per_piece_;
    double lo = cell * width_, hi = lo + width_;
    const double base = cum_[static_cast<std::size_t>(cell)];
    const double span = cum_[static_cast<std::size_t>(cell) + 1] - base;
    double x = span > 0.0 ? lo + (r - base) / span * width_ : lo;
    for (int it_count = 0; it_count < 100; ++it_count) {
        const double g = base + partial(cell, x) - r;
        if (g > 0.0) hi = x; else lo = x;
        const double d = density_(piece, x);
        double next = d > 0.0 ? x - g / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) <= 1e-15 * (1.0 + std::fabs(x)) || hi - lo <= 1e-15 * (1.0 + std::fabs(x))) {
            x = next;
            break;
        }
        x = next;
    }
    return turns * period_ + x;
}

ClosedCurve boundary_curve(const NormProfile& profile, int n) {
    if (n < 4) throw DomainError("boundary sampling needs at least 4 points");
    return ClosedCurve(two_pi, static_cast<std::size_t>(n), [profile](double t) { return profile.chart()(t); });
}

CircleLength circle_length(const NormProfile& profile) {
    const ParameterClock clock([&](int k, double t) { return profile.gauge(profile.chart().on_piece(k, t).d1); },
                               two_pi, 4, 1024);
    return {clock.total(), 0.5 * clock.total()};
}

ClosedCurve arclength_param(const ClosedCurve& curve, const NormProfile& profile) {
    const int n = static_cast<int>(curve.size());
    auto clock = std::make_shared<const ParameterClock>(
        [curve, profile](int, double s) { return profile.gauge(curve.jet(s).d1); }, curve.period(), 1, n);
    for (int i = 0; i < n; ++i) {
        if (!(profile.gauge(curve.jet_at(static_cast<std::size_t>(i)).d1) > 0.0)) {
            throw DegenerateCurveError("curve has a vanishing tangent");
        }
    }
    return ClosedCurve(clock->total(), curve.size(), [curve, profile, clock](double t) {
        const double s = clock->inverse(t);
        const CurveJet j = curve.jet(s);
        const double st = 1.0 / profile.gauge(j.d1);
        const double stt = -dot(profile.gauge_gradient(j.d1), j.d2) * st * st * st;
        return CurveJet{j.p, j.d1 * st, j.d2 * (st * st) + j.d1 * stt};
    });
}

ClosedCurve dual_param(const ClosedCurve& phi, const SymplecticForm& form) {
    const auto first = [phi, form](double s) {
        const CurveJet j = phi.jet(s);
        const double a = form(j.p, j.d1);
        return std::pair{j.d1 / a, j.p * (-form(j.d1, j.d2) / (a * a))};
    };
    const double h = 1e-5 * phi.step();
    return ClosedCurve(phi.period(), phi.size(), [first, h](double s) {
        const auto [p, d1] = first(s);
        const Vec2 d2 = (first(s + h).second - first(s - h).second) / (2.0 * h);
        return CurveJet{p, d1, d2};
    });
}

ClosedCurve antinorm_arclength_param(const NormProfile& profile, const SymplecticForm& form, int n) {
    if (form.kappa() <= 0.0) throw DomainError("curve constructions need a positive symplectic scale");
    const auto density = [profile, form](int k, double t) {
        const CurveJet j = profile.chart().on_piece(k, t);
        const double a = form(j.p, j.d1);
        return form(j.d1, j.d2) / (a * a);
    };
    const int cells = std::max(4, n - n % 4);
    auto clock = std::make_shared<const ParameterClock>(density, two_pi, 4, cells);
    return ClosedCurve(clock->total(), static_cast<std::size_t>(n), [profile, form, clock](double t) {
        const double tau = clock->inverse(t);
        const auto& chart = profile.chart();
        const CurveJet j = chart.on_piece(chart.piece_of(tau), numerics::wrap(tau, two_pi));
        const double a = form(j.p, j.d1);
        const double b = form(j.d1, j.d2) / (a * a);
        const Vec2 psi = j.d1 / a;
        return CurveJet{psi, -j.p, psi * (-a / b)};
    });
}

ScalarPeriodic radius_of_curvature(const ClosedCurve& gamma, const ClosedCurve& phi) {
    if (gamma.size() != phi.size() || std::fabs(gamma.period() - phi.period()) > 1e-12 * phi.period()) {
        throw ParametrizationMismatch("curves must share their parameter grid");
    }
    const std::size_t n = gamma.size();
    std::vector<CurveJet> gj(n), fj(n);
    double speed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        gj[i] = gamma.jet_at(i);
        fj[i] = phi.jet_at(i);
        speed = std::max(speed, euclid(gj[i].d1));
    }
    // Misalignment is judged against the curve's largest speed so that
    // stationary points (cusps) do not trip the test.
    std::vector<double> rho(n);
    for (std::size_t i = 0; i < n; ++i) {
        const CurveJet& g = gj[i];
        const CurveJet& f = fj[i];
        if (std::fabs(det(g.d1, f.d1)) > 1e-6 * speed * euclid(f.d1) + 1e-300) {
            throw ParametrizationMismatch("tangent of the curve is not parallel to the circle tangent");
        }
        rho[i] = det(g.d1, f.p) / det(f.d1, f.p);
    }
    return ScalarPeriodic(gamma.period(), std::move(rho));
}

ScalarPeriodic minkowski_curvature_antinorm(const NormProfile& profile, const SymplecticForm& form, int n) {
    if (n < 4 || n % 4 != 0) throw DomainError("curvature grid must be a positive multiple of 4");
    const auto& chart = profile.chart();
    // Anti-norm arc length s and the sector-area coordinate of the unit
    // tangent on the anti-circle, both as functions of the chart parameter.
    const auto area_rate = [&](int k, double t) {
        const CurveJet j = chart.on_piece(k, t);
        const double an = antinorm(profile, form, j.d1);
        return form(j.d1, j.d2) / (an * an);
    };
    const ParameterClock area(area_rate, two_pi, 4, n);
    std::vector<double> rate(static_cast<std::size_t>(n) + 1), rate_end(static_cast<std::size_t>(n));
    const int per_piece = n / 4;
    for (int i = 0; i < n; ++i) {
        rate[static_cast<std::size_t>(i)] = area_rate(i / per_piece, i * area.cell_width());
        rate_end[static_cast<std::size_t>(i)] = area_rate(i / per_piece, (i + 1) * area.cell_width());
    }

    std::vector<double> km(static_cast<std::size_t>(n));
    const double total = area.total();
    const double h = area.cell_width();
    int cell = 0;
    for (int j = 0; j < n; ++j) {
        const double target = total * j / n;
        while (cell + 1 < n && area.at_node(cell + 1) <= target) ++cell;
        // Invert the cubic Hermite interpolant of the area coordinate on this cell.
        const double y0 = area.at_node(cell), y1 = area.at_node(cell + 1);
        const double m0 = rate[static_cast<std::size_t>(cell)] * h, m1 = rate_end[static_cast<std::size_t>(cell)] * h;
        const auto hermite = [&](double u) {
            const double u2 = u * u, u3 = u2 * u;
            return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * m0 + (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * m1 -
                   target;
        };
        const double u = target <= y0 ? 0.0 : numerics::bisect(hermite, 0.0, 1.0, hermite(0.0), 1e-15);
        const double tau = (cell + u) * h;
        const CurveJet g = chart.on_piece(cell / per_piece, tau);
        const double an = antinorm(profile, form, g.d1);
        km[static_cast<std::size_t>(j)] = form(g.d1, g.d2) / (an * an * an);
    }
    return ScalarPeriodic(total, std::move(km));
}

}  // namespace minkowski
