#include "minkowski/norm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "minkowski/errors.hpp"
#include "minkowski/jet.hpp"
#include "minkowski/numerics.hpp"

namespace minkowski {

using numerics::two_pi;
constexpr double half_pi = 0.5 * std::numbers::pi;

SymplecticForm::SymplecticForm(double kappa) : kappa_(kappa) {
    if (!(kappa != 0.0) || !std::isfinite(kappa)) throw DomainError("symplectic scale must be finite and nonzero");
}

// ---------------------------------------------------------------------------
// Boundary charts

double BoundaryChart::period() noexcept { return two_pi; }
double BoundaryChart::piece_length() noexcept { return half_pi; }

int BoundaryChart::piece_of(double tau) const noexcept {
    const double t = numerics::wrap(tau, two_pi);
    return std::min(piece_count - 1, static_cast<int>(t / half_pi));
}

CurveJet BoundaryChart::on_piece(int k, double tau) const {
    const Piece& piece = pieces_[static_cast<std::size_t>(k)];
    const double lo = k * half_pi, hi = lo + half_pi;
    const double inset = piece.singular_ends ? 1e-9 : 0.0;
    return piece.eval(std::clamp(tau, lo + inset, hi - inset));
}

CurveJet BoundaryChart::operator()(double tau) const {
    const double t = numerics::wrap(tau, two_pi);
    return on_piece(piece_of(t), t);
}

double BoundaryChart::locate(Vec2 d) const {
    if (d.x == 0.0 && d.y == 0.0) throw DomainError("cannot locate the zero direction");
    const double ang = numerics::wrap(std::atan2(d.y, d.x), two_pi);
    const int k = std::min(piece_count - 1, static_cast<int>(ang / half_pi));
    const double tau = pieces_[static_cast<std::size_t>(k)].locate(d);
    return std::clamp(numerics::wrap(tau, two_pi), k * half_pi, (k + 1) * half_pi);
}

namespace {

CurveJet to_curve_jet(Jet x, Jet y) { return {{x.v, y.v}, {x.d, y.d}, {x.dd, y.dd}}; }

double polar_locate(Vec2 d) { return numerics::wrap(std::atan2(d.y, d.x), two_pi); }

// Polar chart of the l_e circle, e >= 2.
CurveJet lp_polar(double e, double theta) {
    const Jet t = Jet::variable(theta);
    const Jet c = cos(t), s = sin(t);
    const Jet r = pow_pos(abs_pow(c, e) + abs_pow(s, e), -1.0 / e);
    return to_curve_jet(r * c, r * s);
}

// Chart of the l_e circle, e < 2, obtained from the polar chart of the
// conjugate circle through the duality map X -> sgn(X)|X|^(e*-1).
CurveJet lp_dual_polar(double e, double theta) {
    const double conj = e / (e - 1.0);
    const Jet t = Jet::variable(theta);
    const Jet c = cos(t), s = sin(t);
    const Jet r = pow_pos(abs_pow(c, conj) + abs_pow(s, conj), -1.0 / conj);
    return to_curve_jet(sign_pow(r * c, conj - 1.0), sign_pow(r * s, conj - 1.0));
}

double lp_dual_locate(double e, Vec2 d) {
    return numerics::wrap(std::atan2(sign_pow(d.y, e - 1.0), sign_pow(d.x, e - 1.0)), two_pi);
}

BoundaryChart::Piece lp_piece(double e) {
    if (e >= 2.0) {
        return {[e](double t) { return lp_polar(e, t); }, polar_locate, false};
    }
    return {[e](double t) { return lp_dual_polar(e, t); }, [e](Vec2 d) { return lp_dual_locate(e, d); }, true};
}

BoundaryChart uniform_chart(const BoundaryChart::Piece& piece) { return BoundaryChart({piece, piece, piece, piece}); }

double lp_gauge(double p, Vec2 v) {
    const double ax = std::fabs(v.x), ay = std::fabs(v.y);
    const double m = std::max(ax, ay);
    if (m == 0.0) return 0.0;
    return m * std::pow(std::pow(ax / m, p) + std::pow(ay / m, p), 1.0 / p);
}

Vec2 lp_gradient(double p, Vec2 v) {
    const double g = lp_gauge(p, v);
    if (g == 0.0) throw DomainError("gauge gradient at the origin");
    const Vec2 u = v / g;
    return {sign_pow(u.x, p - 1.0), sign_pow(u.y, p - 1.0)};
}

double conjugate(double p) { return p / (p - 1.0); }

// Maps the direction v to the sampled radius r(arg v) and its derivative.
struct RadialFunction {
    std::function<PeriodicSpline::Value(double)> r;

    [[nodiscard]] double gauge(Vec2 v) const {
        const double len = euclid(v);
        if (len == 0.0) return 0.0;
        return len / r(std::atan2(v.y, v.x)).v;
    }
    [[nodiscard]] Vec2 gradient(Vec2 v) const {
        const double len = euclid(v);
        if (len == 0.0) throw DomainError("gauge gradient at the origin");
        const auto rv = r(std::atan2(v.y, v.x));
        const Vec2 radial = v / (len * rv.v);
        const Vec2 angular = Vec2{-v.y, v.x} * (-rv.d1 / (rv.v * rv.v * len));
        return radial + angular;
    }
    [[nodiscard]] CurveJet point(double theta) const {
        const auto rv = r(theta);
        const Jet t = Jet::variable(theta);
        const Jet rr{rv.v, rv.d1, rv.d2};
        return to_curve_jet(rr * cos(t), rr * sin(t));
    }
};

// Chart of a star-shaped, positively oriented closed curve built on the
// curve's own parameter. Piece k is the arc between the crossings of the
// rays at angles k pi/2 and (k+1) pi/2, mapped affinely onto the k-th
// quadrant of the chart parameter.
class CurveChart {
public:
    explicit CurveChart(ClosedCurve curve) : curve_(std::move(curve)) {
        const std::size_t m = curve_.size();
        std::vector<double> ang(m + 1);
        ang[0] = std::atan2(curve_[0].y, curve_[0].x);
        for (std::size_t i = 1; i <= m; ++i) {
            const Vec2 a = curve_[i - 1], b = curve_[i % m];
            const double step = std::atan2(det(a, b), dot(a, b));
            if (!(step > 0.0)) throw ProfileError("reconstructed curve must be star-shaped and positively oriented");
            ang[i] = ang[i - 1] + step;
        }
        if (std::fabs(ang[m] - ang[0] - two_pi) > 1e-6) throw ProfileError("reconstructed curve must wind once");
        const double period = curve_.period();
        for (int k = 0; k < 4; ++k) {
            double target = k * half_pi;
            while (target < ang[0]) target += two_pi;
            while (target >= ang[0] + two_pi) target -= two_pi;
            std::size_t i = 0;
            while (!(ang[i] <= target && target < ang[i + 1])) ++i;
            const Vec2 dir{std::cos(k * half_pi), std::sin(k * half_pi)};
            cross_[static_cast<std::size_t>(k)] = crossing(dir, curve_.param(i), curve_.param(i) + curve_.step());
        }
        for (int k = 0; k < 4; ++k) {
            double len = cross_[static_cast<std::size_t>((k + 1) % 4)] - cross_[static_cast<std::size_t>(k)];
            while (len <= 0.0) len += period;
            len_[static_cast<std::size_t>(k)] = len;
        }
    }

    [[nodiscard]] CurveJet eval(int k, double tau) const {
        const double sigma = len_[static_cast<std::size_t>(k)] / half_pi;
        const CurveJet j = curve_.jet(cross_[static_cast<std::size_t>(k)] + (tau - k * half_pi) * sigma);
        return {j.p, j.d1 * sigma, j.d2 * (sigma * sigma)};
    }

    [[nodiscard]] double locate(Vec2 d) const {
        const double ang = numerics::wrap(std::atan2(d.y, d.x), two_pi);
        const int k = std::min(3, static_cast<int>(ang / half_pi));
        const double s0 = cross_[static_cast<std::size_t>(k)];
        const double s = crossing(d, s0, s0 + len_[static_cast<std::size_t>(k)]);
        return k * half_pi + (s - s0) / len_[static_cast<std::size_t>(k)] * half_pi;
    }

    // Radius along the direction of v with its angular derivative.
    [[nodiscard]] PeriodicSpline::Value radius(Vec2 v) const {
        const CurveJet j = curve_.jet(curve_param(v));
        const double r = euclid(j.p);
        const double dtheta = det(j.p, j.d1) / (r * r);
        const double dr = dot(j.p, j.d1) / r;
        return {r, dr / dtheta, 0.0};
    }

private:
    [[nodiscard]] double curve_param(Vec2 d) const {
        const double ang = numerics::wrap(std::atan2(d.y, d.x), two_pi);
        const int k = std::min(3, static_cast<int>(ang / half_pi));
        const double s0 = cross_[static_cast<std::size_t>(k)];
        return crossing(d, s0, s0 + len_[static_cast<std::size_t>(k)]);
    }

    [[nodiscard]] double crossing(Vec2 dir, double s0, double s1) const {
        const auto side = [&](double s) { return det(dir, curve_(s)); };
        double f0 = side(s0);
        if (f0 == 0.0 && dot(dir, curve_(s0)) > 0.0) return s0;
        if (side(s1) == 0.0 && dot(dir, curve_(s1)) > 0.0) return s1;
        return numerics::bisect(side, s0, s1, f0, 1e-15 * std::max(1.0, std::fabs(s1)));
    }

    ClosedCurve curve_;
    std::array<double, 4> cross_{};
    std::array<double, 4> len_{};
};

}  // namespace

// ---------------------------------------------------------------------------
// NormProfile

struct NormProfile::Impl {
    ProfileVariant variant;
    int resolution;
    std::function<double(Vec2)> gauge;
    std::function<Vec2(Vec2)> gradient;
    std::unique_ptr<BoundaryChart> chart;
    std::vector<Vec2> scan;
};

NormProfile::NormProfile(ProfileVariant variant, int resolution) {
    if (resolution < 16) throw ProfileError("profile resolution must be at least 16");
    auto impl = std::make_shared<Impl>();
    impl->variant = std::move(variant);
    impl->resolution = resolution;

    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LpNorm>) {
                const double p = v.p;
                if (!(p > 1.0) || !std::isfinite(p)) throw ProfileError("p must exceed 1");
                impl->gauge = [p](Vec2 x) { return lp_gauge(p, x); };
                impl->gradient = [p](Vec2 x) { return lp_gradient(p, x); };
                impl->chart = std::make_unique<BoundaryChart>(uniform_chart(lp_piece(p)));
            } else if constexpr (std::is_same_v<T, EllipseNorm>) {
                const double a = v.a, b = v.b;
                if (!(a > 0.0 && b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
                    throw ProfileError("ellipse axes must be positive");
                }
                impl->gauge = [a, b](Vec2 x) { return std::hypot(x.x / a, x.y / b); };
                impl->gradient = [a, b](Vec2 x) {
                    const double g = std::hypot(x.x / a, x.y / b);
                    if (g == 0.0) throw DomainError("gauge gradient at the origin");
                    return Vec2{x.x / (a * a * g), x.y / (b * b * g)};
                };
                BoundaryChart::Piece piece{
                    [a, b](double t) {
                        const double c = std::cos(t), s = std::sin(t);
                        return CurveJet{{a * c, b * s}, {-a * s, b * c}, {-a * c, -b * s}};
                    },
                    [a, b](Vec2 d) { return numerics::wrap(std::atan2(d.y / b, d.x / a), two_pi); }, false};
                impl->chart = std::make_unique<BoundaryChart>(uniform_chart(piece));
            } else if constexpr (std::is_same_v<T, RadialFourierNorm>) {
                if (!(v.base > 0.0)) throw ProfileError("Fourier base radius must be positive");
                for (const auto& term : v.terms) {
                    if (term.frequency < 2 || term.frequency % 2 != 0) {
                        throw ProfileError("Fourier frequencies must be even and at least 2");
                    }
                }
                const RadialFourierNorm data = v;
                RadialFunction rf{[data](double theta) {
                    const Jet t = Jet::variable(theta);
                    Jet r = Jet::constant(data.base);
                    for (const auto& term : data.terms) {
                        const Jet kt = static_cast<double>(term.frequency) * t;
                        r = r + term.cos_amp * cos(kt) + term.sin_amp * sin(kt);
                    }
                    return PeriodicSpline::Value{r.v, r.d, r.dd};
                }};
                for (int j = 0; j < 4 * resolution; ++j) {
                    if (!(rf.r(two_pi * j / (4 * resolution)).v > 0.0)) {
                        throw ProfileError("Fourier radial function must stay positive");
                    }
                }
                impl->gauge = [rf](Vec2 x) { return rf.gauge(x); };
                impl->gradient = [rf](Vec2 x) { return rf.gradient(x); };
                impl->chart = std::make_unique<BoundaryChart>(
                    uniform_chart({[rf](double t) { return rf.point(t); }, polar_locate, false}));
            } else if constexpr (std::is_same_v<T, RadonGluedNorm>) {
                const double p = v.p;
                if (!(p > 1.0) || !std::isfinite(p)) throw ProfileError("p must exceed 1");
                const double q = conjugate(p);
                const auto exponent_for = [p, q](Vec2 x) { return x.x * x.y >= 0.0 ? p : q; };
                impl->gauge = [exponent_for](Vec2 x) { return lp_gauge(exponent_for(x), x); };
                impl->gradient = [exponent_for](Vec2 x) { return lp_gradient(exponent_for(x), x); };
                impl->chart = std::make_unique<BoundaryChart>(
                    std::array{lp_piece(p), lp_piece(q), lp_piece(p), lp_piece(q)});
            } else {
                auto cc = std::make_shared<const CurveChart>(v.curve);
                impl->gauge = [cc](Vec2 x) {
                    const double len = euclid(x);
                    return len == 0.0 ? 0.0 : len / cc->radius(x).v;
                };
                impl->gradient = [cc](Vec2 x) {
                    const double len = euclid(x);
                    if (len == 0.0) throw DomainError("gauge gradient at the origin");
                    const auto rv = cc->radius(x);
                    return x / (len * rv.v) + Vec2{-x.y, x.x} * (-rv.d1 / (rv.v * rv.v * len));
                };
                std::array<BoundaryChart::Piece, 4> pieces;
                for (int k = 0; k < 4; ++k) {
                    pieces[static_cast<std::size_t>(k)] = {[cc, k](double t) { return cc->eval(k, t); },
                                                           [cc](Vec2 d) { return cc->locate(d); }, false};
                }
                impl->chart = std::make_unique<BoundaryChart>(pieces);
            }
        },
        impl->variant);

    impl->scan.resize(scan_points);
    for (int k = 0; k < scan_points; ++k) {
        impl->scan[static_cast<std::size_t>(k)] = (*impl->chart)(two_pi * k / scan_points).p;
    }
    impl_ = std::move(impl);
}

const ProfileVariant& NormProfile::variant() const noexcept { return impl_->variant; }
int NormProfile::resolution() const noexcept { return impl_->resolution; }
const BoundaryChart& NormProfile::chart() const noexcept { return *impl_->chart; }
std::span<const Vec2> NormProfile::scan() const noexcept { return impl_->scan; }
double NormProfile::gauge(Vec2 v) const { return impl_->gauge(v); }
Vec2 NormProfile::gauge_gradient(Vec2 v) const { return impl_->gradient(v); }

std::string NormProfile::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LpNorm>) {
                os << "lp:" << v.p;
            } else if constexpr (std::is_same_v<T, EllipseNorm>) {
                os << "ellipse:" << v.a << ',' << v.b;
            } else if constexpr (std::is_same_v<T, RadialFourierNorm>) {
                os << "fourier:" << v.base;
                for (const auto& t : v.terms) os << ';' << t.frequency << ',' << t.cos_amp << ',' << t.sin_amp;
            } else if constexpr (std::is_same_v<T, RadonGluedNorm>) {
                os << "radon-glued:" << v.p;
            } else {
                os << "reconstructed(" << v.curve.size() << " samples)";
            }
        },
        impl_->variant);
    return os.str();
}

// ---------------------------------------------------------------------------
// Norm-level operations

double gauge(const NormProfile& profile, Vec2 v) { return profile.gauge(v); }

double antinorm(const NormProfile& profile, const SymplecticForm& form, Vec2 v) {
    if (v.x == 0.0 && v.y == 0.0) return 0.0;
    const auto scan = profile.scan();
    std::size_t best = 0;
    double best_val = form(v, scan[0]);
    for (std::size_t k = 1; k < scan.size(); ++k) {
        const double val = form(v, scan[k]);
        if (val > best_val) {
            best_val = val;
            best = k;
        }
    }
    const double h = BoundaryChart::period() / static_cast<double>(scan.size());
    const double center = h * static_cast<double>(best);
    const auto& chart = profile.chart();
    const auto objective = [&](double t) { return form(v, chart(t).p); };
    const auto [arg, val] = numerics::golden_max(objective, center - h, center + h, 1e-12);
    return std::max(val, best_val);
}

RadonCalibration measure_radon_scale(const NormProfile& profile, int samples) {
    const SymplecticForm unit{};
    double lo = INFINITY, hi = 0.0;
    std::vector<double> values(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const Vec2 u = profile.chart()(BoundaryChart::period() * (k + 0.5) / samples).p;
        const double a = antinorm(profile, unit, u) / profile.gauge(u);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    const double kappa = 2.0 / (lo + hi);
    return {SymplecticForm(kappa), (hi - lo) / (hi + lo)};
}

SymplecticForm calibrate_radon_scale(const NormProfile& profile, double tol) {
    const RadonCalibration cal = measure_radon_scale(profile);
    if (cal.residual > tol) {
        std::ostringstream os;
        os << "profile " << profile.describe() << " is not Radon: anti-norm deviates by " << cal.residual;
        throw NotRadonError(os.str(), cal.residual);
    }
    return cal.form;
}

namespace {
void require_nonzero(Vec2 v, const char* what) {
    if (v.x == 0.0 && v.y == 0.0) throw DomainError(std::string(what) + " must be a nonzero vector");
}
}  // namespace

bool is_birkhoff(const NormProfile& profile, const SymplecticForm& form, Vec2 x, Vec2 y, double tol) {
    require_nonzero(x, "x");
    require_nonzero(y, "y");
    const double bound = profile.gauge(x) * antinorm(profile, form, y);
    return std::fabs(std::fabs(form(x, y)) - bound) <= tol * bound;
}

Vec2 b_map(const NormProfile& profile, const SymplecticForm& form, Vec2 x) {
    require_nonzero(x, "x");
    const Vec2 tangent = profile.chart()(profile.chart().locate(x)).d1;
    return tangent * (profile.gauge(x) / form(x, tangent));
}

double sm(const NormProfile& profile, const SymplecticForm& form, Vec2 x, Vec2 y) {
    require_nonzero(x, "x");
    require_nonzero(y, "y");
    return form(x, y) / (profile.gauge(x) * antinorm(profile, form, y));
}

double cm(const NormProfile& profile, const SymplecticForm& form, Vec2 x, Vec2 y) {
    require_nonzero(x, "x");
    require_nonzero(y, "y");
    return form(y, b_map(profile, form, x)) / profile.gauge(y);
}

ValidationReport validate_profile(const NormProfile& profile) {
    ValidationReport rep;
    const int n = 4 * profile.resolution();
    const auto& chart = profile.chart();
    double min_k = INFINITY;
    bool prev_flat = false, first_flat = false;
    for (int i = 0; i < n; ++i) {
        const CurveJet j = chart(two_pi * i / n);
        const double speed = euclid(j.d1);
        const double k = det(j.d1, j.d2) / (speed * speed * speed);
        min_k = std::min(min_k, k);
        rep.symmetry_residual = std::max(rep.symmetry_residual, std::fabs(profile.gauge(-j.p) - 1.0));
        const bool flat = std::fabs(k) <= 1e-9;
        if (k < -1e-9) rep.strictly_convex = false;
        if (flat && prev_flat) rep.strictly_convex = false;
        if (i == 0) first_flat = flat;
        prev_flat = flat;
    }
    if (prev_flat && first_flat) rep.strictly_convex = false;
    rep.min_curvature = min_k;
    rep.nonvanishing_curvature = min_k > 1e-9;
    rep.centrally_symmetric = rep.symmetry_residual <= 1e-9;
    if (!rep.strictly_convex) rep.messages.emplace_back("curvature changes sign or vanishes on an arc");
    if (!rep.nonvanishing_curvature) rep.messages.emplace_back("curvature vanishes at isolated points");
    if (!rep.centrally_symmetric) rep.messages.emplace_back("unit circle is not centrally symmetric");
    return rep;
}

CurveJet anticircle_jet(const NormProfile& profile, const SymplecticForm& form, double tau) {
    const auto& chart = profile.chart();
    tau = numerics::wrap(tau, two_pi);
    const int k = chart.piece_of(tau);
    const auto coeff_b = [&](double t) {
        const CurveJet j = chart.on_piece(k, t);
        const double a = form(j.p, j.d1);
        return form(j.d1, j.d2) / (a * a);
    };
    const CurveJet g = chart.on_piece(k, tau);
    const double a = form(g.p, g.d1);
    const double b = form(g.d1, g.d2) / (a * a);
    // B' by a difference quotient kept inside the piece.
    const double lo = k * half_pi + 2e-6, hi = (k + 1) * half_pi - 2e-6;
    const double h = 1e-6;
    const double c = std::clamp(tau, lo, hi);
    const double db = (coeff_b(c + h) - coeff_b(c - h)) / (2.0 * h);
    return {g.d1 / a, -b * g.p, -db * g.p - b * g.d1};
}

NormProfile antinorm_profile(const NormProfile& profile, const SymplecticForm& form, int resolution) {
    ClosedCurve psi(two_pi, static_cast<std::size_t>(resolution),
                    [profile, form](double t) { return anticircle_jet(profile, form, t); });
    return NormProfile(ReconstructedNorm{std::move(psi)}, resolution);
}

}  // namespace minkowski
