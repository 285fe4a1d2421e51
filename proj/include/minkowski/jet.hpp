#pragma once

// Second-order forward-mode differentiation: a Jet carries f, f' and f''
// with respect to a single scalar parameter.

#include <cmath>

namespace minkowski {

struct Jet {
    double v = 0.0;
    double d = 0.0;
    double dd = 0.0;

    static constexpr Jet variable(double x) noexcept { return {x, 1.0, 0.0}; }
    static constexpr Jet constant(double x) noexcept { return {x, 0.0, 0.0}; }

    friend constexpr Jet operator+(Jet a, Jet b) noexcept { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
    friend constexpr Jet operator-(Jet a, Jet b) noexcept { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
    friend constexpr Jet operator-(Jet a) noexcept { return {-a.v, -a.d, -a.dd}; }
    friend constexpr Jet operator*(Jet a, Jet b) noexcept {
        return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
    }
    friend constexpr Jet operator*(double s, Jet a) noexcept { return {s * a.v, s * a.d, s * a.dd}; }
    friend constexpr Jet operator*(Jet a, double s) noexcept { return s * a; }
    friend constexpr Jet operator+(Jet a, double s) noexcept { return {a.v + s, a.d, a.dd}; }
    friend constexpr Jet operator+(double s, Jet a) noexcept { return a + s; }
    friend constexpr Jet operator/(Jet a, double s) noexcept { return {a.v / s, a.d / s, a.dd / s}; }
};

// Applies a scalar function given its value and first two derivatives at x.v.
constexpr Jet chain(Jet x, double f, double f1, double f2) noexcept {
    return {f, f1 * x.d, f2 * x.d * x.d + f1 * x.dd};
}

inline Jet sin(Jet x) noexcept {
    const double s = std::sin(x.v), c = std::cos(x.v);
    return chain(x, s, c, -s);
}
inline Jet cos(Jet x) noexcept {
    const double s = std::sin(x.v), c = std::cos(x.v);
    return chain(x, c, -s, -c);
}
inline Jet exp(Jet x) noexcept {
    const double e = std::exp(x.v);
    return chain(x, e, e, e);
}
inline Jet reciprocal(Jet x) noexcept {
    const double r = 1.0 / x.v;
    return chain(x, r, -r * r, 2.0 * r * r * r);
}
inline Jet operator/(Jet a, Jet b) noexcept { return a * reciprocal(b); }

// x^e for x > 0.
inline Jet pow_pos(Jet x, double e) noexcept {
    const double f = std::pow(x.v, e);
    return chain(x, f, e * f / x.v, e * (e - 1.0) * f / (x.v * x.v));
}

// |x|^e for e >= 2 (twice differentiable at 0).
inline Jet abs_pow(Jet x, double e) noexcept {
    const double a = std::fabs(x.v);
    const double s = x.v < 0.0 ? -1.0 : 1.0;
    const double f = std::pow(a, e);
    const double f1 = e * s * std::pow(a, e - 1.0);
    const double f2 = e * (e - 1.0) * std::pow(a, e - 2.0);
    return chain(x, f, f1, f2);
}

// sgn(x)|x|^e for e > 0; the second derivative is singular at 0 when e < 2.
inline Jet sign_pow(Jet x, double e) noexcept {
    const double a = std::fabs(x.v);
    const double s = x.v < 0.0 ? -1.0 : 1.0;
    const double f = s * std::pow(a, e);
    const double f1 = e * std::pow(a, e - 1.0);
    const double f2 = a == 0.0 ? 0.0 : s * e * (e - 1.0) * std::pow(a, e - 2.0);
    return chain(x, f, f1, f2);
}

inline double sign_pow(double x, double e) noexcept {
    return std::copysign(std::pow(std::fabs(x), e), x);
}

}  // namespace minkowski
