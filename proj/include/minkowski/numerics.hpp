#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace minkowski::numerics {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Reduces x into [0, period).
inline double wrap(double x, double period) noexcept {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;
    return r;
}

// Golden-section maximization of a unimodal f on [a, b]; returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol) {
    constexpr double g = 0.6180339887498949;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    const double fx = f(x);
    if (fx >= fc && fx >= fd) return {x, fx};
    return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

// Bisection for a sign change of f on [a, b] given f(a) = fa.
template <class F>
double bisect(F&& f, double a, double b, double fa, double tol) {
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Illinois-modified regula falsi for a sign change of f on [a, b] given
// fa = f(a) and fb = f(b); stops when the bracket or the step is below tol.
template <class F>
double illinois(F&& f, double a, double b, double fa, double fb, double tol) {
    int side = 0;
    double c = a;
    for (int it = 0; it < 100; ++it) {
        c = (a * fb - b * fa) / (fb - fa);
        const double fc = f(c);
        if (fc == 0.0 || std::fabs(b - a) < tol) return c;
        if ((fc < 0.0) == (fb < 0.0)) {
            b = c;
            fb = fc;
            if (side == -1) fa *= 0.5;
            side = -1;
        } else {
            a = c;
            fa = fc;
            if (side == 1) fb *= 0.5;
            side = 1;
        }
        if (std::fabs(b - a) < tol) return 0.5 * (a + b);
    }
    return c;
}

// Six-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 6> gl_nodes{-0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
                                                0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
inline constexpr std::array<double, 6> gl_weights{0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
                                                  0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

template <class F>
double gauss_legendre(F&& f, double a, double b) {
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t k = 0; k < gl_nodes.size(); ++k) acc += gl_weights[k] * f(m + h * gl_nodes[k]);
    return h * acc;
}

}  // namespace minkowski::numerics
