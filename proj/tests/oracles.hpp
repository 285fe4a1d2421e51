#pragma once

// Independent reference computations shared by the test suites. Nothing here
// calls into the library's numerical routines except to construct fixtures.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "minkowski/norm.hpp"

namespace oracle {

using minkowski::Vec2;

inline double lp(double p, Vec2 v) { return std::pow(std::pow(std::fabs(v.x), p) + std::pow(std::fabs(v.y), p), 1.0 / p); }

// max det(v, y) over y = d / g(d) for n uniformly spaced directions d.
inline double brute_antinorm(const std::function<double(Vec2)>& g, Vec2 v, int n) {
    double best = -INFINITY;
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * i / n;
        const Vec2 d{std::cos(a), std::sin(a)};
        best = std::max(best, minkowski::det(v, d / g(d)));
    }
    return best;
}

// Convex, centrally symmetric Fourier perturbation of the disc.
inline minkowski::NormProfile fourier_fixture() {
    return minkowski::NormProfile(minkowski::RadialFourierNorm{1.0, {{2, 0.1, 0.0}, {4, 0.0, 0.03}}});
}

inline std::vector<minkowski::NormProfile> fixture_profiles() {
    using minkowski::NormProfile;
    return {NormProfile::euclidean(), NormProfile::lp(1.5),        NormProfile::lp(3),
            NormProfile::lp(5),       NormProfile::ellipse(2, 0.5), fourier_fixture(),
            NormProfile::radon_glued(3)};
}

// Area of a polygon by the shoelace formula.
inline double shoelace(const std::vector<Vec2>& pts) {
    double acc = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) acc += minkowski::det(pts[i], pts[(i + 1) % pts.size()]);
    return 0.5 * acc;
}

// Trace of the transfer matrix of u'' + lambda f(t) u = 0 over [0, c] by
// classical RK4 on n uniform steps.
inline double hill_trace(const std::function<double(double)>& f, double lambda, double c, int n) {
    const double h = c / n;
    double trace = 0.0;
    for (int col = 0; col < 2; ++col) {
        double u = col == 0 ? 1.0 : 0.0, w = col == 0 ? 0.0 : 1.0;
        for (int i = 0; i < n; ++i) {
            const double t = i * h;
            const double f0 = lambda * f(t), fm = lambda * f(t + 0.5 * h), f1 = lambda * f(t + h);
            const double k1u = w, k1w = -f0 * u;
            const double k2u = w + 0.5 * h * k1w, k2w = -fm * (u + 0.5 * h * k1u);
            const double k3u = w + 0.5 * h * k2w, k3w = -fm * (u + 0.5 * h * k2u);
            const double k4u = w + h * k3w, k4w = -f1 * (u + h * k3u);
            u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
            w += h / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w);
        }
        trace += col == 0 ? u : w;
    }
    return trace;
}

}  // namespace oracle
