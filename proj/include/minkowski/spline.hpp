#pragma once

#include <span>
#include <vector>

namespace minkowski {

// Periodic C² cubic spline through (x_i, y_i), i = 0..n-1, with
// y(x + period) = y(x). Knots must be strictly increasing and span less
// than one period.
class PeriodicSpline {
public:
    struct Value {
        double v;
        double d1;
        double d2;
    };

    PeriodicSpline() = default;
    PeriodicSpline(std::span<const double> x, std::span<const double> y, double period);
    // Uniform knots x_i = i * period / n.
    PeriodicSpline(std::span<const double> y, double period);

    [[nodiscard]] Value eval(double x) const;
    [[nodiscard]] double operator()(double x) const { return eval(x).v; }
    [[nodiscard]] double period() const noexcept { return period_; }
    [[nodiscard]] bool empty() const noexcept { return y_.empty(); }

private:
    void solve();
    [[nodiscard]] std::size_t locate(double& x) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at the knots
    double period_ = 0.0;
    bool uniform_ = false;
};

}  // namespace minkowski
