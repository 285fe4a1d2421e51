#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "minkowski/spline.hpp"
#include "minkowski/vec2.hpp"

namespace minkowski {

// Periodic real function sampled on a uniform grid of its parameter.
// Evaluation between samples uses either an exact evaluator supplied at
// construction or a periodic cubic spline through the samples.
class ScalarPeriodic {
public:
    using Evaluator = std::function<double(double)>;

    ScalarPeriodic() = default;
    ScalarPeriodic(double period, std::vector<double> samples);
    ScalarPeriodic(double period, std::vector<double> samples, Evaluator exact);

    [[nodiscard]] double period() const noexcept { return period_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double step() const noexcept { return period_ / static_cast<double>(values_.size()); }
    [[nodiscard]] double param(std::size_t i) const noexcept { return step() * static_cast<double>(i); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

    [[nodiscard]] double operator()(double s) const;
    // First derivative; uses the spline through the samples.
    [[nodiscard]] double derivative(double s) const;

    [[nodiscard]] double min() const;
    [[nodiscard]] double max() const;
    [[nodiscard]] double mean() const;
    [[nodiscard]] double stddev() const;

private:
    double period_ = 0.0;
    std::vector<double> values_;
    Evaluator exact_;
    std::shared_ptr<const PeriodicSpline> spline_;
};

// Closed planar curve sampled on a uniform grid of its parameter.
class ClosedCurve {
public:
    using Evaluator = std::function<CurveJet(double)>;

    ClosedCurve() = default;
    // Interpolates the samples with periodic cubic splines per coordinate.
    ClosedCurve(double period, std::vector<Vec2> points);
    // Uses an exact evaluator; samples are taken from it on the uniform grid.
    ClosedCurve(double period, std::size_t n, Evaluator exact);

    [[nodiscard]] double period() const noexcept { return period_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] double step() const noexcept { return period_ / static_cast<double>(points_.size()); }
    [[nodiscard]] double param(std::size_t i) const noexcept { return step() * static_cast<double>(i); }
    [[nodiscard]] std::span<const Vec2> points() const noexcept { return points_; }
    [[nodiscard]] Vec2 operator[](std::size_t i) const noexcept { return points_[i]; }
    // +1 for counter-clockwise, -1 for clockwise, 0 for zero enclosed area.
    [[nodiscard]] int orientation() const noexcept { return orientation_; }

    [[nodiscard]] CurveJet jet(double s) const;
    [[nodiscard]] CurveJet jet_at(std::size_t i) const { return jet(param(i)); }
    [[nodiscard]] Vec2 operator()(double s) const { return jet(s).p; }

    // Signed area enclosed by the sample polygon.
    [[nodiscard]] double polygon_area() const;
    [[nodiscard]] Vec2 centroid() const;
    [[nodiscard]] double diameter() const;

private:
    void finish();

    double period_ = 0.0;
    std::vector<Vec2> points_;
    Evaluator exact_;
    std::shared_ptr<const PeriodicSpline> sx_;
    std::shared_ptr<const PeriodicSpline> sy_;
    int orientation_ = 0;
};

}  // namespace minkowski
