#include "minkowski/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "minkowski/errors.hpp"
#include "minkowski/numerics.hpp"

namespace minkowski {

namespace {

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

ScalarPeriodic::ScalarPeriodic(double period, std::vector<double> samples)
    : period_(period), values_(std::move(samples)) {
    if (!(period_ > 0.0) || values_.size() < 3) throw DomainError("scalar function needs a period and 3+ samples");
    if (all_finite(values_)) spline_ = std::make_shared<const PeriodicSpline>(values_, period_);
}

ScalarPeriodic::ScalarPeriodic(double period, std::vector<double> samples, Evaluator exact)
    : ScalarPeriodic(period, std::move(samples)) {
    exact_ = std::move(exact);
}

double ScalarPeriodic::operator()(double s) const {
    if (exact_) return exact_(numerics::wrap(s, period_));
    if (!spline_) throw DomainError("non-finite samples cannot be interpolated");
    return spline_->eval(s).v;
}

double ScalarPeriodic::derivative(double s) const {
    if (!spline_) throw DomainError("non-finite samples cannot be differentiated");
    return spline_->eval(s).d1;
}

double ScalarPeriodic::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarPeriodic::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarPeriodic::mean() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double ScalarPeriodic::stddev() const {
    const double mu = mean();
    double acc = 0.0;
    for (double v : values_) acc += (v - mu) * (v - mu);
    return std::sqrt(acc / static_cast<double>(values_.size()));
}

ClosedCurve::ClosedCurve(double period, std::vector<Vec2> points)
    : period_(period), points_(std::move(points)) {
    if (!(period_ > 0.0) || points_.size() < 4) throw DegenerateCurveError("closed curve needs a period and 4+ samples");
    std::vector<double> xs(points_.size()), ys(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        xs[i] = points_[i].x;
        ys[i] = points_[i].y;
    }
    sx_ = std::make_shared<const PeriodicSpline>(xs, period_);
    sy_ = std::make_shared<const PeriodicSpline>(ys, period_);
    finish();
}

ClosedCurve::ClosedCurve(double period, std::size_t n, Evaluator exact)
    : period_(period), exact_(std::move(exact)) {
    if (!(period_ > 0.0) || n < 4) throw DegenerateCurveError("closed curve needs a period and 4+ samples");
    points_.resize(n);
    for (std::size_t i = 0; i < n; ++i) points_[i] = exact_(param(i)).p;
    finish();
}

void ClosedCurve::finish() {
    for (const Vec2& p : points_) {
        if (!is_finite(p)) throw DegenerateCurveError("closed curve has non-finite samples");
    }
    const double a = polygon_area();
    orientation_ = a > 0.0 ? 1 : (a < 0.0 ? -1 : 0);
}

CurveJet ClosedCurve::jet(double s) const {
    if (exact_) return exact_(numerics::wrap(s, period_));
    const auto x = sx_->eval(s);
    const auto y = sy_->eval(s);
    return {{x.v, y.v}, {x.d1, y.d1}, {x.d2, y.d2}};
}

double ClosedCurve::polygon_area() const {
    double acc = 0.0;
    const std::size_t n = points_.size();
    for (std::size_t i = 0; i < n; ++i) acc += det(points_[i], points_[(i + 1) % n]);
    return 0.5 * acc;
}

Vec2 ClosedCurve::centroid() const {
    Vec2 c{};
    for (const Vec2& p : points_) c += p;
    return c / static_cast<double>(points_.size());
}

double ClosedCurve::diameter() const {
    // Exact over samples would be quadratic; the bounding-box diagonal bounds it
    // within a factor sqrt(2) and is all callers need for relative tolerances.
    double x0 = points_[0].x, x1 = x0, y0 = points_[0].y, y1 = y0;
    for (const Vec2& p : points_) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    return std::hypot(x1 - x0, y1 - y0);
}

}  // namespace minkowski
