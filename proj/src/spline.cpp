#include "minkowski/spline.hpp"

#include <algorithm>
#include <cmath>

#include "minkowski/errors.hpp"

namespace minkowski {

PeriodicSpline::PeriodicSpline(std::span<const double> x, std::span<const double> y, double period)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), period_(period) {
    if (x_.size() != y_.size() || x_.size() < 3) {
        throw DomainError("periodic spline needs at least 3 matching samples");
    }
    if (!(period > 0.0)) throw DomainError("periodic spline needs a positive period");
    for (std::size_t i = 1; i < x_.size(); ++i) {
        if (!(x_[i] > x_[i - 1])) throw DomainError("spline knots must increase strictly");
    }
    if (!(x_.back() - x_.front() < period)) throw DomainError("spline knots exceed one period");
    solve();
}

PeriodicSpline::PeriodicSpline(std::span<const double> y, double period)
    : y_(y.begin(), y.end()), period_(period), uniform_(true) {
    if (y_.size() < 3) throw DomainError("periodic spline needs at least 3 samples");
    if (!(period > 0.0)) throw DomainError("periodic spline needs a positive period");
    const auto n = y_.size();
    x_.resize(n);
    for (std::size_t i = 0; i < n; ++i) x_[i] = period * static_cast<double>(i) / static_cast<double>(n);
    solve();
}

// Cyclic tridiagonal system for the knot second derivatives, solved with the
// Sherman-Morrison correction on top of a Thomas sweep.
void PeriodicSpline::solve() {
    const std::size_t n = y_.size();
    std::vector<double> h(n);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];
    h[n - 1] = x_[0] + period_ - x_[n - 1];

    std::vector<double> lo(n), di(n), up(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = (i + 1) % n;
        const std::size_t im = (i + n - 1) % n;
        lo[i] = h[im];
        up[i] = h[i];
        di[i] = 2.0 * (h[im] + h[i]);
        rhs[i] = 6.0 * ((y_[ip] - y_[i]) / h[i] - (y_[i] - y_[im]) / h[im]);
    }
    const double alpha = up[n - 1];  // A[n-1][0]
    const double beta = lo[0];       // A[0][n-1]
    const double gamma = -di[0];
    std::vector<double> b = di;
    b[0] -= gamma;
    b[n - 1] -= alpha * beta / gamma;

    auto thomas = [&](std::vector<double> r) {
        std::vector<double> c(n), x(n);
        c[0] = up[0] / b[0];
        r[0] /= b[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double m = b[i] - lo[i] * c[i - 1];
            c[i] = up[i] / m;
            r[i] = (r[i] - lo[i] * r[i - 1]) / m;
        }
        x[n - 1] = r[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) x[i] = r[i] - c[i] * x[i + 1];
        return x;
    };
    const std::vector<double> xs = thomas(rhs);
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = alpha;
    const std::vector<double> z = thomas(u);
    const double fact = (xs[0] + beta * xs[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    m_.resize(n);
    for (std::size_t i = 0; i < n; ++i) m_[i] = xs[i] - fact * z[i];
}

std::size_t PeriodicSpline::locate(double& x) const {
    x = x_[0] + std::fmod(x - x_[0], period_);
    if (x < x_[0]) x += period_;
    const std::size_t n = x_.size();
    std::size_t i;
    if (uniform_) {
        i = static_cast<std::size_t>((x - x_[0]) / period_ * static_cast<double>(n));
        i = std::min(i, n - 1);
    } else {
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        i = static_cast<std::size_t>(it - x_.begin()) - 1;
    }
    return i;
}

PeriodicSpline::Value PeriodicSpline::eval(double x) const {
    if (y_.empty()) throw DomainError("evaluating an empty spline");
    const std::size_t i = locate(x);
    const std::size_t n = x_.size();
    const std::size_t ip = (i + 1) % n;
    const double x1 = (i + 1 < n) ? x_[i + 1] : x_[0] + period_;
    const double h = x1 - x_[i];
    const double a = (x1 - x) / h;
    const double b = (x - x_[i]) / h;
    const double mi = m_[i], mp = m_[ip];
    const double v = a * y_[i] + b * y_[ip] + ((a * a * a - a) * mi + (b * b * b - b) * mp) * h * h / 6.0;
    const double d1 = (y_[ip] - y_[i]) / h + ((1.0 - 3.0 * a * a) * mi + (3.0 * b * b - 1.0) * mp) * h / 6.0;
    const double d2 = a * mi + b * mp;
    return {v, d1, d2};
}

}  // namespace minkowski
