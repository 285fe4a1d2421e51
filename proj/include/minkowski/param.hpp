#pragma once

#include <functional>
#include <vector>

#include "minkowski/curve.hpp"
#include "minkowski/norm.hpp"

namespace minkowski {

// Monotone reparametrization t(tau) = integral of a nonnegative density over
// a periodic parameter split into equal pieces, accumulated cell by cell with
// Gauss-Legendre quadrature. Cells never straddle pieces, and the density is
// told which piece it is evaluated on so one-sided limits are available.
class ParameterClock {
public:
    using Density = std::function<double(int piece, double tau)>;

    ParameterClock(Density density, double period, int pieces, int cells);

    [[nodiscard]] double total() const noexcept { return cum_.back(); }
    [[nodiscard]] int cells() const noexcept { return cells_; }
    [[nodiscard]] double cell_width() const noexcept { return width_; }
    [[nodiscard]] double period() const noexcept { return period_; }
    [[nodiscard]] double at_node(int i) const { return cum_[static_cast<std::size_t>(i)]; }
    // Periodic extension: forward(tau + period) = forward(tau) + total().
    [[nodiscard]] double forward(double tau) const;
    [[nodiscard]] double inverse(double t) const;
    [[nodiscard]] double density(double tau) const;

private:
    [[nodiscard]] double partial(int cell, double tau) const;

    Density density_;
    double period_;
    int cells_;
    int cells_per_piece_;
    double width_;
    std::vector<double> cum_;
};

[[nodiscard]] ClosedCurve boundary_curve(const NormProfile& profile, int n);

struct CircleLength {
    double length;
    double half_length;
};
[[nodiscard]] CircleLength circle_length(const NormProfile& profile);

// Reparametrizes a closed curve by arc length in the profile's norm.
[[nodiscard]] ClosedCurve arclength_param(const ClosedCurve& curve, const NormProfile& profile);

// psi = phi'/omega(phi, phi'), on phi's parameter.
[[nodiscard]] ClosedCurve dual_param(const ClosedCurve& phi, const SymplecticForm& form);

// Unit anti-circle parametrized so that omega(psi, psi') = 1; its period is
// the anti-circle's length in the original norm, equal to twice the area of
// the anti-ball.
[[nodiscard]] ClosedCurve antinorm_arclength_param(const NormProfile& profile, const SymplecticForm& form,
                                                   int n = 4096);

[[nodiscard]] ScalarPeriodic radius_of_curvature(const ClosedCurve& gamma, const ClosedCurve& phi);

// Minkowski curvature of the unit circle measured in the anti-norm, sampled
// on a uniform grid of the anti-circle area parameter. The computation uses
// only anti-norm evaluations by maximization and the Euclidean geometry of
// the boundary chart.
[[nodiscard]] ScalarPeriodic minkowski_curvature_antinorm(const NormProfile& profile, const SymplecticForm& form,
                                                          int n = 4096);

}  // namespace minkowski
