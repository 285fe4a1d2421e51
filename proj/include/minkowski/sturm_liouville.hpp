#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "minkowski/curve.hpp"
#include "minkowski/norm.hpp"
#include "minkowski/param.hpp"

namespace minkowski {

// Coefficients of (1/a)(u'/b)' = -lambda u carried as densities along a grid
// parameter s: with t the physical parameter and dt = speed ds,
//   A = a * speed,  B = b * speed,
// the first-order system reads u_s = B w, w_s = -lambda A u, where w = u'/b
// is the quasi-derivative. The system, and hence every solution value and
// the monodromy, does not depend on which grid parameter is used. This lets
// the boundary chart serve as the grid even where a and b themselves blow up
// or vanish.
struct FormSample {
    double a_density;
    double b_density;
    double speed;
};

class SLCoefficients {
public:
    using Density = std::function<FormSample(int piece, double s)>;

    // Geometric data on the grid parameter: boundary point, anti-circle
    // point and the area form that pairs them.
    struct Geometry {
        std::function<CurveJet(double)> phi;
        std::function<CurveJet(double)> psi;
        SymplecticForm form;
    };

    SLCoefficients(Density density, double grid_period, int pieces, int steps,
                   std::optional<Geometry> geometry = std::nullopt);

    // Cycloid-equation coefficients of a profile in the norm arc-length parameter.
    static SLCoefficients from_profile(const NormProfile& profile, const SymplecticForm& form, int steps = 4096);

    [[nodiscard]] int steps() const noexcept { return steps_; }
    [[nodiscard]] int pieces() const noexcept { return pieces_; }
    [[nodiscard]] double grid_period() const noexcept { return grid_period_; }
    [[nodiscard]] double grid_step() const noexcept { return grid_period_ / steps_; }
    [[nodiscard]] double grid_param(int i) const noexcept { return grid_step() * i; }
    [[nodiscard]] double period() const noexcept { return clock_->total(); }
    [[nodiscard]] double half_period() const noexcept { return 0.5 * clock_->total(); }

    // Samples at the start, midpoint and end of step i, each taken on the
    // piece that contains the step.
    [[nodiscard]] const std::array<FormSample, 3>& step_samples(int i) const {
        return cache_[static_cast<std::size_t>(i)];
    }
    [[nodiscard]] FormSample at(double s) const;
    [[nodiscard]] FormSample on_piece(int piece, double s) const { return density_(piece, s); }
    [[nodiscard]] int piece_of(double s) const noexcept;

    // Physical parameter t as a function of the grid parameter, and back.
    [[nodiscard]] double t_of(double s) const { return clock_->forward(s); }
    [[nodiscard]] double s_of(double t) const { return clock_->inverse(t); }
    [[nodiscard]] double t_at_node(int i) const;

    // Physical coefficients a = A/speed and b = B/speed at the grid nodes.
    // Entries can be 0 or +inf where the geometry has curvature zeros or
    // singularities.
    [[nodiscard]] ScalarPeriodic a() const;
    [[nodiscard]] ScalarPeriodic b() const;

    [[nodiscard]] bool has_geometry() const noexcept { return geometry_.has_value(); }
    // Unit circle and anti-circle on the grid parameter (requires geometry).
    [[nodiscard]] ClosedCurve phi() const;
    [[nodiscard]] ClosedCurve psi() const;
    [[nodiscard]] const Geometry& geometry() const;

    // Same densities on a grid with a different number of steps.
    [[nodiscard]] SLCoefficients with_steps(int steps) const;
    // Multiplies the a-density by factor (the lambda-rescaling of a Hill coefficient).
    [[nodiscard]] SLCoefficients scaled(double factor) const;
    [[nodiscard]] const Density& density() const noexcept { return density_; }

private:
    Density density_;
    double grid_period_;
    int pieces_;
    int steps_;
    std::optional<Geometry> geometry_;
    std::vector<std::array<FormSample, 3>> cache_;
    std::shared_ptr<const ParameterClock> clock_;
};

struct SLSolution {
    std::vector<double> s;  // grid parameter at the nodes
    std::vector<double> t;  // physical parameter at the nodes
    std::vector<double> u;
    std::vector<double> w;  // quasi-derivative u'/b
    double lambda = 0.0;
    double error_estimate = 0.0;  // step-doubling estimate of max |u error|

    [[nodiscard]] std::size_t size() const noexcept { return u.size(); }
    [[nodiscard]] double max_abs() const;
};

// Fixed-step RK4 on the coefficient grid from (u0, w0) over t in [0, span].
[[nodiscard]] SLSolution integrate_sl(const SLCoefficients& coeffs, double lambda, double u0, double w0, double span);

// Row-major transfer matrix {m11, m12, m21, m22} of the (u, w) system over
// the first `count` grid steps, by the same RK4 scheme as integrate_sl.
[[nodiscard]] std::array<double, 4> transfer_steps(const SLCoefficients& coeffs, double lambda, int count);

}  // namespace minkowski
