#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "minkowski/curve.hpp"
#include "minkowski/vec2.hpp"

namespace minkowski {

// Area form omega(x, y) = kappa * det(x, y).
class SymplecticForm {
public:
    constexpr SymplecticForm() = default;
    explicit SymplecticForm(double kappa);

    [[nodiscard]] constexpr double kappa() const noexcept { return kappa_; }
    [[nodiscard]] constexpr double operator()(Vec2 a, Vec2 b) const noexcept { return kappa_ * det(a, b); }

private:
    double kappa_ = 1.0;
};

struct LpNorm {
    double p;
};
struct EllipseNorm {
    double a;
    double b;
};
struct FourierTerm {
    int frequency;
    double cos_amp;
    double sin_amp;
};
// Radial function r(theta) = base + sum(cos_amp cos(k theta) + sin_amp sin(k theta)).
struct RadialFourierNorm {
    double base;
    std::vector<FourierTerm> terms;
};
// Quadrants I and III follow the l_p circle, II and IV the conjugate l_q circle.
struct RadonGluedNorm {
    double p;
};
struct ReconstructedNorm {
    ClosedCurve curve;
};

using ProfileVariant = std::variant<LpNorm, EllipseNorm, RadialFourierNorm, RadonGluedNorm, ReconstructedNorm>;

// Piecewise parametrization of the unit circle over tau in [0, 2 pi).
// Piece k covers tau in [k pi/2, (k+1) pi/2] and the directions of the
// k-th quadrant. Pieces are analytic on their closed interval; at piece
// ends of l_p circles with p < 2 the parametrization speed vanishes, and
// evaluation there is moved inward by a tiny offset.
class BoundaryChart {
public:
    struct Piece {
        std::function<CurveJet(double)> eval;
        std::function<double(Vec2)> locate;  // tau in [0, 2 pi) for a direction in this quadrant
        bool singular_ends = false;
    };

    static constexpr int piece_count = 4;

    explicit BoundaryChart(std::array<Piece, piece_count> pieces) : pieces_(std::move(pieces)) {}

    [[nodiscard]] static double period() noexcept;
    [[nodiscard]] static double piece_length() noexcept;
    [[nodiscard]] CurveJet operator()(double tau) const;
    // Jet restricted to piece k, with tau clamped into that piece. Used at
    // breakpoints to pick the one-sided limit.
    [[nodiscard]] CurveJet on_piece(int k, double tau) const;
    [[nodiscard]] int piece_of(double tau) const noexcept;
    // Parameter of the boundary point in the direction d (d != 0).
    [[nodiscard]] double locate(Vec2 d) const;

private:
    std::array<Piece, piece_count> pieces_;
};

class NormProfile {
public:
    static constexpr int default_resolution = 2048;
    static constexpr int scan_points = 512;

    explicit NormProfile(ProfileVariant variant, int resolution = default_resolution);

    static NormProfile lp(double p) { return NormProfile(LpNorm{p}); }
    static NormProfile euclidean() { return lp(2.0); }
    static NormProfile ellipse(double a, double b) { return NormProfile(EllipseNorm{a, b}); }
    static NormProfile radon_glued(double p) { return NormProfile(RadonGluedNorm{p}); }

    [[nodiscard]] const ProfileVariant& variant() const noexcept;
    [[nodiscard]] int resolution() const noexcept;
    [[nodiscard]] const BoundaryChart& chart() const noexcept;
    // Boundary points at scan_points uniformly spaced chart parameters.
    [[nodiscard]] std::span<const Vec2> scan() const noexcept;
    [[nodiscard]] double gauge(Vec2 v) const;
    [[nodiscard]] Vec2 gauge_gradient(Vec2 v) const;
    [[nodiscard]] std::string describe() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

[[nodiscard]] double gauge(const NormProfile& profile, Vec2 v);
[[nodiscard]] double antinorm(const NormProfile& profile, const SymplecticForm& form, Vec2 v);

struct RadonCalibration {
    SymplecticForm form;
    double residual;  // max |antinorm(v) - 1| over sampled unit vectors
};
// Best kappa without judging the result.
[[nodiscard]] RadonCalibration measure_radon_scale(const NormProfile& profile, int samples = 256);
// Throws NotRadonError when the residual exceeds tol.
[[nodiscard]] SymplecticForm calibrate_radon_scale(const NormProfile& profile, double tol = 1e-6);

[[nodiscard]] bool is_birkhoff(const NormProfile& profile, const SymplecticForm& form, Vec2 x, Vec2 y,
                               double tol = 1e-9);
[[nodiscard]] Vec2 b_map(const NormProfile& profile, const SymplecticForm& form, Vec2 x);
[[nodiscard]] double sm(const NormProfile& profile, const SymplecticForm& form, Vec2 x, Vec2 y);
[[nodiscard]] double cm(const NormProfile& profile, const SymplecticForm& form, Vec2 x, Vec2 y);

struct ValidationReport {
    bool parameters_in_range = true;
    bool centrally_symmetric = true;
    bool strictly_convex = true;        // no sign change of curvature, zeros isolated
    bool nonvanishing_curvature = true; // Euclidean curvature > 0 at every sample
    double symmetry_residual = 0.0;
    double min_curvature = 0.0;
    std::vector<std::string> messages;

    [[nodiscard]] bool ok() const noexcept { return parameters_in_range && centrally_symmetric && strictly_convex; }
};
[[nodiscard]] ValidationReport validate_profile(const NormProfile& profile);

// Point of the unit anti-circle paired with the boundary point at chart
// parameter tau: psi = gamma'/omega(gamma, gamma'), with derivatives in tau.
[[nodiscard]] CurveJet anticircle_jet(const NormProfile& profile, const SymplecticForm& form, double tau);

// Unit circle of the anti-norm as a Reconstructed profile.
[[nodiscard]] NormProfile antinorm_profile(const NormProfile& profile, const SymplecticForm& form,
                                           int resolution = NormProfile::default_resolution);

}  // namespace minkowski
