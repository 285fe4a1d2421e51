#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minkowski/sturm_liouville.hpp"

namespace minkowski {

enum class Parity { periodic, antiperiodic };

[[nodiscard]] constexpr double parity_sign(Parity p) noexcept { return p == Parity::periodic ? 1.0 : -1.0; }
[[nodiscard]] std::string to_string(Parity p);

// Transfer matrix of (u, w) over one half period.
struct Monodromy {
    double m11, m12, m21, m22;
    double lambda;

    [[nodiscard]] double trace() const noexcept { return m11 + m22; }
    [[nodiscard]] double det() const noexcept { return m11 * m22 - m12 * m21; }
    // Frobenius norm of M - sign * I.
    [[nodiscard]] double distance_to(double sign) const noexcept;
};

[[nodiscard]] Monodromy monodromy(const SLCoefficients& coeffs, double lambda);
[[nodiscard]] double discriminant(const SLCoefficients& coeffs, double lambda);

struct SpectrumEntry {
    double lambda;
    Parity parity;
    bool is_double;
    // |trace - 2 sign| for simple entries, |M - sign I|_F for double ones.
    double residual;
    // Set when the discriminant touches +-2 without a crossing and the
    // matrix test is inconclusive.
    bool flagged = false;
};

struct Spectrum {
    std::vector<SpectrumEntry> entries;  // ascending in lambda
    double lambda_max;
};

struct SpectralOptions {
    int grid = 2000;
    double double_tol = 1e-5;
    double root_tol = 1e-10;
};

[[nodiscard]] Spectrum find_eigenvalues(const SLCoefficients& coeffs, double lambda_max,
                                        const SpectralOptions& options = {});

// One normalized solution (max |u| = 1) over a full period, or a basis of
// two when the eigenvalue is double. Throws NoEigenfunctionError when the
// boundary condition cannot be met to tol.
[[nodiscard]] std::vector<SLSolution> eigenfunction(const SLCoefficients& coeffs, double lambda, Parity parity,
                                                    double tol = 1e-6);

// Pairs (lambda_k^1, lambda_k^2) of the ladder above lambda_0, with a double
// entry counting as a pair of equal members.
struct EigenPair {
    double lower;
    double upper;
    Parity parity;
};
[[nodiscard]] std::vector<EigenPair> eigen_pairs(const Spectrum& spectrum);

// Smallest pair gap over k >= 2; empty when the spectrum has no such pair.
// This measures the numerical conjecture that all eigenvalues double only
// for the Euclidean plane; it asserts nothing.
[[nodiscard]] std::optional<double> min_pair_gap(const Spectrum& spectrum);

}  // namespace minkowski
