#include "minkowski/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "minkowski/errors.hpp"
#include "minkowski/numerics.hpp"

namespace minkowski {

std::string to_string(Parity p) { return p == Parity::periodic ? "periodic" : "antiperiodic"; }

double Monodromy::distance_to(double sign) const noexcept {
    const double a = m11 - sign, d = m22 - sign;
    return std::sqrt(a * a + m12 * m12 + m21 * m21 + d * d);
}

Monodromy monodromy(const SLCoefficients& coeffs, double lambda) {
    const auto m = transfer_steps(coeffs, lambda, coeffs.steps() / 2);
    return {m[0], m[1], m[2], m[3], lambda};
}

double discriminant(const SLCoefficients& coeffs, double lambda) { return monodromy(coeffs, lambda).trace(); }

namespace {

// Sign changes of trace - target on a uniform sub-grid of [lo, hi], refined by bisection.
std::vector<double> crossings(const SLCoefficients& coeffs, double target, double lo, double hi, int cells,
                              double tol) {
    std::vector<double> roots;
    const auto g = [&](double l) { return discriminant(coeffs, l) - target; };
    double prev_l = lo, prev_g = g(lo);
    for (int i = 1; i <= cells; ++i) {
        const double l = lo + (hi - lo) * i / cells;
        const double gl = g(l);
        if (prev_g == 0.0) {
            roots.push_back(prev_l);
        } else if ((gl < 0.0) != (prev_g < 0.0) && gl != 0.0) {
            roots.push_back(numerics::bisect(g, prev_l, l, prev_g, tol));
        }
        prev_l = l;
        prev_g = gl;
    }
    return roots;
}

}  // namespace

Spectrum find_eigenvalues(const SLCoefficients& coeffs, double lambda_max, const SpectralOptions& options) {
    if (!(lambda_max > 1.0)) throw DomainError("lambda_max must exceed 1");
    if (options.grid < 4) throw DomainError("eigenvalue scan needs at least 4 grid points");
    const int n = options.grid;
    const double dl = lambda_max / n;
    std::vector<double> lam(static_cast<std::size_t>(n) + 1), tr(lam.size());
    for (int k = 0; k <= n; ++k) {
        lam[static_cast<std::size_t>(k)] = dl * k;
        tr[static_cast<std::size_t>(k)] = discriminant(coeffs, dl * k);
    }

    Spectrum spec{{}, lambda_max};
    const Monodromy m0 = monodromy(coeffs, 0.0);
    const double d0 = m0.distance_to(1.0);
    spec.entries.push_back({0.0, Parity::periodic, d0 < options.double_tol, std::fabs(m0.trace() - 2.0)});

    for (const Parity parity : {Parity::periodic, Parity::antiperiodic}) {
        const double sign = parity_sign(parity);
        const double target = 2.0 * sign;
        std::vector<double> roots;
        for (int k = 1; k < n; ++k) {
            const double g0 = tr[static_cast<std::size_t>(k)] - target;
            const double g1 = tr[static_cast<std::size_t>(k) + 1] - target;
            if (g0 == 0.0) {
                roots.push_back(lam[static_cast<std::size_t>(k)]);
            } else if ((g0 < 0.0) != (g1 < 0.0) && g1 != 0.0) {
                roots.push_back(numerics::bisect([&](double l) { return discriminant(coeffs, l) - target; },
                                                 lam[static_cast<std::size_t>(k)],
                                                 lam[static_cast<std::size_t>(k) + 1], g0, options.root_tol));
            }
        }

        std::vector<SpectrumEntry> extra;
        for (int k = 1; k < n; ++k) {
            const double c = sign * tr[static_cast<std::size_t>(k)];
            if (c < sign * tr[static_cast<std::size_t>(k) - 1] || c < sign * tr[static_cast<std::size_t>(k) + 1]) continue;
            if (c < 2.0 - 0.1) continue;
            const double lo = lam[static_cast<std::size_t>(k) - 1], hi = lam[static_cast<std::size_t>(k) + 1];
            const auto [arg, neg] = numerics::golden_max(
                [&](double l) { return -monodromy(coeffs, l).distance_to(sign); }, lo, hi, 0.1 * options.root_tol);
            const double dist = -neg;
            const auto inside = [&](double r) { return r > lo && r < hi; };
            if (dist < options.double_tol) {
                std::erase_if(roots, inside);
                extra.push_back({arg, parity, true, dist});
                continue;
            }
            if (std::any_of(roots.begin(), roots.end(), inside)) continue;
            const auto [peak_at, peak] = numerics::golden_max(
                [&](double l) { return sign * discriminant(coeffs, l); }, lo, hi, 0.1 * options.root_tol);
            if (peak < 2.0 - 1e-9) continue;
            // Near-tangency without a grid-level crossing: retry at 4x resolution.
            const auto local = crossings(coeffs, target, lo, hi, 8, options.root_tol);
            if (!local.empty()) {
                roots.insert(roots.end(), local.begin(), local.end());
            } else if (peak <= 2.0 + 1e-6) {
                extra.push_back({peak_at, parity, false, dist, true});
            }
        }
        for (double r : roots) {
            const Monodromy m = monodromy(coeffs, r);
            const double dist = m.distance_to(sign);
            const bool dbl = dist < options.double_tol;
            spec.entries.push_back({r, parity, dbl, dbl ? dist : std::fabs(m.trace() - target)});
        }
        spec.entries.insert(spec.entries.end(), extra.begin(), extra.end());
    }
    std::sort(spec.entries.begin(), spec.entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.lambda < b.lambda; });
    return spec;
}

std::vector<SLSolution> eigenfunction(const SLCoefficients& coeffs, double lambda, Parity parity, double tol) {
    const double sign = parity_sign(parity);
    const Monodromy m = monodromy(coeffs, lambda);
    const auto normalized = [&](double u0, double w0) {
        SLSolution s = integrate_sl(coeffs, lambda, u0, w0, coeffs.period());
        const double scale = s.max_abs();
        for (double& v : s.u) v /= scale;
        for (double& v : s.w) v /= scale;
        s.error_estimate /= scale;
        return s;
    };
    if (m.distance_to(sign) < 1e-5) return {normalized(1.0, 0.0), normalized(0.0, 1.0)};

    // Null vector of M - sign I from its larger row.
    const double r1 = std::hypot(m.m11 - sign, m.m12), r2 = std::hypot(m.m21, m.m22 - sign);
    double vu = 0.0, vw = 0.0;
    if (r1 >= r2) {
        vu = m.m12;
        vw = -(m.m11 - sign);
    } else {
        vu = m.m22 - sign;
        vw = -m.m21;
    }
    const double len = std::hypot(vu, vw);
    if (!(len > 0.0)) throw NoEigenfunctionError("degenerate monodromy at lambda " + std::to_string(lambda));
    vu /= len;
    vw /= len;
    const double ru = (m.m11 - sign) * vu + m.m12 * vw, rw = m.m21 * vu + (m.m22 - sign) * vw;
    const double residual = std::hypot(ru, rw);
    if (residual > tol) {
        throw NoEigenfunctionError("lambda " + std::to_string(lambda) + " is not a " + to_string(parity) +
                                   " eigenvalue (boundary residual " + std::to_string(residual) + ")");
    }
    return {normalized(vu, vw)};
}

std::vector<EigenPair> eigen_pairs(const Spectrum& spectrum) {
    std::vector<EigenPair> pairs;
    const SpectrumEntry* pending = nullptr;
    for (const SpectrumEntry& e : spectrum.entries) {
        if (e.lambda == 0.0) continue;
        if (e.is_double) {
            pairs.push_back({e.lambda, e.lambda, e.parity});
            continue;
        }
        if (pending && pending->parity == e.parity) {
            pairs.push_back({pending->lambda, e.lambda, e.parity});
            pending = nullptr;
        } else {
            pending = &e;
        }
    }
    return pairs;
}

std::optional<double> min_pair_gap(const Spectrum& spectrum) {
    const auto pairs = eigen_pairs(spectrum);
    std::optional<double> best;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
        const double gap = pairs[k].upper - pairs[k].lower;
        if (!best || gap < *best) best = gap;
    }
    return best;
}

}  // namespace minkowski
