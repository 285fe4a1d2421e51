#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "minkowski/errors.hpp"
#include "minkowski/norm.hpp"
#include "oracles.hpp"

using namespace minkowski;
using std::numbers::pi;

TEST_CASE("gauge closed forms") {
    CHECK(gauge(NormProfile::euclidean(), {3, 4}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(gauge(NormProfile::lp(1.5), {1, 1}) == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-14));
    CHECK(gauge(NormProfile::lp(3), {0, 0}) == 0.0);
    const NormProfile f = oracle::fourier_fixture();
    for (int k = 0; k < 64; ++k) {
        const Vec2 p = f.chart()(2 * pi * k / 64 + 0.01).p;
        CHECK(std::fabs(gauge(f, p) - 1.0) < 1e-12);
    }
}

TEST_CASE("invalid profiles are rejected at construction") {
    CHECK_THROWS_AS(NormProfile::lp(1.0), ProfileError);
    CHECK_THROWS_AS(NormProfile::lp(0.8), ProfileError);
    CHECK_THROWS_AS(NormProfile::ellipse(-1, 2), ProfileError);
    CHECK_THROWS_AS(NormProfile(RadialFourierNorm{1.0, {{3, 0.1, 0.0}}}), ProfileError);
    CHECK_THROWS_AS(NormProfile(RadialFourierNorm{1.0, {{2, 1.5, 0.0}}}), ProfileError);
    CHECK_THROWS_AS(SymplecticForm(0.0), DomainError);
}

TEST_CASE("anti-norm against brute-force maximization") {
    const SymplecticForm unit{};
    CHECK(antinorm(NormProfile::euclidean(), unit, {3, 4}) == doctest::Approx(5.0).epsilon(1e-12));

    const NormProfile l3 = NormProfile::lp(3);
    const double brute = oracle::brute_antinorm([](Vec2 v) { return oracle::lp(3, v); }, {1, 1}, 1'000'000);
    const double got = antinorm(l3, unit, {1, 1});
    CHECK(got == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-11));
    CHECK(std::fabs(got - brute) < 1e-9);

    // Hoelder duality: the anti-norm of l_p is the l_q norm of the rotated vector.
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    for (double p : {1.5, 3.0, 5.0}) {
        const NormProfile prof = NormProfile::lp(p);
        for (int i = 0; i < 50; ++i) {
            const Vec2 v{u(rng), u(rng)};
            CHECK(antinorm(prof, unit, v) == doctest::Approx(oracle::lp(p / (p - 1), {-v.y, v.x})).epsilon(1e-10));
        }
    }
    CHECK(antinorm(l3, unit, {0, 0}) == 0.0);
    CHECK(antinorm(l3, SymplecticForm(2.5), {1, 1}) == doctest::Approx(2.5 * got).epsilon(1e-12));
}

TEST_CASE("Radon calibration") {
    const auto euclid = measure_radon_scale(NormProfile::euclidean());
    CHECK(euclid.form.kappa() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(euclid.residual < 1e-9);

    const NormProfile glued = NormProfile::radon_glued(3);
    const SymplecticForm form = calibrate_radon_scale(glued);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ang(0, 2 * pi);
    const auto glued_gauge = [](Vec2 v) { return oracle::lp(v.x * v.y >= 0 ? 3.0 : 1.5, v); };
    for (int i = 0; i < 20; ++i) {
        const double a = ang(rng);
        const Vec2 v = Vec2{std::cos(a), std::sin(a)} / glued_gauge({std::cos(a), std::sin(a)});
        const double brute = form.kappa() * oracle::brute_antinorm(glued_gauge, v, 200'000);
        CHECK(std::fabs(antinorm(glued, form, v) - 1.0) < 1e-6);
        CHECK(std::fabs(brute - 1.0) < 1e-6);
    }

    try {
        (void)calibrate_radon_scale(NormProfile::lp(3));
        FAIL("l3 accepted as Radon");
    } catch (const NotRadonError& e) {
        CHECK(e.deviation() > 1e-2);
    }
}

TEST_CASE("Birkhoff orthogonality, b-map, sm and cm") {
    const SymplecticForm unit{};
    const NormProfile e = NormProfile::euclidean();
    const NormProfile l3 = NormProfile::lp(3);
    CHECK(is_birkhoff(e, unit, {1, 0}, {0, 1}));
    CHECK_FALSE(is_birkhoff(e, unit, {1, 0}, {1, 1}));
    CHECK(is_birkhoff(l3, unit, {1, 0}, {0, 1}));
    CHECK_THROWS_AS((void)is_birkhoff(l3, unit, {0, 0}, {0, 1}), DomainError);

    const Vec2 b1 = b_map(e, unit, {1, 0});
    CHECK(b1.x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(b1.y == doctest::Approx(1.0));
    const Vec2 b2 = b_map(e, unit, {0, 2});
    CHECK(b2.x == doctest::Approx(-1.0));
    CHECK(std::fabs(b2.y) < 1e-14);
    const Vec2 b3 = b_map(l3, unit, {1, 0});
    CHECK(std::fabs(b3.x) < 1e-12);
    CHECK(b3.y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)b_map(l3, unit, {0, 0}), DomainError);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (const NormProfile& prof : {l3, NormProfile::lp(1.5), NormProfile::radon_glued(3), oracle::fourier_fixture()}) {
        for (int i = 0; i < 200; ++i) {
            const Vec2 x{u(rng), u(rng)}, y{u(rng), u(rng)};
            const Vec2 bx = b_map(prof, unit, x);
            CHECK(is_birkhoff(prof, unit, x, bx, 1e-9));
            CHECK(antinorm(prof, unit, bx) == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(unit(x, bx) > 0.0);
            CHECK(sm(prof, unit, x, bx) == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(std::fabs(sm(prof, unit, x, y)) <= 1.0 + 1e-12);
            CHECK(sm(prof, unit, 2.0 * x, 0.5 * y) == doctest::Approx(sm(prof, unit, x, y)).epsilon(1e-12));
            CHECK(std::fabs(cm(prof, unit, x, y) - sm(prof, unit, y, bx)) < 1e-12);
            CHECK(cm(prof, unit, x, x) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(sm(prof, unit, x, x) == 0.0);
        }
    }
    CHECK(sm(e, unit, {1, 0}, {0, 1}) == doctest::Approx(1.0));
    CHECK(std::fabs(cm(e, unit, {1, 0}, {0, 1})) < 1e-14);
}

TEST_CASE("gauge and anti-norm are norms") {
    const SymplecticForm unit{};
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-4, 4);
    for (const NormProfile& prof : oracle::fixture_profiles()) {
        for (int i = 0; i < 300; ++i) {
            const Vec2 x{u(rng), u(rng)}, y{u(rng), u(rng)};
            const double s = std::fabs(u(rng)) + 0.1;
            CHECK(prof.gauge(x + y) <= prof.gauge(x) + prof.gauge(y) + 1e-9);
            CHECK(antinorm(prof, unit, x + y) <= antinorm(prof, unit, x) + antinorm(prof, unit, y) + 1e-9);
            CHECK(prof.gauge(s * x) == doctest::Approx(s * prof.gauge(x)).epsilon(1e-12));
            CHECK(antinorm(prof, unit, s * x) == doctest::Approx(s * antinorm(prof, unit, x)).epsilon(1e-9));
        }
    }
}

TEST_CASE("validation report flags") {
    const ValidationReport e = validate_profile(NormProfile::euclidean());
    CHECK(e.ok());
    CHECK(e.nonvanishing_curvature);
    const ValidationReport l3 = validate_profile(NormProfile::lp(3));
    CHECK(l3.ok());
    CHECK_FALSE(l3.nonvanishing_curvature);
    const ValidationReport bad = validate_profile(NormProfile(RadialFourierNorm{1.0, {{2, 0.6, 0.0}}}));
    CHECK_FALSE(bad.strictly_convex);
    CHECK(bad.centrally_symmetric);
    CHECK(validate_profile(oracle::fourier_fixture()).ok());
}

TEST_CASE("anti-norm duality and reversal of Birkhoff orthogonality") {
    const SymplecticForm unit{};
    const NormProfile l3 = NormProfile::lp(3);
    const NormProfile anti = antinorm_profile(l3, unit);
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 200; ++i) {
        const Vec2 v{u(rng), u(rng)};
        CHECK(anti.gauge(v) == doctest::Approx(antinorm(l3, unit, v)).epsilon(1e-9));
        CHECK(std::fabs(antinorm(anti, unit, v) - l3.gauge(v)) < 1e-6 * l3.gauge(v));
        const Vec2 bx = b_map(l3, unit, v);
        CHECK(is_birkhoff(anti, unit, bx, v, 1e-6));
    }
}
