#include <doctest.h>

#include <cmath>
#include <numbers>

#include "minkowski/errors.hpp"
#include "minkowski/param.hpp"
#include "oracles.hpp"

using namespace minkowski;
using std::numbers::pi;

namespace {

// Length of the unit circle in its own norm: polygon length over polar
// samples with one Richardson step.
double oracle_self_length(const std::function<double(Vec2)>& g) {
    const auto poly = [&](int n) {
        double acc = 0.0;
        Vec2 prev{1.0 / g({1, 0}), 0.0};
        for (int i = 1; i <= n; ++i) {
            const double a = 2 * pi * i / n;
            const Vec2 d{std::cos(a), std::sin(a)};
            const Vec2 p = d / g(d);
            acc += g(p - prev);
            prev = p;
        }
        return acc;
    };
    const double l1 = poly(200000), l2 = poly(400000);
    return l2 + (l2 - l1) / 3.0;
}

double lp_ball_area(double p) { return 4.0 * std::pow(std::tgamma(1.0 + 1.0 / p), 2) / std::tgamma(1.0 + 2.0 / p); }

}  // namespace

TEST_CASE("boundary sampling") {
    const ClosedCurve c = boundary_curve(NormProfile::euclidean(), 4);
    const Vec2 expect[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int i = 0; i < 4; ++i) {
        CHECK(std::fabs(c[static_cast<std::size_t>(i)].x - expect[i].x) < 1e-15);
        CHECK(std::fabs(c[static_cast<std::size_t>(i)].y - expect[i].y) < 1e-15);
    }
    const ClosedCurve l3 = boundary_curve(NormProfile::lp(3), 4096);
    for (Vec2 p : l3.points()) CHECK(std::fabs(oracle::lp(3, p) - 1.0) < 1e-10);
    const ClosedCurve el = boundary_curve(NormProfile::ellipse(2, 0.5), 64);
    CHECK(el[0].x == doctest::Approx(2.0));
    CHECK(el[0].y == 0.0);
    CHECK(l3.orientation() == 1);
    CHECK_THROWS_AS((void)boundary_curve(NormProfile::lp(3), 2), DomainError);
}

TEST_CASE("self-circumference") {
    CHECK(circle_length(NormProfile::euclidean()).length == doctest::Approx(2 * pi).epsilon(1e-13));
    CHECK(std::fabs(circle_length(NormProfile::ellipse(2, 0.5)).length - 2 * pi) < 1e-8);
    CHECK(std::fabs(circle_length(NormProfile::ellipse(3, 0.7)).length - 2 * pi) < 1e-8);
    for (double p : {1.5, 3.0, 5.0}) {
        const double got = circle_length(NormProfile::lp(p)).length;
        CHECK(got > 6.0);
        CHECK(got < 8.0);
        CHECK(std::fabs(got - oracle_self_length([p](Vec2 v) { return oracle::lp(p, v); })) < 1e-8);
        CHECK(circle_length(NormProfile::lp(p)).half_length == doctest::Approx(got / 2));
    }
}

TEST_CASE("arc-length parametrization") {
    const NormProfile e = NormProfile::euclidean();
    const ClosedCurve phi_e = arclength_param(boundary_curve(e, 1024), e);
    CHECK(phi_e.period() == doctest::Approx(2 * pi).epsilon(1e-13));
    for (std::size_t i = 0; i < phi_e.size(); i += 37) {
        const double t = phi_e.param(i);
        CHECK(std::fabs(phi_e[i].x - std::cos(t)) < 1e-12);
        CHECK(std::fabs(phi_e[i].y - std::sin(t)) < 1e-12);
    }
    for (const NormProfile& prof : {NormProfile::lp(3), NormProfile::lp(1.5), oracle::fourier_fixture()}) {
        const ClosedCurve phi = arclength_param(boundary_curve(prof, 4096), prof);
        CHECK(std::fabs(phi.period() - circle_length(prof).length) < 1e-8);
        double worst = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i) worst = std::max(worst, std::fabs(prof.gauge(phi.jet_at(i).d1) - 1.0));
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("dual parametrization") {
    const SymplecticForm unit{};
    const NormProfile e = NormProfile::euclidean();
    const ClosedCurve psi_e = dual_param(arclength_param(boundary_curve(e, 512), e), unit);
    for (std::size_t i = 0; i < psi_e.size(); i += 17) {
        const double t = psi_e.param(i);
        CHECK(std::fabs(psi_e[i].x + std::sin(t)) < 1e-12);
        CHECK(std::fabs(psi_e[i].y - std::cos(t)) < 1e-12);
    }

    const NormProfile l3 = NormProfile::lp(3);
    const ClosedCurve phi = arclength_param(boundary_curve(l3, 2048), l3);
    const ClosedCurve psi = dual_param(phi, unit);
    const ClosedCurve back = dual_param(psi, unit);
    for (std::size_t i = 0; i < psi.size(); i += 7) {
        const CurveJet j = psi.jet_at(i);
        CHECK(std::fabs(antinorm(l3, unit, j.p) - 1.0) < 1e-6);
        CHECK(std::fabs(unit(j.p, j.d1) - l3.gauge(j.d1)) < 1e-6);
        CHECK(std::fabs(det(j.d1, phi[i])) < 1e-9);
        CHECK(euclid(back[i] + phi[i]) < 1e-5);
    }

    const NormProfile glued = NormProfile::radon_glued(3);
    const SymplecticForm cal = calibrate_radon_scale(glued);
    const ClosedCurve phi_g = arclength_param(boundary_curve(glued, 2048), glued);
    const ClosedCurve psi_g = dual_param(phi_g, cal);
    for (std::size_t i = 1; i < psi_g.size(); i += 5) {
        if (i % 512 == 0) continue;  // junction samples
        CHECK(euclid(psi_g[i] - phi_g.jet_at(i).d1) < 1e-6);
        CHECK(std::fabs(glued.gauge(psi_g[i]) - 1.0) < 1e-6);
    }
}

TEST_CASE("anti-circle parametrized by twice the sector area") {
    const SymplecticForm unit{};
    const ClosedCurve psi_e = antinorm_arclength_param(NormProfile::euclidean(), unit);
    CHECK(psi_e.period() == doctest::Approx(2 * pi).epsilon(1e-12));

    const NormProfile l3 = NormProfile::lp(3);
    const ClosedCurve psi = antinorm_arclength_param(l3, unit);
    CHECK(std::fabs(psi.period() - 2.0 * lp_ball_area(1.5)) < 1e-6);
    std::vector<Vec2> dense(1 << 16);
    for (std::size_t i = 0; i < dense.size(); ++i) {
        const double a = 2 * pi * static_cast<double>(i) / static_cast<double>(dense.size());
        const Vec2 d{std::cos(a), std::sin(a)};
        dense[i] = d / oracle::lp(1.5, {-d.y, d.x});
    }
    CHECK(std::fabs(psi.period() - 2.0 * oracle::shoelace(dense)) < 1e-6);
    const double half = psi.period() / 2;
    for (std::size_t i = 0; i < psi.size(); i += 13) {
        const CurveJet j = psi.jet_at(i);
        CHECK(unit(j.p, j.d1) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::fabs(l3.gauge(j.d1) - 1.0) < 1e-8);
        CHECK(euclid(psi(psi.param(i) + half) + j.p) < 1e-8);
        CHECK(std::fabs(antinorm(l3, unit, j.p) - 1.0) < 1e-9);
    }
}

TEST_CASE("radius of curvature") {
    const NormProfile e = NormProfile::euclidean();
    const ClosedCurve phi = arclength_param(boundary_curve(e, 256), e);
    std::vector<Vec2> twice, shifted;
    for (Vec2 p : phi.points()) {
        twice.push_back(2.0 * p);
        shifted.push_back(p + Vec2{5, 0});
    }
    const ScalarPeriodic r1 = radius_of_curvature(phi, phi);
    const ScalarPeriodic r2 = radius_of_curvature(ClosedCurve(phi.period(), twice), phi);
    const ScalarPeriodic r3 = radius_of_curvature(ClosedCurve(phi.period(), shifted), phi);
    for (std::size_t i = 0; i < 256; ++i) {
        CHECK(r1[i] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r2[i] == doctest::Approx(2.0).epsilon(1e-8));
        CHECK(r3[i] == doctest::Approx(1.0).epsilon(1e-8));
    }
    std::vector<Vec2> ell;
    for (Vec2 p : phi.points()) ell.push_back({2 * p.x, p.y});
    CHECK_THROWS_AS((void)radius_of_curvature(ClosedCurve(phi.period(), ell), phi), ParametrizationMismatch);
}

TEST_CASE("Minkowski curvature in the anti-norm") {
    const SymplecticForm unit{};
    for (const NormProfile& prof : {NormProfile::euclidean(), NormProfile::ellipse(2, 0.5)}) {
        const ScalarPeriodic km = minkowski_curvature_antinorm(prof, unit, 512);
        CHECK(km.period() == doctest::Approx(2 * pi).epsilon(1e-9));
        for (double v : km.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    }
}
