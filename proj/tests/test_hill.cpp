#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "minkowski/errors.hpp"
#include "minkowski/hill.hpp"
#include "minkowski/param.hpp"
#include "oracles.hpp"

using namespace minkowski;
using std::numbers::pi;

namespace {

// Linear image of a profile's unit circle under a unimodular matrix fixing
// the positive x-axis, so chart parameters start at corresponding points.
NormProfile sheared(const NormProfile& base, double k) {
    const auto map = [k](Vec2 v) { return Vec2{v.x + k * v.y, v.y}; };
    ClosedCurve c(2 * pi, 2048, [base, map](double t) {
        const CurveJet j = base.chart()(t);
        return CurveJet{map(j.p), map(j.d1), map(j.d2)};
    });
    return NormProfile(ReconstructedNorm{std::move(c)});
}

std::vector<Vec2> circle_polygon(double r, int n, Vec2 center = {}) {
    std::vector<Vec2> out;
    for (int i = 0; i < n; ++i) out.push_back(center + r * Vec2{std::cos(2 * pi * i / n), std::sin(2 * pi * i / n)});
    return out;
}

}  // namespace

TEST_CASE("expression grammar") {
    CHECK(Expression::parse("1")(0.3) == 1.0);
    CHECK(Expression::parse("2 + 3 * t")(2.0) == 8.0);
    CHECK(Expression::parse("(2 + 3) * t")(2.0) == 10.0);
    CHECK(Expression::parse("2^3^2")(0.0) == 512.0);
    CHECK(Expression::parse("-t^2")(3.0) == -9.0);
    CHECK(Expression::parse("1 + 0.5*sin(t)")(pi / 2) == doctest::Approx(1.5));
    CHECK(Expression::parse("cos(pi) + exp(0)")(0.0) == doctest::Approx(0.0));
    CHECK(Expression::parse("8 / 2 / 2")(0.0) == 2.0);
    CHECK(Expression::parse(" t - 1e-1 ")(1.0) == doctest::Approx(0.9));
    for (const char* bad : {"", "1 +", "sin t", "foo(1)", "(1", "1 1", "x", "2 * * 3"}) {
        INFO(bad);
        CHECK_THROWS_AS((void)Expression::parse(bad), ParseError);
    }
}

TEST_CASE("coefficient sources agree") {
    const HillCoefficient e = HillCoefficient::from_expression(Expression::parse("1 + 0.5*cos(2*t)"), pi, 1024);
    CHECK(e.c() == doctest::Approx(pi));
    CHECK(e(0.4) == doctest::Approx(1 + 0.5 * std::cos(0.8)));

    std::vector<double> t, f;
    for (int i = 0; i < 256; ++i) {
        t.push_back(2 * pi * i / 256);
        f.push_back(1 + 0.5 * std::cos(2 * t.back()));
    }
    const HillCoefficient s = HillCoefficient::from_samples(t, f, std::nullopt, 1024);
    CHECK(s.c() == doctest::Approx(pi));
    for (double x : {0.1, 1.7, 4.0}) CHECK(std::fabs(s(x) - e(x)) < 1e-6);
    CHECK(std::fabs(discriminant(s.equation(), 1.0) - discriminant(e.equation(), 1.0)) < 1e-6);
    CHECK_THROWS_AS((void)HillCoefficient::from_samples(std::vector<double>{0, 1, 3, 4}, std::vector<double>{1, 1, 1, 1}),
                    ParseError);

    // A density table reproduces the equation it was exported from.
    const HillCoefficient g = hill_from_geometry(NormProfile::lp(3), SymplecticForm{}, 1024);
    const HillCoefficient back = HillCoefficient::from_density_table(g.density_table(), g.equation().grid_period());
    for (double l : {0.5, 1.0, 3.3}) {
        const Monodromy a = monodromy(g.equation(), l), b = monodromy(back.equation(), l);
        CHECK(std::fabs(a.m11 - b.m11) + std::fabs(a.m12 - b.m12) + std::fabs(a.m21 - b.m21) +
                  std::fabs(a.m22 - b.m22) < 1e-12);
    }
    CHECK(std::fabs(back.period() - g.period()) < 1e-8);
}

TEST_CASE("coefficient of a geometry") {
    const HillCoefficient eu = hill_from_geometry(NormProfile::euclidean(), SymplecticForm{});
    CHECK(eu.c() == doctest::Approx(pi).epsilon(1e-12));
    const ScalarPeriodic fe = eu.samples();
    CHECK(fe.max() - 1.0 < 1e-9);
    CHECK(1.0 - fe.min() < 1e-9);

    const ScalarPeriodic fl = hill_from_geometry(NormProfile::ellipse(2, 0.5), SymplecticForm{}).samples();
    CHECK(std::fabs(fl.max() - 1.0) < 1e-6);
    CHECK(std::fabs(fl.min() - 1.0) < 1e-6);

    const ScalarPeriodic f3 = hill_from_geometry(NormProfile::lp(3), SymplecticForm{}).samples();
    double lo = INFINITY, hi = 0;
    for (double v : f3.values()) {
        CHECK(v > 0.0);
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    CHECK(hi - lo > 0.01);
}

TEST_CASE("closed-form solutions") {
    const ClosedFormSolutions e = hill_closed_form_solutions(NormProfile::euclidean(), SymplecticForm{}, 512);
    for (std::size_t i = 0; i < e.u1.size(); ++i) {
        const double t = e.u1.param(i);
        CHECK(std::fabs(e.u1[i] - std::cos(t)) < 1e-9);
        CHECK(std::fabs(e.u2[i] - std::sin(t)) < 1e-9);
        CHECK(std::fabs(e.du1[i] + std::sin(t)) < 1e-9);
    }

    for (const NormProfile& prof : oracle::fixture_profiles()) {
        INFO(prof.describe());
        const ClosedFormCheck c = closed_form_check(prof, measure_radon_scale(prof).form, 2048);
        CHECK(std::fabs(c.initial_u1 - 1.0) < 1e-12);
        CHECK(std::fabs(c.initial_du1) < 1e-12);
        CHECK(std::fabs(c.initial_u2) < 1e-12);
        CHECK(std::fabs(c.initial_du2 - 1.0) < 1e-12);
        CHECK(c.equation_residual < 1e-6);
        CHECK(c.rk4_mismatch < 1e-6);
        CHECK(c.wronskian_deviation < 1e-8);
        CHECK(c.wronskian_drift < 1e-9);
        CHECK(c.decomposition_residual < 1e-7);
    }
    CHECK(wronskian(1, 0, 0, 1) == 1.0);
}

TEST_CASE("m(t)") {
    const auto m_of = [](const NormProfile& p) {
        return m_function(antinorm_arclength_param(p, SymplecticForm{}, 1024), p, SymplecticForm{});
    };
    const ScalarPeriodic me = m_of(NormProfile::euclidean());
    CHECK(std::fabs(me.min() - pi / 2) < 1e-9);
    CHECK(std::fabs(me.max() - pi / 2) < 1e-9);
    const ScalarPeriodic ml = m_of(NormProfile::ellipse(2, 0.5));
    CHECK(std::fabs(ml.min() - pi / 2) < 1e-6);
    CHECK(std::fabs(ml.max() - pi / 2) < 1e-6);
    CHECK(m_of(NormProfile::lp(3)).stddev() > 1e-3);

    const NormProfile base = oracle::fourier_fixture();
    const ScalarPeriodic a = m_of(base), b = m_of(sheared(base, 0.3));
    REQUIRE(a.size() == b.size());
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
    CHECK(worst < 1e-6);
    CHECK(a.stddev() > 1e-3);
}

TEST_CASE("Radon and Euclidean diagnostics") {
    const auto diag = [](const NormProfile& p) { return diagnostics(p, measure_radon_scale(p).form, 2048); };
    const DiagnosticsReport e = diag(NormProfile::euclidean());
    CHECK(e.is_euclidean);
    CHECK(e.is_radon);
    CHECK(e.xi_width() < 1e-8);
    CHECK(e.double_m_deviation < 1e-8);
    CHECK(std::fabs(e.xi_min - 1.0) < 1e-8);

    const DiagnosticsReport g = diag(NormProfile::radon_glued(3));
    CHECK(g.is_radon);
    CHECK(!g.is_euclidean);
    CHECK(g.m_std > 1e-3);

    const DiagnosticsReport l = diag(NormProfile::lp(3));
    CHECK(!l.is_radon);
    CHECK(!l.is_euclidean);
    CHECK(l.xi_width() > 1e-2);
    CHECK(l.double_m_deviation > 1e-2);
    CHECK(l.shift_residual > 1e-2);

    for (const NormProfile& p : oracle::fixture_profiles()) {
        INFO(p.describe());
        CHECK(diag(p).radon_criteria_agree());
    }
}

TEST_CASE("reconstruction verdicts") {
    const ReconstructionReport one = reconstruct_geometry(HillCoefficient::from_expression(Expression::parse("1"), pi));
    REQUIRE(one.accepted());
    CHECK(!one.lambda1);
    CHECK(one.wronskian_deviation < 1e-6);
    CHECK(one.f_residual < 1e-5);
    const auto circ = circle_polygon(1.0, 8192);
    CHECK(normalized_hausdorff(one.phi.points(), circ) < 1e-6);
    CHECK(normalized_hausdorff(one.psi.points(), circ) < 1e-6);

    const ReconstructionReport wide =
        reconstruct_geometry(HillCoefficient::from_expression(Expression::parse("1"), 2 * pi));
    CHECK(!wide.accepted());
    REQUIRE(wide.reason.has_value());
    CHECK(*wide.reason == RejectReason::antiperiodic_below_1);
    REQUIRE(wide.antiperiodic_witness.has_value());
    CHECK(std::fabs(*wide.antiperiodic_witness - 0.25) < 1e-6);

    // f = 1/4 on [0, pi]: the first eigenvalue 4 is double, so 4 f induces a geometry.
    const ReconstructionReport quarter =
        reconstruct_geometry(HillCoefficient::from_expression(Expression::parse("0.25"), pi));
    REQUIRE(quarter.accepted());
    REQUIRE(quarter.lambda1.has_value());
    CHECK(std::fabs(*quarter.lambda1 - 4.0) < 1e-6);

    const ReconstructionReport neg =
        reconstruct_geometry(HillCoefficient::from_expression(Expression::parse("sin(t)"), pi));
    REQUIRE(neg.reason.has_value());
    CHECK(*neg.reason == RejectReason::nonpositive_f);

    // 1 + sin(t)/2 on c = pi: the verdict follows the monodromy, checked by an independent integrator.
    const auto f = [](double t) { return 1 + 0.5 * std::sin(t); };
    const ReconstructionReport s =
        reconstruct_geometry(HillCoefficient::from_expression(Expression::parse("1 + 0.5*sin(t)"), pi));
    const double dist_oracle = oracle::hill_trace(f, 1.0, pi, 20000) + 2.0;
    CHECK(std::fabs(dist_oracle) > 1e-3);  // M(1) is not -I
    REQUIRE(s.reason.has_value());
    CHECK(*s.reason == RejectReason::antiperiodic_below_1);
    REQUIRE(s.antiperiodic_witness.has_value());
    CHECK(*s.antiperiodic_witness < 1.0);
    CHECK(std::fabs(oracle::hill_trace(f, *s.antiperiodic_witness, pi, 20000) + 2.0) < 1e-6);
    CHECK(!s.log.empty());
}

TEST_CASE("round trip through a geometry") {
    for (const NormProfile& p : {NormProfile::lp(3), oracle::fourier_fixture()}) {
        INFO(p.describe());
        const HillCoefficient f = hill_from_geometry(p, SymplecticForm{});
        const ReconstructionReport r = reconstruct_geometry(f);
        REQUIRE(r.accepted());
        CHECK(r.wronskian_deviation < 1e-6);
        CHECK(r.f_residual < 1e-5);
        CHECK(r.closure_gap < 1e-8);
        CHECK(std::fabs(r.winding - 1.0) < 1e-9);
        const RoundTripReport rt = round_trip(r, f, p);
        CHECK(rt.hausdorff < 1e-4);
        CHECK(rt.f_mismatch < 1e-5);
        CHECK(rt.period_mismatch < 1e-8);
    }
}

TEST_CASE("affine normalization and Hausdorff distance") {
    CHECK(hausdorff_distance(circle_polygon(1.0, 2000), circle_polygon(1.1, 2000)) == doctest::Approx(0.1).epsilon(1e-4));

    // A rotated, translated ellipse normalizes to the disc of equal area.
    const double a = 2.0, b = 0.5, rot = 0.4;
    std::vector<Vec2> ell;
    for (int i = 0; i < 4000; ++i) {
        const double t = 2 * pi * i / 4000;
        const Vec2 q{a * std::cos(t), b * std::sin(t)};
        ell.push_back(Vec2{std::cos(rot) * q.x - std::sin(rot) * q.y + 3, std::sin(rot) * q.x + std::cos(rot) * q.y - 1});
    }
    const auto n = affine_normalize(ell);
    for (const Vec2 v : n) CHECK(std::fabs(euclid(v) - 1.0) < 1e-5);
    CHECK(std::fabs(oracle::shoelace(n) - oracle::shoelace(ell)) < 1e-9);

    // The unit square and a rotated copy are identical after normalization.
    const std::vector<Vec2> sq{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    std::vector<Vec2> dense, turned;
    for (std::size_t i = 0; i < 4; ++i) {
        for (int k = 0; k < 100; ++k) dense.push_back(sq[i] + (k / 100.0) * (sq[(i + 1) % 4] - sq[i]));
    }
    for (const Vec2 v : dense) turned.push_back({std::cos(0.3) * v.x - std::sin(0.3) * v.y, std::sin(0.3) * v.x + std::cos(0.3) * v.y});
    CHECK(normalized_hausdorff(dense, turned) < 1e-9);
    CHECK(normalized_hausdorff(dense, circle_polygon(1.0, 400)) > 0.05);
}

TEST_CASE("curvature identity") {
    const CurvatureIdentityReport e = curvature_identity_check(NormProfile::euclidean(), SymplecticForm{});
    CHECK(e.max_relative_residual < 1e-10);
    CHECK(e.excluded_nodes == 0);
    CHECK(e.eigen_consistent);
    for (const NormProfile& p : {NormProfile::lp(3), oracle::fourier_fixture()}) {
        INFO(p.describe());
        const CurvatureIdentityReport r = curvature_identity_check(p, SymplecticForm{});
        CHECK(r.max_relative_residual < 1e-4);
        CHECK(r.period_mismatch < 1e-8);
        CHECK(r.excluded_nodes < 16);
        CHECK(r.first_is_double);
        CHECK(r.eigen_consistent);
    }
}

TEST_CASE("reparametrization probe") {
    const HillCoefficient one = HillCoefficient::from_expression(Expression::parse("1"), pi);
    const double alphas[] = {1.0, 2.0};
    const ReparamProbeReport r = reparam_probe(one, 4.0, alphas);
    CHECK(r.f_constant);
    CHECK(r.residuals[0] == doctest::Approx(3.0));
    CHECK(r.residuals[1] < 1e-12);
    CHECK(r.best_alpha == 2.0);
    REQUIRE(r.euclidean_consistent.has_value());
    CHECK(*r.euclidean_consistent);
    CHECK(!r.contradiction);
    CHECK_THROWS_AS((void)reparam_probe(one, 1.0, alphas), DomainError);

    const HillCoefficient f3 = hill_from_geometry(NormProfile::lp(3), SymplecticForm{}, 2048);
    const double l2 = [&] {
        const Spectrum s = find_eigenvalues(f3.equation(), 10.0);
        for (const SpectrumEntry& e : s.entries) {
            if (e.lambda > 1.5) return e.lambda;
        }
        return 0.0;
    }();
    REQUIRE(l2 > 1.5);
    std::vector<double> grid;
    for (int k = 1; k <= 40; ++k) grid.push_back(0.1 * k);
    grid.push_back(std::sqrt(l2));
    const ReparamProbeReport p = reparam_probe(f3, l2, grid, 1024);
    CHECK(!p.f_constant);
    CHECK(p.min_residual > 1e-3);
    CHECK(!p.contradiction);
    CHECK(!p.euclidean_consistent.has_value());
}
