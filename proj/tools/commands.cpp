#include "commands.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <cmath>

#include "minkowski/cycloid.hpp"
#include "minkowski/errors.hpp"
#include "minkowski/expression.hpp"
#include "minkowski/hill.hpp"
#include "minkowski/io.hpp"
#include "minkowski/norm.hpp"
#include "minkowski/param.hpp"
#include "minkowski/profile_spec.hpp"
#include "minkowski/spectral.hpp"

namespace minkowski::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr double svg_size = 800.0;
constexpr std::size_t svg_max_points = 1024;

CommandResult reported(json report) {
    CommandResult r;
    r.report = std::move(report);
    return r;
}

NormProfile load_profile(const RunConfig& config) {
    if (!config.profile) throw ParseError("--profile is required");
    return parse_profile_spec(*config.profile);
}

// Files requested by --out, filtered by --formats.
class Artifacts {
public:
    explicit Artifacts(const RunConfig& config) : config_(config) {}

    void write(const std::string& name, const std::string& format, const std::string& text) {
        if (!config_.out || !config_.formats.contains(format)) return;
        write_text_file(*config_.out / name, text);
        written_.push_back(name);
    }
    [[nodiscard]] json list() const { return written_; }

private:
    const RunConfig& config_;
    std::vector<std::string> written_;
};

std::vector<Vec2> thinned(std::span<const Vec2> pts) {
    const std::size_t stride = std::max<std::size_t>(1, pts.size() / svg_max_points);
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < pts.size(); i += stride) out.push_back(pts[i]);
    return out;
}

SvgDocument::Bounds square_bounds(std::initializer_list<std::span<const Vec2>> sets) {
    double r = 0.0;
    for (const auto& s : sets) {
        for (Vec2 p : s) r = std::max({r, std::fabs(p.x), std::fabs(p.y)});
    }
    r = r > 0.0 ? 1.1 * r : 1.0;
    return {-r, r, -r, r};
}

std::string curve_csv(const ClosedCurve& curve) {
    CsvWriter csv({"t", "x", "y"});
    for (std::size_t i = 0; i < curve.size(); ++i) csv.add_row({curve.param(i), curve[i].x, curve[i].y});
    return csv.str();
}

json validation_json(const ValidationReport& v) {
    return json{{"ok", v.ok()},
                {"parameters_in_range", v.parameters_in_range},
                {"centrally_symmetric", v.centrally_symmetric},
                {"strictly_convex", v.strictly_convex},
                {"nonvanishing_curvature", v.nonvanishing_curvature},
                {"symmetry_residual", v.symmetry_residual},
                {"min_curvature", v.min_curvature},
                {"messages", v.messages}};
}

void require_valid(const NormProfile& profile, const ValidationReport& v) {
    if (v.ok()) return;
    std::string msg = "profile " + profile.describe() + " failed validation";
    for (const auto& m : v.messages) msg += "; " + m;
    throw ProfileError(msg);
}

std::string parity_code(Parity p) { return p == Parity::periodic ? "P" : "A"; }

std::string format_short(double v) {
    std::array<char, 32> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.10g", v);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

// Eigenvalue of the profile within lambda_tol of the request, or
// LookupFailure naming the neighbours.
SpectrumEntry resolve_eigenvalue(const SLCoefficients& coeffs, const NormProfile& profile, double lambda,
                                 double lambda_tol) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("--lambda must be a nonnegative number");
    const Spectrum spectrum = find_eigenvalues(coeffs, 2.0 * lambda + 4.0);
    const double tol = lambda_tol * std::max(1.0, lambda);
    const SpectrumEntry* below = nullptr;
    const SpectrumEntry* above = nullptr;
    for (const SpectrumEntry& e : spectrum.entries) {
        if (std::fabs(e.lambda - lambda) <= tol) return e;
        if (e.lambda < lambda) below = &e;
        if (e.lambda > lambda && above == nullptr) above = &e;
    }
    std::string msg = "lambda " + format_short(lambda) + " is not an eigenvalue of " + profile.describe() +
                      "; nearest eigenvalues:";
    if (below) msg += " " + format_short(below->lambda) + " (" + parity_code(below->parity) + ")";
    if (above) msg += " " + format_short(above->lambda) + " (" + parity_code(above->parity) + ")";
    throw LookupFailure(msg);
}

struct CoefficientSource {
    HillCoefficient f;
    json description;
};

CoefficientSource coefficient_from_csv(const RunConfig& config) {
    const CsvTable table = CsvTable::read(*config.samples);
    const json origin = config.samples->string();
    if (table.has_column("alpha")) {
        const auto s = table.column("s");
        const auto alpha = table.column("alpha");
        const auto beta = table.column("beta");
        const auto speed = table.column("speed");
        if (s.size() < 8 || s.size() % 2 != 0) throw ParseError("density table needs an even number of rows, at least 8");
        const double half_step = s[1] - s[0];
        for (std::size_t i = 1; i < s.size(); ++i) {
            if (std::fabs(s[i] - s[0] - half_step * static_cast<double>(i)) > 1e-9 * (1.0 + std::fabs(s[i]))) {
                throw ParseError("density table rows must be uniformly spaced in s");
            }
        }
        std::vector<FormSample> rows;
        rows.reserve(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) rows.push_back({alpha[i], beta[i], speed[i]});
        return {HillCoefficient::from_density_table(rows, half_step * static_cast<double>(s.size())),
                {{"kind", "density-table"}, {"file", origin}, {"rows", s.size()}}};
    }
    const auto t = table.column("t");
    const auto f = table.column("f");
    return {HillCoefficient::from_samples(t, f, config.c, config.resolution),
            {{"kind", "samples"}, {"file", origin}, {"rows", t.size()}}};
}

}  // namespace

CommandResult run_info(const RunConfig& config) {
    const NormProfile profile = load_profile(config);
    const ValidationReport validation = validate_profile(profile);
    require_valid(profile, validation);
    const CircleLength length = circle_length(profile);
    const RadonCalibration cal = measure_radon_scale(profile);
    const DiagnosticsReport diag = diagnostics(profile, cal.form, config.resolution);

    json report;
    report["command"] = "info";
    report["profile"] = profile.describe();
    report["validation"] = validation_json(validation);
    report["length"] = length.length;
    report["half_length"] = length.half_length;
    report["calibration"] = {{"kappa", cal.form.kappa()}, {"residual", cal.residual}};
    report["diagnostics"] = {{"m_mean", diag.m.mean()},
                             {"m_std", diag.m_std},
                             {"xi_min", diag.xi_min},
                             {"xi_max", diag.xi_max},
                             {"double_m_deviation", diag.double_m_deviation},
                             {"shift_residual", diag.shift_residual},
                             {"xi_constant", diag.xi_constant},
                             {"double_m_holds", diag.double_m_holds},
                             {"shift_holds", diag.shift_holds},
                             {"criteria_agree", diag.radon_criteria_agree()}};
    report["is_euclidean"] = diag.is_euclidean;
    report["is_radon"] = diag.is_radon;
    return reported(std::move(report));
}

CommandResult run_spectrum(const RunConfig& config) {
    const NormProfile profile = load_profile(config);
    require_valid(profile, validate_profile(profile));
    if (!(config.lambda_max > 1.0)) throw DomainError("--lambda-max must exceed 1");
    const SLCoefficients coeffs = SLCoefficients::from_profile(profile, SymplecticForm{}, config.resolution);

    Spectrum spectrum;
    try {
        spectrum = find_eigenvalues(coeffs, config.lambda_max);
    } catch (const IntegrationBlowup& e) {
        throw IntegrationBlowup(std::string(e.what()) + " (scanning lambda in [0, " + format_short(config.lambda_max) +
                                "])");
    }

    json rows = json::array();
    CsvWriter csv({"lambda", "parity", "double", "residual", "flagged"});
    for (const SpectrumEntry& e : spectrum.entries) {
        rows.push_back({{"lambda", e.lambda},
                        {"parity", parity_code(e.parity)},
                        {"double", e.is_double},
                        {"residual", e.residual},
                        {"flagged", e.flagged}});
        csv.add_row({e.lambda, parity_code(e.parity), e.is_double ? 1.0 : 0.0, e.residual, e.flagged ? 1.0 : 0.0});
    }

    Artifacts artifacts(config);
    artifacts.write("spectrum.csv", "csv", csv.str());
    if (config.out && config.formats.contains("svg")) {
        // Discriminant on [0, lambda_max], clipped to [-3, 3] for display.
        constexpr int samples = 800;
        std::vector<Vec2> curve;
        for (int i = 0; i <= samples; ++i) {
            const double lambda = config.lambda_max * i / samples;
            curve.push_back({lambda, std::clamp(discriminant(coeffs, lambda), -3.0, 3.0)});
        }
        SvgDocument svg({0.0, config.lambda_max, -3.2, 3.2}, svg_size, svg_size / 2);
        svg.line({0.0, 2.0}, {config.lambda_max, 2.0}, "#888888", 1.0, true);
        svg.line({0.0, -2.0}, {config.lambda_max, -2.0}, "#888888", 1.0, true);
        svg.line({0.0, 0.0}, {config.lambda_max, 0.0}, "#cccccc");
        svg.polyline(curve, false, "#1f77b4", 1.5);
        for (const SpectrumEntry& e : spectrum.entries) {
            svg.circle({e.lambda, parity_sign(e.parity) * 2.0}, 4.0, e.is_double ? "#d62728" : "#2ca02c");
        }
        artifacts.write("discriminant.svg", "svg", svg.str());
    }

    json report;
    report["command"] = "spectrum";
    report["profile"] = profile.describe();
    report["lambda_max"] = config.lambda_max;
    report["steps"] = config.resolution;
    report["eigenvalues"] = rows;
    report["artifacts"] = artifacts.list();
    return reported(std::move(report));
}

CommandResult run_reconstruct(const RunConfig& config) {
    const int sources = (config.expr ? 1 : 0) + (config.samples ? 1 : 0) + (config.profile ? 1 : 0);
    if (sources != 1) throw ParseError("reconstruct needs exactly one of --expr, --samples, --profile");

    std::optional<NormProfile> original;
    if (config.compare) original = parse_profile_spec(*config.compare);

    std::optional<CoefficientSource> source;
    if (config.expr) {
        if (!config.c) throw ParseError("--expr requires --c");
        const Expression e = Expression::parse(*config.expr);
        source = CoefficientSource{HillCoefficient::from_expression(e, *config.c, config.resolution),
                                   {{"kind", "expression"}, {"expr", e.text()}}};
    } else if (config.samples) {
        source = coefficient_from_csv(config);
    } else {
        const NormProfile profile = load_profile(config);
        require_valid(profile, validate_profile(profile));
        source = CoefficientSource{hill_from_geometry(profile, SymplecticForm{}, config.resolution),
                                   {{"kind", "profile"}, {"profile", profile.describe()}}};
        if (!original) original = profile;
    }
    const HillCoefficient& f = source->f;
    const ReconstructionReport r = reconstruct_geometry(f);

    json report;
    report["command"] = "reconstruct";
    report["source"] = source->description;
    report["c"] = f.c();
    report["verdict"] = to_string(r.verdict);
    report["reason"] = r.reason ? json(to_string(*r.reason)) : json(nullptr);
    report["lambda1"] = r.lambda1 ? json(*r.lambda1) : json(nullptr);
    report["monodromy_distance"] = r.monodromy_distance;
    report["antiperiodic_witness"] = r.antiperiodic_witness ? json(*r.antiperiodic_witness) : json(nullptr);
    if (r.accepted()) {
        report["closure_gap"] = r.closure_gap;
        report["symmetry_residual"] = r.symmetry_residual;
        report["wronskian_deviation"] = r.wronskian_deviation;
        report["f_residual"] = r.f_residual;
        report["winding"] = r.winding;
    }
    report["log"] = r.log;

    Artifacts artifacts(config);
    if (r.accepted()) {
        if (original) {
            const RoundTripReport rt = round_trip(r, f, *original);
            report["round_trip"] = {{"reference", original->describe()},
                                    {"hausdorff", rt.hausdorff},
                                    {"f_mismatch", rt.f_mismatch},
                                    {"period_mismatch", rt.period_mismatch},
                                    {"excluded_nodes", rt.excluded_nodes}};
        }
        artifacts.write("psi.csv", "csv", curve_csv(r.psi));
        artifacts.write("phi.csv", "csv", curve_csv(r.phi));
        if (config.out && config.formats.contains("svg")) {
            const auto psi = thinned(r.psi.points());
            const auto phi = thinned(r.phi.points());
            SvgDocument svg(square_bounds({psi, phi}), svg_size, svg_size);
            svg.line({-1e9, 0.0}, {1e9, 0.0}, "#dddddd");
            svg.line({0.0, -1e9}, {0.0, 1e9}, "#dddddd");
            svg.polyline(phi, true, "#000000", 1.5);
            svg.polyline(psi, true, "#1f77b4", 1.5);
            artifacts.write("reconstruct.svg", "svg", svg.str());
        }
    }
    report["artifacts"] = artifacts.list();
    return reported(std::move(report));
}

namespace {

const std::vector<std::string> show_options{"circle", "anticircle", "cycloid", "evolute", "bi-evolute"};

CommandResult draw(const RunConfig& config, const std::string& command, std::vector<std::string> show) {
    for (const auto& s : show) {
        if (std::find(show_options.begin(), show_options.end(), s) == show_options.end()) {
            throw ParseError("--show: unknown curve '" + s + "' (circle, anticircle, cycloid, evolute, bi-evolute)");
        }
    }
    const auto wants = [&](const std::string& s) { return std::find(show.begin(), show.end(), s) != show.end(); };
    const bool need_cycloid = wants("cycloid") || wants("evolute") || wants("bi-evolute");

    const NormProfile profile = load_profile(config);
    require_valid(profile, validate_profile(profile));
    const RadonCalibration cal = measure_radon_scale(profile);
    const ClosedCurve circle = boundary_curve(profile, config.resolution);

    json report;
    report["command"] = command;
    report["profile"] = profile.describe();
    report["kappa"] = cal.form.kappa();
    report["calibration_residual"] = cal.residual;

    Artifacts artifacts(config);
    std::vector<std::pair<std::vector<Vec2>, std::string>> layers;
    layers.emplace_back(thinned(circle.points()), "#000000");
    artifacts.write("circle.csv", "csv", curve_csv(circle));

    if (wants("anticircle")) {
        const double step = BoundaryChart::period() / config.resolution;
        std::vector<Vec2> pts;
        double deviation = 0.0;
        for (int i = 0; i < config.resolution; ++i) {
            const Vec2 p = anticircle_jet(profile, cal.form, step * i).p;
            deviation = std::max(deviation, std::fabs(gauge(profile, p) - 1.0));
            pts.push_back(p);
        }
        report["anticircle_max_gauge_deviation"] = deviation;
        const ClosedCurve anticircle(BoundaryChart::period(), pts);
        artifacts.write("anticircle.csv", "csv", curve_csv(anticircle));
        layers.emplace_back(thinned(pts), "#1f77b4");
    }

    if (need_cycloid) {
        if (!config.lambda) throw ParseError("--lambda is required to draw a cycloid");
        const SLCoefficients coeffs = SLCoefficients::from_profile(profile, SymplecticForm{}, config.resolution);
        const SpectrumEntry e = resolve_eigenvalue(coeffs, profile, *config.lambda, config.lambda_tol);
        const SLSolution rho = eigenfunction(coeffs, e.lambda, e.parity).front();
        const ClosedCurve phi = coeffs.phi();
        const Cycloid cyc = cycloid_from_radius(rho, phi, {});
        const ClosureVerdict verdict = closure_check(coeffs, e.lambda, rho, 1e-8);

        json cj;
        cj["lambda_requested"] = *config.lambda;
        cj["lambda"] = e.lambda;
        cj["parity"] = parity_code(e.parity);
        cj["double"] = e.is_double;
        cj["closure_gap"] = verdict.gap;
        cj["diameter"] = verdict.diameter;
        cj["closed"] = verdict.closed;
        cj["support_residual"] = verdict.support_residual ? json(*verdict.support_residual) : json(nullptr);
        report["cycloid"] = cj;

        CsvWriter csv({"s", "t", "x", "y", "rho"});
        for (std::size_t i = 0; i < cyc.curve.size(); ++i) {
            csv.add_row({rho.s[i], rho.t[i], cyc.curve[i].x, cyc.curve[i].y, rho.u[i]});
        }
        artifacts.write("cycloid.csv", "csv", csv.str());
        if (wants("cycloid")) layers.emplace_back(thinned(cyc.curve.points()), "#d62728");
        if (wants("evolute")) layers.emplace_back(thinned(evolute(cyc.curve, phi).points()), "#2ca02c");
        if (wants("bi-evolute")) {
            layers.emplace_back(thinned(bi_evolute(rho, cyc.curve, phi, coeffs.psi()).points()), "#ff7f0e");
        }
    }

    if (config.out && config.formats.contains("svg")) {
        double r = 0.0;
        for (const auto& [pts, colour] : layers) {
            for (Vec2 p : pts) r = std::max({r, std::fabs(p.x), std::fabs(p.y)});
        }
        r *= 1.1;
        SvgDocument svg({-r, r, -r, r}, svg_size, svg_size);
        svg.line({-r, 0.0}, {r, 0.0}, "#dddddd");
        svg.line({0.0, -r}, {0.0, r}, "#dddddd");
        for (const auto& [pts, colour] : layers) svg.polyline(pts, true, colour, 1.5);
        artifacts.write(command + ".svg", "svg", svg.str());
    }
    report["artifacts"] = artifacts.list();
    return reported(std::move(report));
}

}  // namespace

CommandResult run_plot(const RunConfig& config) {
    std::vector<std::string> show = config.show;
    if (show.empty()) show = {"circle", "anticircle"};
    return draw(config, "plot", show);
}

CommandResult run_cycloid(const RunConfig& config) {
    if (!config.lambda) throw ParseError("cycloid requires --lambda");
    std::vector<std::string> show = config.show;
    if (std::find(show.begin(), show.end(), "cycloid") == show.end()) show.push_back("cycloid");
    return draw(config, "cycloid", show);
}

CommandResult run_hill(const RunConfig& config) {
    const NormProfile profile = load_profile(config);
    require_valid(profile, validate_profile(profile));
    const HillCoefficient f = hill_from_geometry(profile, SymplecticForm{}, config.resolution);
    const SLCoefficients& eq = f.equation();
    const std::vector<FormSample> rows = f.density_table();
    const double half_step = 0.5 * eq.grid_step();

    CsvWriter csv({"s", "t", "f", "alpha", "beta", "speed"});
    double f_min = std::numeric_limits<double>::infinity();
    double f_max = 0.0;
    int infinite = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double s = half_step * static_cast<double>(i);
        const FormSample& r = rows[i];
        const double value = r.speed > 0.0 ? r.a_density / r.speed : std::numeric_limits<double>::infinity();
        if (std::isinf(value)) {
            ++infinite;
        } else {
            f_min = std::min(f_min, value);
            f_max = std::max(f_max, value);
        }
        csv.add_row({s, eq.t_of(s), value, r.a_density, r.b_density, r.speed});
    }

    json report;
    report["command"] = "hill";
    report["profile"] = profile.describe();
    report["c"] = f.c();
    report["period"] = f.period();
    report["rows"] = rows.size();
    report["f_min"] = f_min;
    report["f_max"] = f_max;
    report["infinite_rows"] = infinite;

    CommandResult result;
    if (config.out) {
        Artifacts artifacts(config);
        artifacts.write("hill.csv", "csv", csv.str());
        report["artifacts"] = artifacts.list();
    } else {
        result.stdout_text = csv.str();
    }
    result.report = report;
    return result;
}

}  // namespace minkowski::cli
