#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "minkowski/errors.hpp"
#include "minkowski/io.hpp"

namespace {

using namespace minkowski;
using namespace minkowski::cli;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void add_common(CLI::App& sub, RunConfig& config) {
    sub.add_option("--resolution", config.resolution, "Integration steps and curve samples (power of two >= 256)")
        ->check([](const std::string& s) -> std::string {
            int n = 0;
            try {
                n = std::stoi(s);
            } catch (const std::exception&) {
                return "resolution must be an integer";
            }
            return n >= 256 && is_power_of_two(n) ? "" : "resolution must be a power of two >= 256";
        });
    sub.add_option("--out", config.out, "Directory for CSV/SVG/JSON artifacts");
    sub.add_option("--formats", config.formats, "Artifact formats to write (csv, json, svg)")
        ->delimiter(',')
        ->check(CLI::IsMember({"csv", "json", "svg"}));
}

int report_error(const char* kind, const std::exception& e, int code) {
    std::cerr << "error (" << kind << "): " << e.what() << '\n';
    return code;
}

int dispatch(const RunConfig& config) {
    CommandResult result;
    switch (config.command) {
        case Command::info: result = run_info(config); break;
        case Command::spectrum: result = run_spectrum(config); break;
        case Command::reconstruct: result = run_reconstruct(config); break;
        case Command::plot: result = run_plot(config); break;
        case Command::cycloid: result = run_cycloid(config); break;
        case Command::hill: result = run_hill(config); break;
    }
    const std::string report = result.report.dump(2) + '\n';
    if (config.out && config.formats.contains("json")) write_text_file(*config.out / "report.json", report);
    std::cout << (result.stdout_text ? *result.stdout_text : report);
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minkowski plane geometry: spectra, cycloids and Hill reconstruction"};
    app.require_subcommand(1);
    RunConfig config;

    auto* info = app.add_subcommand("info", "Validate a profile and report length, calibration and diagnostics");
    info->add_option("--profile", config.profile, "Profile spec, e.g. lp:3")->required();

    auto* spectrum = app.add_subcommand("spectrum", "Periodic and antiperiodic eigenvalues up to --lambda-max");
    spectrum->add_option("--profile", config.profile, "Profile spec")->required();
    spectrum->add_option("--lambda-max", config.lambda_max, "Upper end of the eigenvalue scan (> 1)")->required();

    auto* reconstruct = app.add_subcommand("reconstruct", "Decide whether a Hill coefficient comes from a norm");
    reconstruct->add_option("--expr", config.expr, "Coefficient f(t) as an expression in t");
    reconstruct->add_option("--c", config.c, "Half period of f");
    reconstruct->add_option("--samples", config.samples, "CSV with columns t,f or a density table from `hill`");
    reconstruct->add_option("--profile", config.profile, "Take f from this profile");
    reconstruct->add_option("--compare", config.compare, "Profile spec for the round-trip comparison");

    auto* plot = app.add_subcommand("plot", "Draw the unit circle and requested overlays");
    plot->add_option("--profile", config.profile, "Profile spec")->required();
    plot->add_option("--show", config.show, "circle, anticircle, cycloid, evolute, bi-evolute")->delimiter(',');
    plot->add_option("--lambda", config.lambda, "Eigenvalue for cycloid overlays");
    plot->add_option("--lambda-tol", config.lambda_tol, "Relative tolerance for matching --lambda");

    auto* cycloid = app.add_subcommand("cycloid", "Cycloid of an eigenfunction and its closure gap");
    cycloid->add_option("--profile", config.profile, "Profile spec")->required();
    cycloid->add_option("--lambda", config.lambda, "Eigenvalue")->required();
    cycloid->add_option("--lambda-tol", config.lambda_tol, "Relative tolerance for matching --lambda");
    cycloid->add_option("--show", config.show, "Extra overlays: circle, anticircle, evolute, bi-evolute")
        ->delimiter(',');

    auto* hill = app.add_subcommand("hill", "Export the Hill coefficient of a profile as a density table");
    hill->add_option("--profile", config.profile, "Profile spec")->required();

    for (auto* sub : {info, spectrum, reconstruct, plot, cycloid, hill}) add_common(*sub, config);
    info->callback([&] { config.command = Command::info; });
    spectrum->callback([&] { config.command = Command::spectrum; });
    reconstruct->callback([&] { config.command = Command::reconstruct; });
    plot->callback([&] { config.command = Command::plot; });
    cycloid->callback([&] { config.command = Command::cycloid; });
    hill->callback([&] { config.command = Command::hill; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error (usage): " << e.what() << "\n\n" << app.help();
        return ExitCode::usage;
    }

    try {
        return dispatch(config);
    } catch (const ParseError& e) {
        return report_error("parse", e, ExitCode::usage);
    } catch (const ProfileError& e) {
        return report_error("profile", e, ExitCode::usage);
    } catch (const DomainError& e) {
        return report_error("domain", e, ExitCode::usage);
    } catch (const LookupFailure& e) {
        return report_error("lookup", e, ExitCode::domain);
    } catch (const NoEigenfunctionError& e) {
        return report_error("lookup", e, ExitCode::domain);
    } catch (const std::exception& e) {
        return report_error("numeric", e, ExitCode::numeric);
    }
}
