#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace minkowski::cli {

enum class Command { info, spectrum, reconstruct, plot, cycloid, hill };

enum ExitCode : int { ok = 0, usage = 2, numeric = 3, domain = 4 };

struct RunConfig {
    Command command = Command::info;
    std::optional<std::string> profile;
    std::optional<std::string> expr;
    std::optional<double> c;
    std::optional<std::filesystem::path> samples;
    std::optional<std::string> compare;
    int resolution = 4096;
    double lambda_max = 10.0;
    std::optional<double> lambda;
    double lambda_tol = 1e-6;
    std::vector<std::string> show;
    std::optional<std::filesystem::path> out;
    std::set<std::string> formats{"csv", "json", "svg"};
};

struct CommandResult {
    nlohmann::ordered_json report;
    int exit_code = ExitCode::ok;
    // Text printed to stdout instead of the report (the hill table without --out).
    std::optional<std::string> stdout_text;
};

// Raised for requests that are well formed but name no eigenvalue; maps to exit 4.
class LookupFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

CommandResult run_info(const RunConfig& config);
CommandResult run_spectrum(const RunConfig& config);
CommandResult run_reconstruct(const RunConfig& config);
CommandResult run_plot(const RunConfig& config);
CommandResult run_cycloid(const RunConfig& config);
CommandResult run_hill(const RunConfig& config);

}  // namespace minkowski::cli
