#include "minkowski/profile_spec.hpp"

#include <charconv>
#include <numbers>
#include <string>
#include <vector>

#include "minkowski/errors.hpp"
#include "minkowski/io.hpp"

namespace minkowski {
namespace {

[[noreturn]] void fail(std::string_view spec, const std::string& msg) {
    throw ParseError("profile spec '" + std::string(spec) + "': " + msg);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

double number(std::string_view spec, std::string_view token) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
        fail(spec, "expected a number, found '" + std::string(token) + "'");
    }
    return v;
}

int integer(std::string_view spec, std::string_view token) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
        fail(spec, "expected an integer frequency, found '" + std::string(token) + "'");
    }
    return v;
}

std::vector<double> numbers(std::string_view spec, std::string_view args, std::size_t count) {
    const auto parts = split(args, ',');
    if (parts.size() != count) {
        fail(spec, "expected " + std::to_string(count) + " comma-separated value" + (count == 1 ? "" : "s"));
    }
    std::vector<double> out;
    for (const auto p : parts) out.push_back(number(spec, p));
    return out;
}

NormProfile fourier(std::string_view spec, std::string_view args, int resolution) {
    const auto groups = split(args, ';');
    RadialFourierNorm norm{number(spec, groups.front()), {}};
    for (std::size_t i = 1; i < groups.size(); ++i) {
        const auto parts = split(groups[i], ',');
        if (parts.size() != 3) fail(spec, "each Fourier term needs <freq>,<cos>,<sin>");
        norm.terms.push_back({integer(spec, parts[0]), number(spec, parts[1]), number(spec, parts[2])});
    }
    return NormProfile(std::move(norm), resolution);
}

NormProfile from_file(std::string_view path, int resolution) {
    const CsvTable table = CsvTable::read(std::string(path));
    const auto xs = table.column("x");
    const auto ys = table.column("y");
    if (xs.size() < 16) throw ParseError("profile file '" + std::string(path) + "' needs at least 16 points");
    std::vector<Vec2> pts;
    pts.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) pts.push_back({xs[i], ys[i]});
    return NormProfile(ReconstructedNorm{ClosedCurve(2.0 * std::numbers::pi, std::move(pts))}, resolution);
}

}  // namespace

NormProfile parse_profile_spec(std::string_view spec, int resolution) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string_view::npos) fail(spec, "expected <kind>:<parameters>");
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view args = spec.substr(colon + 1);
    if (args.empty()) fail(spec, "missing parameters");

    if (kind == "lp") return NormProfile(LpNorm{numbers(spec, args, 1)[0]}, resolution);
    if (kind == "ellipse") {
        const auto v = numbers(spec, args, 2);
        return NormProfile(EllipseNorm{v[0], v[1]}, resolution);
    }
    if (kind == "fourier") return fourier(spec, args, resolution);
    if (kind == "radon-glued") return NormProfile(RadonGluedNorm{numbers(spec, args, 1)[0]}, resolution);
    if (kind == "file") return from_file(args, resolution);
    fail(spec, "unknown kind '" + std::string(kind) + "' (lp, ellipse, fourier, radon-glued, file)");
}

}  // namespace minkowski
