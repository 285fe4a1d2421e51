#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "minkowski/vec2.hpp"

namespace minkowski {

// Seventeen significant digits (exact round trip); "inf", "-inf", "nan" for
// non-finite values.
[[nodiscard]] std::string format_real(double v);

using CsvCell = std::variant<double, std::string>;

// Writes a header row followed by data rows. Reals use format_real.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(std::vector<CsvCell> row);
    void write(std::ostream& out) const;
    [[nodiscard]] std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<CsvCell>> rows_;
};

// Numeric CSV with a header row. Blank lines and lines starting with '#'
// are skipped.
class CsvTable {
public:
    static CsvTable parse(std::istream& in);
    static CsvTable read(const std::filesystem::path& path);

    [[nodiscard]] const std::vector<std::string>& header() const noexcept { return header_; }
    [[nodiscard]] std::size_t rows() const noexcept { return data_.size(); }
    [[nodiscard]] bool has_column(std::string_view name) const;
    // Throws ParseError for an unknown column.
    [[nodiscard]] std::vector<double> column(std::string_view name) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> data_;
};

// Minimal SVG writer: path, line and circle elements on a fixed viewBox.
// Data coordinates are mapped affinely onto the viewBox with y pointing up,
// and every emitted coordinate is rounded to 1e-6.
class SvgDocument {
public:
    struct Bounds {
        double xmin, xmax, ymin, ymax;
    };

    SvgDocument(Bounds data, double width, double height);

    void polyline(std::span<const Vec2> points, bool closed, std::string_view stroke, double stroke_width = 1.0);
    void line(Vec2 a, Vec2 b, std::string_view stroke, double stroke_width = 1.0, bool dashed = false);
    // Radius in viewBox units.
    void circle(Vec2 center, double radius, std::string_view fill);

    [[nodiscard]] std::string str() const;

private:
    [[nodiscard]] Vec2 map(Vec2 p) const noexcept;

    Bounds data_;
    double width_;
    double height_;
    std::vector<std::string> elements_;
};

// Writes text to a file, creating parent directories.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace minkowski
