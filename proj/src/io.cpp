#include "minkowski/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "minkowski/errors.hpp"

namespace minkowski {

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(std::vector<CsvCell> row) {
    if (row.size() != header_.size()) throw DomainError("CSV row width does not match the header");
    rows_.push_back(std::move(row));
}

void CsvWriter::write(std::ostream& out) const {
    for (std::size_t j = 0; j < header_.size(); ++j) out << (j ? "," : "") << header_[j];
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            if (const auto* d = std::get_if<double>(&row[j])) {
                out << format_real(*d);
            } else {
                out << std::get<std::string>(row[j]);
            }
        }
        out << '\n';
    }
}

std::string CsvWriter::str() const {
    std::ostringstream s;
    write(s);
    return s.str();
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) return out;
        start = comma + 1;
    }
}

double parse_cell(std::string_view cell, std::size_t line_no) {
    double v = 0.0;
    // from_chars rejects a leading '+'.
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw ParseError("CSV line " + std::to_string(line_no) + ": not a number: '" + std::string(cell) + "'");
    }
    return v;
}

}  // namespace

CsvTable CsvTable::parse(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto cells = split(body);
        if (!have_header) {
            for (const auto c : cells) {
                if (c.empty()) throw ParseError("CSV header has an empty column name");
                table.header_.emplace_back(c);
            }
            have_header = true;
            continue;
        }
        if (cells.size() != table.header_.size()) {
            throw ParseError("CSV line " + std::to_string(line_no) + ": expected " +
                             std::to_string(table.header_.size()) + " fields, found " + std::to_string(cells.size()));
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto c : cells) row.push_back(parse_cell(c, line_no));
        table.data_.push_back(std::move(row));
    }
    if (!have_header) throw ParseError("CSV input is empty");
    return table;
}

CsvTable CsvTable::read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return parse(in);
}

bool CsvTable::has_column(std::string_view name) const {
    for (const auto& h : header_) {
        if (h == name) return true;
    }
    return false;
}

std::vector<double> CsvTable::column(std::string_view name) const {
    for (std::size_t j = 0; j < header_.size(); ++j) {
        if (header_[j] != name) continue;
        std::vector<double> out;
        out.reserve(data_.size());
        for (const auto& row : data_) out.push_back(row[j]);
        return out;
    }
    throw ParseError("CSV has no column '" + std::string(name) + "'");
}

namespace {

// Rounded to 1e-6 with trailing zeros dropped; -0 prints as 0.
std::string coord(double v) {
    double r = std::round(v * 1e6) / 1e6;
    if (r == 0.0) r = 0.0;
    std::array<char, 48> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.6f", r);
    std::string s(buf.data(), static_cast<std::size_t>(n));
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

SvgDocument::SvgDocument(Bounds data, double width, double height) : data_(data), width_(width), height_(height) {
    if (!(data.xmax > data.xmin) || !(data.ymax > data.ymin) || !(width > 0) || !(height > 0)) {
        throw DomainError("SVG bounds must be nonempty");
    }
}

Vec2 SvgDocument::map(Vec2 p) const noexcept {
    return {(p.x - data_.xmin) / (data_.xmax - data_.xmin) * width_,
            (data_.ymax - p.y) / (data_.ymax - data_.ymin) * height_};
}

void SvgDocument::polyline(std::span<const Vec2> points, bool closed, std::string_view stroke, double stroke_width) {
    if (points.empty()) return;
    std::string d;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec2 q = map(points[i]);
        d += (i ? " L" : "M") + coord(q.x) + ' ' + coord(q.y);
    }
    if (closed) d += " Z";
    elements_.push_back("<path d=\"" + d + "\" fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" +
                        coord(stroke_width) + "\"/>");
}

void SvgDocument::line(Vec2 a, Vec2 b, std::string_view stroke, double stroke_width, bool dashed) {
    const Vec2 p = map(a);
    const Vec2 q = map(b);
    std::string e = "<line x1=\"" + coord(p.x) + "\" y1=\"" + coord(p.y) + "\" x2=\"" + coord(q.x) + "\" y2=\"" +
                    coord(q.y) + "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + coord(stroke_width) +
                    "\"";
    if (dashed) e += " stroke-dasharray=\"4 4\"";
    elements_.push_back(e + "/>");
}

void SvgDocument::circle(Vec2 center, double radius, std::string_view fill) {
    const Vec2 c = map(center);
    elements_.push_back("<circle cx=\"" + coord(c.x) + "\" cy=\"" + coord(c.y) + "\" r=\"" + coord(radius) +
                        "\" fill=\"" + std::string(fill) + "\"/>");
}

std::string SvgDocument::str() const {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + coord(width_) + ' ' +
                      coord(height_) + "\" width=\"" + coord(width_) + "\" height=\"" + coord(height_) + "\">\n";
    for (const auto& e : elements_) out += "  " + e + '\n';
    out += "</svg>\n";
    return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace minkowski
