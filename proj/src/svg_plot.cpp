#include "tdmie/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tdmie {

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvParseError("cannot open " + path);
    CsvTable table;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        if (!have_header) {
            while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
            if (table.columns.empty())
                throw CsvParseError(path + ": line " + std::to_string(lineno) + ": empty header");
            have_header = true;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw CsvParseError(path + ": line " + std::to_string(lineno) +
                                    ": bad number '" + cell + "'");
            }
        }
        if (row.size() != table.columns.size())
            throw CsvParseError(path + ": line " + std::to_string(lineno) + ": column count mismatch");
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw CsvParseError(path + ": line 1: missing header");
    return table;
}

namespace {

constexpr double kWidth = 800.0, kHeight = 600.0, kMargin = 60.0;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    void grow(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double map(double v, double a, double b) const {
        const double span = (hi > lo) ? (hi - lo) : 1.0;
        return a + (v - lo) / span * (b - a);
    }
};

const char* kColors[] = {"#1f6fb4", "#d1495b", "#3a7d44", "#8e6fb0", "#c98a2b"};

void emit_axes(std::ostream& out) {
    out << "  <rect x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kMargin)
        << "\" width=\"" << fmt(kWidth - 2 * kMargin) << "\" height=\""
        << fmt(kHeight - 2 * kMargin) << "\" fill=\"none\" stroke=\"#444\"/>\n";
}

} // namespace

void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path) {
    const CsvTable table = read_csv(csv_path);
    std::ofstream out(svg_path);
    if (!out) throw std::runtime_error("emit_plot: cannot open " + svg_path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth)
        << "\" height=\"" << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' '
        << fmt(kHeight) << "\">\n";
    emit_axes(out);

    const double x0 = kMargin, x1 = kWidth - kMargin;
    const double y0 = kHeight - kMargin, y1 = kMargin; // y grows upward in data

    if (kind == PlotKind::eigenmap) {
        // Square viewport centered on the unit circle and the data.
        Range r;
        r.lo = -1.1;
        r.hi = 1.1;
        for (const auto& row : table.rows) {
            if (row.size() < 2) continue;
            r.grow(row[0] - 0.1);
            r.grow(row[0] + 0.1);
            r.grow(row[1] - 0.1);
            r.grow(row[1] + 0.1);
        }
        const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
        const double half = 0.5 * std::min(x1 - x0, y0 - y1);
        const double scale = half / std::max(std::abs(r.lo), std::abs(r.hi));
        const double rr = scale * 1.0;
        out << "  <path id=\"unit-circle\" fill=\"none\" stroke=\"#888\" d=\"M "
            << fmt(cx + rr) << ' ' << fmt(cy) << " A " << fmt(rr) << ' ' << fmt(rr)
            << " 0 1 0 " << fmt(cx - rr) << ' ' << fmt(cy) << " A " << fmt(rr) << ' '
            << fmt(rr) << " 0 1 0 " << fmt(cx + rr) << ' ' << fmt(cy) << " Z\"/>\n";
        for (const auto& row : table.rows) {
            if (row.size() < 2) continue;
            out << "  <circle cx=\"" << fmt(cx + scale * row[0]) << "\" cy=\""
                << fmt(cy - scale * row[1]) << "\" r=\"2\" fill=\"" << kColors[0] << "\"/>\n";
        }
        out << "</svg>\n";
        return;
    }

    // timeseries / spectrum: first column is the abscissa, every remaining
    // column becomes one polyline (spectrum plots magnitudes pairwise when
    // the columns come as re/im pairs).
    std::vector<std::vector<double>> series;
    std::vector<double> xs;
    for (const auto& row : table.rows) xs.push_back(row[0]);
    const std::size_t ncol = table.columns.size();
    if (kind == PlotKind::spectrum && ncol >= 5) {
        // layout f,td_re,td_im,fd_re,fd_im[,...]: plot |td| and |fd|
        series.resize(2);
        for (const auto& row : table.rows) {
            series[0].push_back(std::hypot(row[1], row[2]));
            series[1].push_back(std::hypot(row[3], row[4]));
        }
    } else {
        series.resize(ncol > 1 ? ncol - 1 : 0);
        for (const auto& row : table.rows)
            for (std::size_t c = 1; c < ncol; ++c) series[c - 1].push_back(row[c]);
    }

    Range rx, ry;
    if (!xs.empty()) {
        rx.lo = rx.hi = xs[0];
        for (double v : xs) rx.grow(v);
        bool first = true;
        for (const auto& s : series)
            for (double v : s) {
                if (first) { ry.lo = ry.hi = v; first = false; }
                ry.grow(v);
            }
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        if (series[s].empty()) continue;
        out << "  <polyline fill=\"none\" stroke=\"" << kColors[s % 5] << "\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) out << ' ';
            out << fmt(rx.map(xs[i], x0, x1)) << ',' << fmt(ry.map(series[s][i], y0, y1));
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

} // namespace tdmie
