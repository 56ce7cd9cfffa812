#ifndef TDMIE_SVG_PLOT_HPP
#define TDMIE_SVG_PLOT_HPP

#include <stdexcept>
#include <string>
#include <vector>

// Deterministic SVG line/scatter plots from the CSV files the pipeline
// writes; byte-identical output for identical input.

namespace tdmie {

enum class PlotKind { timeseries, spectrum, eigenmap };

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct CsvParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses header + numeric rows; `#` comment lines are skipped; malformed
// content raises CsvParseError naming the line.
CsvTable read_csv(const std::string& path);

void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path);

} // namespace tdmie

#endif
