#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "topolines/evaluate.hpp"
#include "topolines/series.hpp"
#include "topolines/synthetic.hpp"

namespace topolines {

/// Raised for unreadable or unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses one value per line, or "x,y" per line. A single header line is
/// allowed before the first data row; lines starting with '#' and blank
/// lines are skipped. Errors name the 1-based line number.
TimeSeries parse_csv(std::string_view text, std::string label = {});
TimeSeries load_csv(const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Writes in the parse_csv format: "x,y" rows when the series has
/// positions, otherwise a "y" header and one value per line.
std::string to_csv(const TimeSeries& series);
void write_csv(const TimeSeries& series, const std::filesystem::path& path);

/// Everything that determines an `evaluate` run.
struct RunConfig {
  std::optional<std::string> input;           // CSV path
  std::optional<SyntheticKind> synthetic;     // used when no input is given
  std::size_t synthetic_n = 1024;
  std::uint64_t seed = 7;
  EvaluationConfig evaluation;
  std::filesystem::path output_dir = ".";
  bool emit_csv = true;
  bool emit_json = true;
  bool emit_svg = true;
};

/// Canonical report text: sorted keys, shortest round-trip numbers, two-space
/// indentation, trailing newline. Output paths are not echoed.
std::string report_json(const Evaluation& evaluation, const RunConfig& config);

/// Re-serialises a report_json document; identity on canonical input.
std::string canonicalize_json(std::string_view text);

struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static SVG 1.1 line chart: one <polyline> per series.
std::string line_chart_svg(const std::string& title, const std::vector<ChartSeries>& series);

/// Metric-vs-entropy scatter with one fitted <line> per method.
std::string entropy_scatter_svg(const Evaluation& evaluation, Metric metric);

/// Files written by write_outputs, relative to the output directory.
struct WrittenFiles {
  std::vector<std::filesystem::path> paths;
};

/// Emits report.json, smoothed_<method>.csv (middle grid level of each
/// method), chart.svg and entropy_<metric>.svg, per the emit flags.
WrittenFiles write_outputs(const TimeSeries& original, const Evaluation& evaluation,
                           const RunConfig& config);

/// Writes text to a file, creating parent directories. Throws IoError.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace topolines
