#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "topolines/filters.hpp"
#include "topolines/persistence.hpp"
#include "topolines/series.hpp"
#include "topolines/simplify.hpp"

namespace topolines {

/// One smoothing method with its parameter. Threshold and Fraction are both
/// reported as "TopoLines".
using SmoothingSpec =
    std::variant<Threshold, Fraction, Median, Gaussian, Cutoff, Subsample, DouglasPeucker>;

std::string method_name(const SmoothingSpec& spec);
double parameter_of(const SmoothingSpec& spec);

/// Method names in report order.
const std::vector<std::string>& all_methods();

/// Builds a spec from a method name and a scalar parameter. TopoLines takes
/// a fraction; "TopoLinesThreshold" takes a persistence threshold. Integer
/// parameters are rounded to the nearest integer.
SmoothingSpec make_spec(const std::string& method, double parameter);

TimeSeries smooth(const TimeSeries& series, const SmoothingSpec& spec,
                  PersistenceOptions options = {});

/// Twelve-level default grid per method (fewer when integer rounding
/// collapses levels on short series).
std::vector<SmoothingSpec> default_grid(const std::string& method, const TimeSeries& series);

enum class Metric { L1, Linf, W1, Bottleneck };
inline constexpr std::array<Metric, 4> kMetrics{Metric::L1, Metric::Linf, Metric::W1,
                                                Metric::Bottleneck};
std::string to_string(Metric metric);

struct MetricValues {
  double l1 = 0.0;
  double linf = 0.0;
  double w1 = 0.0;
  double bottleneck = 0.0;
  double operator[](Metric m) const;
};

struct SweepPoint {
  std::string method;
  double parameter = 0.0;
  double entropy = 0.0;  // ApEn of the smoothed output
  MetricValues metrics;
};

struct SweepFailure {
  std::string method;
  double parameter = 0.0;
  std::string message;
};

/// ApEn settings, fixed per dataset from the original series.
struct EntropySettings {
  int m = 2;
  double r = 0.0;
};

EntropySettings entropy_settings_for(const TimeSeries& original, int m = 2, double r_factor = 0.2);

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<SweepFailure> failures;
};

/// Smooths with every grid entry and scores the output against the original.
/// A failing grid entry is recorded and skipped.
SweepResult sweep(const TimeSeries& series, const std::vector<SmoothingSpec>& grid,
                  const EntropySettings& entropy, PersistenceOptions options = {});

struct FitLine {
  double slope = 0.0;
  double intercept = 0.0;
  double entropy_min = 0.0;
  double entropy_max = 0.0;
  double at(double x) const { return slope * x + intercept; }
};

/// Ordinary least squares of metric on entropy. Empty when fewer than two
/// distinct entropy values exist.
std::optional<FitLine> fit_line(const std::vector<std::pair<double, double>>& points);

/// Raised when a dataset cannot be ranked (e.g. no shared entropy range).
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integral of max(fit, 0) over [lo, hi]. Requires lo < hi.
double auc(const FitLine& fit, double lo, double hi);

struct MethodScore {
  std::string method;
  std::optional<FitLine> fit;  // empty: unrankable
  std::optional<double> auc;
  int rank = 0;
  bool rankable() const { return auc.has_value(); }
};

struct RankReport {
  std::string dataset;
  std::vector<std::string> methods;
  double entropy_lo = 0.0;
  double entropy_hi = 0.0;
  std::map<Metric, std::vector<MethodScore>> per_metric;  // each sorted by rank
  std::map<std::string, double> overall_rank;
};

/// Ranks methods per metric by ascending AUC (ties by name); unrankable
/// methods get rank = #methods + 1. Overall rank is the mean of the four.
/// Input scores need not be sorted; `auc` must be set for rankable ones.
RankReport rank_methods(const std::string& dataset, std::map<Metric, std::vector<MethodScore>> scores);

struct EvaluationConfig {
  std::vector<std::string> methods = all_methods();
  /// Optional per-method grid override.
  std::map<std::string, std::vector<double>> grids;
  int apen_m = 2;
  double apen_r_factor = 0.2;
  PersistenceOptions persistence;
  /// Worker threads for sweep cells; results never depend on this.
  unsigned threads = 1;
};

struct Evaluation {
  RankReport report;
  EntropySettings entropy;
  std::vector<SweepPoint> points;  // sorted by (method, parameter)
  std::vector<SweepFailure> failures;
};

/// Full pipeline: sweep every method, fit lines, integrate over the shared
/// entropy range and rank.
Evaluation evaluate(const TimeSeries& series, const EvaluationConfig& config = {});

}  // namespace topolines
