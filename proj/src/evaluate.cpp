#include "topolines/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "topolines/metrics.hpp"

namespace topolines {

namespace {

std::size_t as_count(double parameter, const std::string& method) {
  if (!std::isfinite(parameter) || parameter < 0.0)
    throw ValidationError(method + " parameter must be a non-negative integer");
  return static_cast<std::size_t>(std::llround(parameter));
}

std::vector<double> geometric(double from, double to, std::size_t levels) {
  std::vector<double> out;
  for (std::size_t k = 0; k < levels; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(levels - 1);
    out.push_back(from * std::pow(to / from, t));
  }
  return out;
}

// Runs fn(i) for i in [0, count) on `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, count); ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
}

struct Cell {
  std::optional<SweepPoint> point;
  std::optional<SweepFailure> failure;
};

Cell run_cell(const TimeSeries& series, const PersistenceDiagram& original_diagram,
              const SmoothingSpec& spec, const EntropySettings& entropy,
              PersistenceOptions options) {
  Cell cell;
  const std::string method = method_name(spec);
  const double parameter = parameter_of(spec);
  try {
    const auto out = smooth(series, spec, options);
    const auto before = points_of(original_diagram);
    const auto after = points_of(diagram_of(out.values(), options));
    SweepPoint p;
    p.method = method;
    p.parameter = parameter;
    p.entropy = approx_entropy(out, entropy.m, entropy.r);
    p.metrics.l1 = norm_l1(series, out);
    p.metrics.linf = norm_linf(series, out);
    p.metrics.w1 = wasserstein1(before, after);
    p.metrics.bottleneck = bottleneck(before, after);
    if (!std::isfinite(p.entropy)) throw ValidationError("non-finite entropy");
    cell.point = std::move(p);
  } catch (const std::exception& e) {
    cell.failure = SweepFailure{method, parameter, e.what()};
  }
  return cell;
}

bool point_order(const SweepPoint& a, const SweepPoint& b) {
  if (a.method != b.method) return a.method < b.method;
  return a.parameter < b.parameter;
}

}  // namespace

std::string method_name(const SmoothingSpec& spec) {
  static constexpr const char* kNames[] = {"TopoLines", "TopoLines", "Median", "Gaussian",
                                           "Cutoff",    "Subsample", "DouglasPeucker"};
  return kNames[spec.index()];
}

double parameter_of(const SmoothingSpec& spec) {
  return std::visit(
      [](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Threshold>) return s.t;
        else if constexpr (std::is_same_v<S, Fraction>) return s.q;
        else if constexpr (std::is_same_v<S, Median>) return static_cast<double>(s.window);
        else if constexpr (std::is_same_v<S, Gaussian>) return s.sigma;
        else if constexpr (std::is_same_v<S, Cutoff>) return static_cast<double>(s.keep_frequencies);
        else if constexpr (std::is_same_v<S, Subsample>) return static_cast<double>(s.stride);
        else return s.epsilon;
      },
      spec);
}

const std::vector<std::string>& all_methods() {
  static const std::vector<std::string> kAll{"TopoLines", "Median",    "Gaussian",
                                             "Cutoff",    "Subsample", "DouglasPeucker"};
  return kAll;
}

SmoothingSpec make_spec(const std::string& method, double parameter) {
  if (method == "TopoLines") return Fraction{parameter};
  if (method == "TopoLinesThreshold") return Threshold{parameter};
  if (method == "Median") return Median{as_count(parameter, method)};
  if (method == "Gaussian") return Gaussian{parameter};
  if (method == "Cutoff") return Cutoff{as_count(parameter, method)};
  if (method == "Subsample") return Subsample{as_count(parameter, method)};
  if (method == "DouglasPeucker") return DouglasPeucker{parameter};
  throw ValidationError("unknown method '" + method + "'");
}

TimeSeries smooth(const TimeSeries& series, const SmoothingSpec& spec, PersistenceOptions options) {
  return std::visit(
      [&](const auto& s) -> TimeSeries {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Threshold> || std::is_same_v<S, Fraction>)
          return simplify(series, s, options);
        else
          return apply_filter(series, s);
      },
      spec);
}

std::vector<SmoothingSpec> default_grid(const std::string& method, const TimeSeries& series) {
  constexpr std::size_t kLevels = 12;
  std::vector<SmoothingSpec> grid;
  auto add_counts = [&](const std::vector<double>& raw) {
    std::set<std::size_t> seen;
    for (double v : raw) {
      const auto c = static_cast<std::size_t>(std::llround(v));
      if (seen.insert(c).second) grid.push_back(make_spec(method, static_cast<double>(c)));
    }
  };

  if (method == "TopoLines") {
    for (std::size_t k = 0; k < kLevels; ++k)
      grid.push_back(Fraction{0.05 + 0.9 * static_cast<double>(k) / (kLevels - 1)});
  } else if (method == "Median") {
    for (std::size_t w = 3; w <= 47; w += 4) grid.push_back(Median{w});
  } else if (method == "Gaussian") {
    for (double s : geometric(0.5, 64.0, kLevels)) grid.push_back(Gaussian{s});
  } else if (method == "Cutoff") {
    const double top = static_cast<double>(std::max<std::size_t>(1, series.size() / 2));
    add_counts(geometric(top, 1.0, kLevels));
  } else if (method == "Subsample") {
    add_counts(geometric(2.0, 128.0, kLevels));
  } else if (method == "DouglasPeucker") {
    const auto [lo, hi] = std::minmax_element(series.values().begin(), series.values().end());
    const double range = *hi - *lo;
    for (double f : geometric(0.01, 0.9, kLevels)) grid.push_back(DouglasPeucker{f * range});
  } else {
    throw ValidationError("unknown method '" + method + "'");
  }
  return grid;
}

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::L1: return "l1";
    case Metric::Linf: return "linf";
    case Metric::W1: return "w1";
    case Metric::Bottleneck: return "bottleneck";
  }
  return "unknown";
}

double MetricValues::operator[](Metric m) const {
  switch (m) {
    case Metric::L1: return l1;
    case Metric::Linf: return linf;
    case Metric::W1: return w1;
    case Metric::Bottleneck: return bottleneck;
  }
  return 0.0;
}

EntropySettings entropy_settings_for(const TimeSeries& original, int m, double r_factor) {
  EntropySettings s{m, entropy_tolerance(original.values(), r_factor)};
  if (!(s.r > 0.0)) throw ValidationError("ApEn tolerance is zero: the series is constant");
  return s;
}

SweepResult sweep(const TimeSeries& series, const std::vector<SmoothingSpec>& grid,
                  const EntropySettings& entropy, PersistenceOptions options) {
  if (grid.empty()) throw ValidationError("sweep: empty parameter grid");
  const auto original = diagram_of(series.values(), options);
  SweepResult result;
  for (const auto& spec : grid) {
    auto cell = run_cell(series, original, spec, entropy, options);
    if (cell.point) result.points.push_back(std::move(*cell.point));
    if (cell.failure) result.failures.push_back(std::move(*cell.failure));
  }
  return result;
}

std::optional<FitLine> fit_line(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : points) {
    mx += x;
    my += y;
  }
  const auto n = static_cast<double>(points.size());
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  double lo = points.front().first, hi = points.front().first;
  for (auto [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (!(hi > lo) || !(sxx > 0.0)) return std::nullopt;
  FitLine fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.entropy_min = lo;
  fit.entropy_max = hi;
  return fit;
}

double auc(const FitLine& fit, double lo, double hi) {
  if (!(lo < hi)) throw EvaluationError("auc: empty integration range");
  const double ya = fit.at(lo), yb = fit.at(hi);
  if (ya >= 0.0 && yb >= 0.0) return 0.5 * (ya + yb) * (hi - lo);
  if (ya <= 0.0 && yb <= 0.0) return 0.0;
  // Exactly one sign change: integrate the positive triangle.
  const double root = -fit.intercept / fit.slope;
  return ya > 0.0 ? 0.5 * ya * (root - lo) : 0.5 * yb * (hi - root);
}

RankReport rank_methods(const std::string& dataset, std::map<Metric, std::vector<MethodScore>> scores) {
  RankReport report;
  report.dataset = dataset;
  std::set<std::string> names;
  for (const auto& [metric, list] : scores)
    for (const auto& s : list) names.insert(s.method);
  report.methods.assign(names.begin(), names.end());
  const int unrankable_rank = static_cast<int>(report.methods.size()) + 1;

  std::map<std::string, double> rank_sum;
  for (auto& [metric, list] : scores) {
    std::sort(list.begin(), list.end(), [](const MethodScore& a, const MethodScore& b) {
      if (a.rankable() != b.rankable()) return a.rankable();
      if (a.rankable() && *a.auc != *b.auc) return *a.auc < *b.auc;
      return a.method < b.method;
    });
    int next = 1;
    for (auto& s : list) {
      s.rank = s.rankable() ? next++ : unrankable_rank;
      rank_sum[s.method] += s.rank;
    }
    report.per_metric[metric] = std::move(list);
  }
  const auto metrics = static_cast<double>(report.per_metric.size());
  for (const auto& [name, total] : rank_sum) report.overall_rank[name] = total / metrics;
  return report;
}

Evaluation evaluate(const TimeSeries& series, const EvaluationConfig& config) {
  if (config.methods.size() < 2) throw ValidationError("evaluate: need at least two methods");
  Evaluation ev;
  ev.entropy = entropy_settings_for(series, config.apen_m, config.apen_r_factor);

  std::vector<SmoothingSpec> cells;
  for (const auto& method : config.methods) {
    if (auto it = config.grids.find(method); it != config.grids.end()) {
      if (it->second.empty()) throw ValidationError("evaluate: empty grid for " + method);
      for (double p : it->second) cells.push_back(make_spec(method, p));
    } else {
      for (auto& spec : default_grid(method, series)) cells.push_back(spec);
    }
  }

  const auto original = diagram_of(series.values(), config.persistence);
  std::vector<Cell> results(cells.size());
  parallel_for(cells.size(), config.threads, [&](std::size_t i) {
    results[i] = run_cell(series, original, cells[i], ev.entropy, config.persistence);
  });
  for (auto& cell : results) {
    if (cell.point) ev.points.push_back(std::move(*cell.point));
    if (cell.failure) ev.failures.push_back(std::move(*cell.failure));
  }
  std::sort(ev.points.begin(), ev.points.end(), point_order);

  // Fit every (method, metric); the entropy domain is per method.
  std::map<Metric, std::vector<MethodScore>> scores;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool any_fit = false;
  for (const auto& method : config.methods) {
    for (Metric metric : kMetrics) {
      std::vector<std::pair<double, double>> xy;
      for (const auto& p : ev.points)
        if (p.method == method) xy.emplace_back(p.entropy, p.metrics[metric]);
      MethodScore score;
      score.method = method;
      score.fit = fit_line(xy);
      if (score.fit) {
        lo = std::max(lo, score.fit->entropy_min);
        hi = std::min(hi, score.fit->entropy_max);
        any_fit = true;
      }
      scores[metric].push_back(std::move(score));
    }
  }
  if (!any_fit || !(lo < hi)) {
    throw EvaluationError("evaluate: methods share no entropy range for '" + series.label() +
                          "' (intersection [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "])");
  }
  for (auto& [metric, list] : scores)
    for (auto& s : list)
      if (s.fit) s.auc = auc(*s.fit, lo, hi);

  ev.report = rank_methods(series.label(), std::move(scores));
  ev.report.methods = config.methods;
  ev.report.entropy_lo = lo;
  ev.report.entropy_hi = hi;
  return ev;
}

}  // namespace topolines
