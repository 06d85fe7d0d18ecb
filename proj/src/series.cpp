#include "topolines/series.hpp"

#include <cmath>
#include <sstream>

namespace topolines {

std::vector<std::string> validate(std::span<const double> values,
                                  std::span<const double> positions) {
  std::vector<std::string> violations;
  if (values.size() < 2) {
    violations.push_back("length < 2 (got " + std::to_string(values.size()) + ")");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      violations.push_back("non-finite value at index " + std::to_string(i));
    }
  }
  if (!positions.empty()) {
    if (positions.size() != values.size()) {
      violations.push_back("positions count " + std::to_string(positions.size()) +
                           " != values count " + std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (!std::isfinite(positions[i])) {
        violations.push_back("non-finite position at index " + std::to_string(i));
      } else if (i > 0 && !(positions[i] > positions[i - 1])) {
        violations.push_back("positions not strictly increasing at index " +
                             std::to_string(i));
      }
    }
  }
  return violations;
}

TimeSeries::TimeSeries(std::vector<double> values, std::vector<double> positions,
                       std::string label)
    : values_(std::move(values)), positions_(std::move(positions)), label_(std::move(label)) {
  auto violations = validate(values_, positions_);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid series";
    if (!label_.empty()) msg << " '" << label_ << "'";
    for (const auto& v : violations) msg << "; " << v;
    throw ValidationError(msg.str());
  }
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
  return TimeSeries(std::move(values), positions_, label_);
}

std::vector<ExtremumRecord> classify_extrema(std::span<const double> values) {
  if (values.size() < 2) throw ValidationError("classify_extrema: length < 2");

  // Maximal runs of equal values.
  std::vector<IndexRange> runs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (runs.empty() || values[i] != values[runs.back().first]) {
      runs.push_back({i, i});
    } else {
      runs.back().last = i;
    }
  }

  std::vector<ExtremumRecord> out;
  if (runs.size() == 1) {
    out.push_back({0, ExtremumKind::LocalMin, true, runs.front()});
    return out;
  }

  auto value_of = [&](std::size_t r) { return values[runs[r].first]; };
  const std::size_t last = runs.size() - 1;

  out.push_back({0,
                 value_of(0) <= value_of(1) ? ExtremumKind::LocalMin : ExtremumKind::LocalMax,
                 true, runs.front()});
  for (std::size_t r = 1; r < last; ++r) {
    const double v = value_of(r);
    const double lo = value_of(r - 1);
    const double hi = value_of(r + 1);
    if (v < lo && v < hi) {
      out.push_back({runs[r].first, ExtremumKind::LocalMin, false, runs[r]});
    } else if (v > lo && v > hi) {
      out.push_back({runs[r].first, ExtremumKind::LocalMax, false, runs[r]});
    }
  }
  out.push_back({runs[last].first,
                 value_of(last) <= value_of(last - 1) ? ExtremumKind::LocalMin
                                                      : ExtremumKind::LocalMax,
                 true, runs[last]});
  return out;
}

std::vector<ExtremumRecord> classify_extrema(const TimeSeries& series) {
  return classify_extrema(series.values());
}

}  // namespace topolines
