#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace topolines {

/// Raised when a series or a parameter violates its contract.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Returns every invariant violation of a candidate series; empty means valid.
/// `positions` may be empty, in which case 0,1,2,... is implied.
std::vector<std::string> validate(std::span<const double> values,
                                  std::span<const double> positions = {});

/// A finite, ordered sequence of samples with optional x-positions.
///
/// Construction validates; a TimeSeries that exists always satisfies
/// length >= 2, finite values, and strictly increasing positions.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values,
                      std::vector<double> positions = {},
                      std::string label = {});

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  bool has_positions() const noexcept { return !positions_.empty(); }
  /// x-coordinate of sample i (the index itself when no positions were given).
  double position(std::size_t i) const noexcept {
    return positions_.empty() ? static_cast<double>(i) : positions_[i];
  }
  /// Explicit positions, or empty when defaulted.
  std::span<const double> positions() const noexcept { return positions_; }

  const std::string& label() const noexcept { return label_; }

  /// Same positions and label, new values.
  TimeSeries with_values(std::vector<double> values) const;

 private:
  std::vector<double> values_;
  std::vector<double> positions_;
  std::string label_;
};

enum class ExtremumKind { LocalMin, LocalMax };

struct IndexRange {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct ExtremumRecord {
  std::size_t index = 0;  // leftmost index of the plateau
  ExtremumKind kind = ExtremumKind::LocalMin;
  bool is_boundary = false;
  IndexRange plateau_span;
  friend bool operator==(const ExtremumRecord&, const ExtremumRecord&) = default;
};

/// Local extrema in index order, with runs of equal values collapsed into a
/// single record anchored at the run's leftmost index.
///
/// The first and last records are boundary records. A boundary run is a
/// minimum iff its value is <= the adjacent distinct value. A constant series
/// yields a single boundary minimum spanning the whole series.
std::vector<ExtremumRecord> classify_extrema(std::span<const double> values);
std::vector<ExtremumRecord> classify_extrema(const TimeSeries& series);

}  // namespace topolines
