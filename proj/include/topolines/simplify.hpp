#pragma once

#include <span>
#include <variant>
#include <vector>

#include "topolines/persistence.hpp"
#include "topolines/series.hpp"

namespace topolines {

/// Remove every pair with persistence strictly below `t`.
struct Threshold {
  double t = 0.0;
};

/// Remove the floor(q * m) lowest-ranked of the m pairs (see removal_order).
struct Fraction {
  double q = 0.0;
};

using SimplifyPolicy = std::variant<Threshold, Fraction>;

/// Throws ValidationError for t < 0, q outside [0, 1], or non-finite parameters.
void check_policy(const SimplifyPolicy& policy);

struct PairSelection {
  std::vector<ExtremaPair> retained;
  std::vector<ExtremaPair> removed;
};

/// Rank used by Fraction: ascending persistence, ties by the sweep position of
/// the death (value, then index). A pair nested inside another pair of equal
/// persistence always dies first, so every rank prefix is closed under nesting
/// and can be flattened without disturbing the pairs that remain.
bool removal_order(const ExtremaPair& a, const ExtremaPair& b) noexcept;

/// Splits the diagram's pairs; both lists keep persistence_order.
PairSelection select_pairs(const PersistenceDiagram& diagram, const SimplifyPolicy& policy);

enum class Monotone { Increasing, Decreasing };

/// Least-squares monotone fit by pool-adjacent-violators, O(n).
std::vector<double> isotonic_fit(std::span<const double> values,
                                 Monotone direction = Monotone::Increasing);

/// Removes the selected extrema pairs and rebuilds the series.
///
/// Retained extrema and both boundary samples are kept verbatim. Between two
/// consecutive kept samples the input is replaced by its isotonic fit in the
/// direction of the two kept values, clipped into the closed interval they
/// span.
TimeSeries simplify(const TimeSeries& series, const SimplifyPolicy& policy,
                    PersistenceOptions options = {});

}  // namespace topolines
