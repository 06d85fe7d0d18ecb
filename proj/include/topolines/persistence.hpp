#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "topolines/series.hpp"

namespace topolines {

/// How boundary extrema enter the filtration.
enum class BoundaryRule {
  /// Plain sublevel-set sweep of the path. A boundary maximum never merges
  /// two components, so it stays unpaired.
  Open,
  /// A boundary minimum gets a +inf neighbour and a boundary maximum a -inf
  /// neighbour, so the boundary maximum merges with a virtual component and
  /// is paired like an interior one. Pairs born at a virtual vertex are not
  /// reported.
  Augmented,
};

struct PersistenceOptions {
  BoundaryRule boundary = BoundaryRule::Open;
};

/// One (local minimum, local maximum) pair.
struct ExtremaPair {
  std::size_t birth_index = 0;
  std::size_t death_index = 0;
  double birth_value = 0.0;
  double death_value = 0.0;
  double persistence = 0.0;  // death_value - birth_value, always > 0

  friend bool operator==(const ExtremaPair&, const ExtremaPair&) = default;
};

/// Orders by ascending persistence, ties by ascending birth index.
bool persistence_order(const ExtremaPair& a, const ExtremaPair& b) noexcept;

struct PersistenceDiagram {
  /// Finite pairs in persistence_order.
  std::vector<ExtremaPair> pairs;
  /// Leftmost global minimum; its component never dies.
  std::size_t essential_min_index = 0;
  /// Maxima that close no finite pair (infinite persistence), ascending.
  std::vector<std::size_t> unpaired_max_indices;
};

enum class MergeNodeKind { Leaf, Merge, Root };

struct MergeTreeNode {
  std::size_t id = 0;
  double f_value = 0.0;
  /// Absent for virtual vertices and for the root.
  std::optional<std::size_t> sample_index;
  MergeNodeKind kind = MergeNodeKind::Leaf;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  /// For Merge nodes: the leaf whose component dies here.
  std::optional<std::size_t> paired_leaf;
};

/// Sublevel-set merge tree. Leaves sit at minima, merge nodes at maxima that
/// join two components, and a single Root at +inf caps the last component.
struct MergeTree {
  std::vector<MergeTreeNode> nodes;
  std::size_t root = 0;

  std::size_t count(MergeNodeKind kind) const;
};

struct PersistenceResult {
  PersistenceDiagram diagram;
  MergeTree tree;
};

/// 0-dimensional persistence of the lower-star filtration of a series.
///
/// Only extrema enter the sweep, so the cost is O(n + m log m) for m extrema.
/// Extrema are swept by ascending value, ties by ascending index; at each
/// merge the minimum with the larger (value, index) key dies.
PersistenceResult compute_persistence(const TimeSeries& series,
                                      PersistenceOptions options = {});

PersistenceDiagram diagram_of(std::span<const double> values,
                              PersistenceOptions options = {});

}  // namespace topolines
