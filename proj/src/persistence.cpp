#include "topolines/persistence.hpp"

#include <algorithm>
#include <limits>

#include "topolines/union_find.hpp"

namespace topolines {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A vertex of the extrema-only path, possibly virtual.
struct SweepVertex {
  double value = 0.0;
  long long order = 0;  // tie-break key; sample index, or -1 / n for virtual ends
  std::optional<std::size_t> sample;
  ExtremumKind kind = ExtremumKind::LocalMin;
};

struct Component {
  std::size_t min_vertex = 0;
  std::size_t top_node = 0;
};

bool younger(const SweepVertex& a, const SweepVertex& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.order > b.order;
}

PersistenceResult run(std::span<const double> values, PersistenceOptions options) {
  auto violations = validate(values);
  if (!violations.empty()) throw ValidationError("compute_persistence: " + violations.front());

  const auto extrema = classify_extrema(values);
  const auto n = static_cast<long long>(values.size());

  // +inf neighbours of boundary minima are never swept before their single
  // neighbour and so never merge anything; only -inf neighbours are materialised.
  std::vector<SweepVertex> path;
  path.reserve(extrema.size() + 2);
  const bool augmented = options.boundary == BoundaryRule::Augmented;
  if (augmented && extrema.size() > 1 && extrema.front().kind == ExtremumKind::LocalMax) {
    path.push_back({-kInf, -1, std::nullopt, ExtremumKind::LocalMin});
  }
  for (const auto& e : extrema) {
    path.push_back({values[e.index], static_cast<long long>(e.index), e.index, e.kind});
  }
  if (augmented && extrema.size() > 1 && extrema.back().kind == ExtremumKind::LocalMax) {
    path.push_back({-kInf, n, std::nullopt, ExtremumKind::LocalMin});
  }

  std::vector<std::size_t> order(path.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return younger(path[b], path[a]); });

  PersistenceResult result;
  auto& tree = result.tree;
  auto& diagram = result.diagram;
  auto add_node = [&](double f, std::optional<std::size_t> sample, MergeNodeKind kind) {
    MergeTreeNode node;
    node.id = tree.nodes.size();
    node.f_value = f;
    node.sample_index = sample;
    node.kind = kind;
    tree.nodes.push_back(std::move(node));
    return tree.nodes.back().id;
  };

  DisjointSet dsu(path.size());
  std::vector<Component> comp(path.size());
  std::vector<std::size_t> leaf_of(path.size(), 0);
  std::vector<bool> swept(path.size(), false);

  for (std::size_t v : order) {
    const auto& vertex = path[v];
    swept[v] = true;
    if (vertex.kind == ExtremumKind::LocalMin) {
      leaf_of[v] = add_node(vertex.value, vertex.sample, MergeNodeKind::Leaf);
      comp[v] = {v, leaf_of[v]};
      continue;
    }

    // A maximum's path neighbours are minima with strictly smaller values.
    std::vector<std::size_t> roots;
    if (v > 0 && swept[v - 1]) roots.push_back(dsu.find(v - 1));
    if (v + 1 < path.size() && swept[v + 1]) roots.push_back(dsu.find(v + 1));

    if (roots.size() < 2) {
      // Boundary maximum under the open rule: extends a component, kills none.
      if (!roots.empty()) dsu.unite(roots.front(), v);
      diagram.unpaired_max_indices.push_back(*vertex.sample);
      continue;
    }

    Component a = comp[roots[0]];
    Component b = comp[roots[1]];
    if (younger(path[a.min_vertex], path[b.min_vertex])) std::swap(a, b);
    // b now holds the younger component, which dies here.

    const std::size_t merge = add_node(vertex.value, vertex.sample, MergeNodeKind::Merge);
    for (std::size_t child : {a.top_node, b.top_node}) {
      tree.nodes[child].parent = merge;
      tree.nodes[merge].children.push_back(child);
    }
    tree.nodes[merge].paired_leaf = leaf_of[b.min_vertex];

    const auto& dying = path[b.min_vertex];
    if (dying.sample) {
      diagram.pairs.push_back({*dying.sample, *vertex.sample, dying.value, vertex.value,
                               vertex.value - dying.value});
    } else {
      diagram.unpaired_max_indices.push_back(*vertex.sample);
    }

    std::size_t root = dsu.unite(roots[0], roots[1]);
    root = dsu.unite(root, v);
    comp[root] = {a.min_vertex, merge};
  }

  const std::size_t last = dsu.find(order.front());
  const std::size_t root = add_node(kInf, std::nullopt, MergeNodeKind::Root);
  tree.nodes[comp[last].top_node].parent = root;
  tree.nodes[root].children.push_back(comp[last].top_node);
  tree.root = root;

  // Leftmost global minimum.
  diagram.essential_min_index = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  std::sort(diagram.pairs.begin(), diagram.pairs.end(), persistence_order);
  std::sort(diagram.unpaired_max_indices.begin(), diagram.unpaired_max_indices.end());
  return result;
}

}  // namespace

bool persistence_order(const ExtremaPair& a, const ExtremaPair& b) noexcept {
  if (a.persistence != b.persistence) return a.persistence < b.persistence;
  return a.birth_index < b.birth_index;
}

std::size_t MergeTree::count(MergeNodeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [&](const auto& n) { return n.kind == kind; }));
}

PersistenceResult compute_persistence(const TimeSeries& series, PersistenceOptions options) {
  return run(series.values(), options);
}

PersistenceDiagram diagram_of(std::span<const double> values, PersistenceOptions options) {
  return run(values, options).diagram;
}

}  // namespace topolines
