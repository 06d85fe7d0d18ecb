#pragma once

#include <cstddef>
#include <vector>

namespace topolines {

/// Dense square cost matrix, row-major.
struct CostMatrix {
  std::size_t n = 0;
  std::vector<double> cost;
  double operator()(std::size_t r, std::size_t c) const { return cost[r * n + c]; }
};

/// Minimum-cost perfect matching (Hungarian method with potentials, O(n^3)).
/// Returns the column assigned to each row.
std::vector<std::size_t> solve_assignment(const CostMatrix& m);

/// Maximum bipartite matching by Hopcroft-Karp. `adjacency[r]` lists the
/// columns reachable from row r. Returns the matched column per row, or
/// `unmatched` for rows left free.
inline constexpr std::size_t unmatched = static_cast<std::size_t>(-1);
std::vector<std::size_t> max_bipartite_matching(const std::vector<std::vector<std::size_t>>& adjacency,
                                                std::size_t columns);

}  // namespace topolines
