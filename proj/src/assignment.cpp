#include "topolines/assignment.hpp"

#include <limits>
#include <queue>

namespace topolines {

std::vector<std::size_t> solve_assignment(const CostMatrix& m) {
  const std::size_t n = m.n;
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; column 0 is the virtual source.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    owner[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t r0 = owner[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double cur = m(r0 - 1, c - 1) - u[r0] - v[c];
        if (cur < minv[c]) {
          minv[c] = cur;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[owner[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (owner[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      owner[col0] = owner[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t c = 1; c <= n; ++c) assignment[owner[c] - 1] = c - 1;
  return assignment;
}

std::vector<std::size_t> max_bipartite_matching(const std::vector<std::vector<std::size_t>>& adjacency,
                                                std::size_t columns) {
  const std::size_t rows = adjacency.size();
  const std::size_t inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> row_match(rows, unmatched), col_match(columns, unmatched), dist(rows);

  auto bfs = [&] {
    std::queue<std::size_t> q;
    bool reachable_free = false;
    for (std::size_t r = 0; r < rows; ++r) {
      dist[r] = row_match[r] == unmatched ? 0 : inf;
      if (dist[r] == 0) q.push(r);
    }
    while (!q.empty()) {
      const std::size_t r = q.front();
      q.pop();
      for (std::size_t c : adjacency[r]) {
        const std::size_t next = col_match[c];
        if (next == unmatched) {
          reachable_free = true;
        } else if (dist[next] == inf) {
          dist[next] = dist[r] + 1;
          q.push(next);
        }
      }
    }
    return reachable_free;
  };

  // Iterative DFS along the BFS layering.
  std::vector<std::size_t> edge_cursor(rows);
  auto augment = [&](std::size_t start) {
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
      const std::size_t r = stack.back();
      bool advanced = false;
      while (edge_cursor[r] < adjacency[r].size()) {
        const std::size_t c = adjacency[r][edge_cursor[r]];
        const std::size_t next = col_match[c];
        if (next == unmatched) {
          // Flip the alternating path held on the stack.
          std::size_t col = c;
          for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            const std::size_t prev = row_match[*it];
            row_match[*it] = col;
            col_match[col] = *it;
            col = prev;
          }
          return true;
        }
        if (dist[next] == dist[r] + 1) {
          stack.push_back(next);
          advanced = true;
          break;
        }
        ++edge_cursor[r];
      }
      if (!advanced) {
        dist[r] = inf;
        stack.pop_back();
        if (!stack.empty()) ++edge_cursor[stack.back()];
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(edge_cursor.begin(), edge_cursor.end(), 0);
    for (std::size_t r = 0; r < rows; ++r)
      if (row_match[r] == unmatched) augment(r);
  }
  return row_match;
}

}  // namespace topolines
