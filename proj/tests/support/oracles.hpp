// Independent reference implementations used only by tests. None of these
// call into the library's algorithms; they trade speed for obviousness.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

namespace oracle {

enum class Kind { Min, Max };

struct Extremum {
  std::size_t index;
  Kind kind;
  bool boundary;
  std::size_t span_first, span_last;
};

// Neighbour comparison over the run-collapsed series.
inline std::vector<Extremum> extrema(const std::vector<double>& v) {
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i == 0 || v[i] != v[i - 1]) starts.push_back(i);
  const std::size_t runs = starts.size();
  auto end_of = [&](std::size_t r) { return r + 1 < runs ? starts[r + 1] - 1 : v.size() - 1; };
  std::vector<Extremum> out;
  if (runs == 1) return {{0, Kind::Min, true, 0, v.size() - 1}};
  for (std::size_t r = 0; r < runs; ++r) {
    const double x = v[starts[r]];
    const bool below_left = r == 0 || v[starts[r - 1]] > x;
    const bool below_right = r + 1 == runs || v[starts[r + 1]] > x;
    const bool above_left = r == 0 || v[starts[r - 1]] < x;
    const bool above_right = r + 1 == runs || v[starts[r + 1]] < x;
    const bool boundary = r == 0 || r + 1 == runs;
    if (below_left && below_right)
      out.push_back({starts[r], Kind::Min, boundary, starts[r], end_of(r)});
    else if (above_left && above_right)
      out.push_back({starts[r], Kind::Max, boundary, starts[r], end_of(r)});
  }
  return out;
}

struct Pair {
  std::size_t birth, death;
  double birth_value, death_value;
  auto operator<=>(const Pair&) const = default;
};

struct Diagram {
  std::vector<Pair> pairs;  // sorted by operator<
  std::vector<std::size_t> unpaired_max;
};

// Sweeps every vertex of the run-collapsed (optionally -inf augmented) path
// and recomputes the connected components of the sublevel set from scratch
// after each insertion. A component is identified by its oldest vertex.
inline Diagram sublevel_tracker(const std::vector<double>& input, bool augmented) {
  struct Vertex {
    double value;
    long long key;
    std::optional<std::size_t> sample;
  };
  std::vector<Vertex> path;
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < input.size(); ++i)
    if (i == 0 || input[i] != input[i - 1]) starts.push_back(i);
  const double ninf = -std::numeric_limits<double>::infinity();
  const auto n = static_cast<long long>(input.size());
  const bool left_max = starts.size() > 1 && input[starts[0]] > input[starts[1]];
  const bool right_max =
      starts.size() > 1 && input[starts.back()] > input[starts[starts.size() - 2]];
  if (augmented && left_max) path.push_back({ninf, -1, std::nullopt});
  for (auto s : starts) path.push_back({input[s], static_cast<long long>(s), s});
  if (augmented && right_max) path.push_back({ninf, n, std::nullopt});

  auto older = [&](std::size_t a, std::size_t b) {
    return std::tie(path[a].value, path[a].key) < std::tie(path[b].value, path[b].key);
  };
  std::vector<std::size_t> order(path.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), older);

  std::vector<bool> active(path.size(), false);
  // Oldest member of every component: runs of consecutive active vertices.
  auto components = [&] {
    std::vector<std::size_t> oldest(path.size(), SIZE_MAX);
    for (std::size_t i = 0; i < path.size();) {
      if (!active[i]) { ++i; continue; }
      std::size_t j = i, best = i;
      while (j < path.size() && active[j]) {
        if (older(j, best)) best = j;
        ++j;
      }
      for (std::size_t k = i; k < j; ++k) oldest[k] = best;
      i = j;
    }
    return oldest;
  };

  Diagram d;
  for (std::size_t v : order) {
    const auto before = components();
    active[v] = true;
    const auto after = components();
    std::vector<std::size_t> merged;
    for (std::size_t i = 0; i < path.size(); ++i)
      if (i != v && before[i] != SIZE_MAX && after[i] == after[v] &&
          std::find(merged.begin(), merged.end(), before[i]) == merged.end())
        merged.push_back(before[i]);
    if (merged.size() == 2) {
      const std::size_t dying = older(merged[0], merged[1]) ? merged[1] : merged[0];
      if (path[dying].sample)
        d.pairs.push_back({*path[dying].sample, *path[v].sample, path[dying].value, path[v].value});
      else
        d.unpaired_max.push_back(*path[v].sample);
    } else if (merged.size() == 1 && path[v].sample) {
      // A maximum at the path's end that only extends one component.
      const std::size_t s = *path[v].sample;
      const bool at_end = v == 0 || v + 1 == path.size();
      const bool is_peak = (v == 0 || path[v - 1].value < path[v].value) &&
                           (v + 1 == path.size() || path[v + 1].value < path[v].value);
      if (at_end && is_peak) d.unpaired_max.push_back(s);
    }
  }
  std::sort(d.pairs.begin(), d.pairs.end());
  std::sort(d.unpaired_max.begin(), d.unpaired_max.end());
  return d;
}

// Exact least-squares monotone (non-decreasing) projection restricted to a
// discrete value grid, by dynamic programming over (position, grid level).
// Returns the minimum sum of squared errors.
inline double monotone_projection_sse(const std::vector<double>& x, const std::vector<double>& grid) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(grid.size(), 0.0);
  for (double xi : x) {
    std::vector<double> next(grid.size(), inf);
    double prefix = inf;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      prefix = std::min(prefix, best[g]);
      next[g] = prefix + (xi - grid[g]) * (xi - grid[g]);
    }
    best = std::move(next);
  }
  return *std::min_element(best.begin(), best.end());
}

// Exhaustive matching oracle for persistence diagram distances. Every point
// of A is matched to a point of B or to the diagonal; leftover B points go to
// the diagonal. Enumerates all injective partial maps A -> B.
struct Point {
  double b, d;
};

inline double exhaustive_distance(const std::vector<Point>& A, const std::vector<Point>& B,
                                  bool bottleneck) {
  const auto l1 = [](Point p, Point q) { return std::abs(p.b - q.b) + std::abs(p.d - q.d); };
  const auto linf = [](Point p, Point q) { return std::max(std::abs(p.b - q.b), std::abs(p.d - q.d)); };
  const auto diag = [&](Point p) { return bottleneck ? (p.d - p.b) / 2 : (p.d - p.b); };
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> used(B.size(), false);
  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double acc) {
    if (i == A.size()) {
      double total = acc;
      for (std::size_t j = 0; j < B.size(); ++j)
        if (!used[j]) total = bottleneck ? std::max(total, diag(B[j])) : total + diag(B[j]);
      best = std::min(best, total);
      return;
    }
    rec(i + 1, bottleneck ? std::max(acc, diag(A[i])) : acc + diag(A[i]));
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      const double c = bottleneck ? linf(A[i], B[j]) : l1(A[i], B[j]);
      rec(i + 1, bottleneck ? std::max(acc, c) : acc + c);
      used[j] = false;
    }
  };
  rec(0, 0.0);
  return best;
}

// Approximate entropy straight from the definition.
inline double apen(const std::vector<double>& x, int m, double r) {
  auto phi = [&](int len) {
    const std::size_t count = x.size() - static_cast<std::size_t>(len) + 1;
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t close = 0;
      for (std::size_t j = 0; j < count; ++j) {
        double dist = 0.0;
        for (int k = 0; k < len; ++k) dist = std::max(dist, std::abs(x[i + k] - x[j + k]));
        if (dist <= r) ++close;
      }
      total += std::log(static_cast<double>(close) / static_cast<double>(count));
    }
    return total / static_cast<double>(count);
  };
  return phi(m) - phi(m + 1);
}

// Naive O(n^2) DFT.
inline std::vector<std::pair<double, double>> dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::pair<double, double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double re = 0, im = 0;
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = -2.0 * M_PI * static_cast<double>(k * t % n) / static_cast<double>(n);
      re += x[t] * std::cos(ang);
      im += x[t] * std::sin(ang);
    }
    out[k] = {re, im};
  }
  return out;
}

}  // namespace oracle
