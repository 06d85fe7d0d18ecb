#include "topolines/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "topolines/assignment.hpp"

namespace topolines {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw ValidationError("length mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
}

void check_points(std::span<const DiagramPoint> pts) {
  for (const auto& p : pts)
    if (!std::isfinite(p.birth) || !std::isfinite(p.death) || p.death < p.birth)
      throw ValidationError("diagram points must be finite with birth <= death");
}

double l1_cost(const DiagramPoint& p, const DiagramPoint& q) {
  return std::abs(p.birth - q.birth) + std::abs(p.death - q.death);
}

double linf_cost(const DiagramPoint& p, const DiagramPoint& q) {
  return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
}

// Augmented square problem: rows are a[0..na) then diagonal slots for b;
// columns are b[0..nb) then diagonal slots for a. Row i of a may only use
// its own diagonal slot nb + i, and column j of b only the row slot na + j.
struct Augmented {
  std::size_t na, nb;
  std::size_t size() const { return na + nb; }
  bool allowed(std::size_t r, std::size_t c) const {
    if (r < na && c >= nb) return c - nb == r;
    if (r >= na && c < nb) return r - na == c;
    return true;
  }
};

MatchedPair decode(const Augmented& g, std::size_t r, std::size_t c, double cost) {
  MatchedPair p;
  if (r < g.na) p.first = r;
  if (c < g.nb) p.second = c;
  p.cost = cost;
  return p;
}

}  // namespace

double norm_l1(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return total;
}

double norm_l1(const TimeSeries& a, const TimeSeries& b) { return norm_l1(a.values(), b.values()); }

double norm_linf(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double norm_linf(const TimeSeries& a, const TimeSeries& b) {
  return norm_linf(a.values(), b.values());
}

std::vector<DiagramPoint> points_of(const PersistenceDiagram& diagram) {
  std::vector<DiagramPoint> out;
  out.reserve(diagram.pairs.size());
  for (const auto& p : diagram.pairs) out.push_back({p.birth_value, p.death_value});
  return out;
}

Matching wasserstein1_matching(std::span<const DiagramPoint> a, std::span<const DiagramPoint> b) {
  check_points(a);
  check_points(b);
  const Augmented g{a.size(), b.size()};
  const std::size_t n = g.size();

  // Forbidden cells get a cost no optimal matching can afford.
  double big = 1.0;
  for (const auto& p : a) big += p.persistence();
  for (const auto& p : b) big += p.persistence();
  auto cell = [&](std::size_t r, std::size_t c) -> double {
    if (!g.allowed(r, c)) return big;
    if (r < g.na && c < g.nb) return l1_cost(a[r], b[c]);
    if (r < g.na) return a[r].persistence();
    if (c < g.nb) return b[c].persistence();
    return 0.0;
  };

  CostMatrix m{n, std::vector<double>(n * n)};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m.cost[r * n + c] = cell(r, c);

  Matching out;
  const auto assignment = solve_assignment(m);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t c = assignment[r];
    if (r >= g.na && c >= g.nb) continue;
    out.pairs.push_back(decode(g, r, c, cell(r, c)));
    out.total_cost += cell(r, c);
  }
  return out;
}

double wasserstein1(std::span<const DiagramPoint> a, std::span<const DiagramPoint> b) {
  return wasserstein1_matching(a, b).total_cost;
}

Matching bottleneck_matching(std::span<const DiagramPoint> a, std::span<const DiagramPoint> b) {
  check_points(a);
  check_points(b);
  const Augmented g{a.size(), b.size()};
  const std::size_t n = g.size();
  if (n == 0) return {};

  auto cell = [&](std::size_t r, std::size_t c) -> double {
    if (r < g.na && c < g.nb) return linf_cost(a[r], b[c]);
    if (r < g.na) return a[r].persistence() / 2.0;
    if (c < g.nb) return b[c].persistence() / 2.0;
    return 0.0;
  };

  std::vector<double> candidates{0.0};
  for (std::size_t r = 0; r < g.na; ++r)
    for (std::size_t c = 0; c < g.nb; ++c) candidates.push_back(cell(r, c));
  for (std::size_t r = 0; r < g.na; ++r) candidates.push_back(cell(r, g.nb + r));
  for (std::size_t c = 0; c < g.nb; ++c) candidates.push_back(cell(g.na + c, c));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto match_within = [&](double limit) {
    std::vector<std::vector<std::size_t>> adjacency(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (g.allowed(r, c) && cell(r, c) <= limit) adjacency[r].push_back(c);
    return max_bipartite_matching(adjacency, n);
  };
  auto perfect = [](const std::vector<std::size_t>& m) {
    return std::none_of(m.begin(), m.end(), [](std::size_t c) { return c == unmatched; });
  };

  // Matching every point to the diagonal is always feasible, so the largest
  // candidate succeeds.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect(match_within(candidates[mid]))) hi = mid;
    else lo = mid + 1;
  }

  Matching out;
  const auto assignment = match_within(candidates[lo]);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t c = assignment[r];
    if (r >= g.na && c >= g.nb) continue;
    out.pairs.push_back(decode(g, r, c, cell(r, c)));
    out.total_cost = std::max(out.total_cost, cell(r, c));
  }
  return out;
}

double bottleneck(std::span<const DiagramPoint> a, std::span<const DiagramPoint> b) {
  return bottleneck_matching(a, b).total_cost;
}

double approx_entropy(std::span<const double> x, int m, double r) {
  if (m < 1) throw ValidationError("approx_entropy: m must be >= 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("approx_entropy: r must be > 0");
  const auto len = static_cast<std::size_t>(m);
  if (x.size() <= len + 1) throw ValidationError("approx_entropy: series too short for m");

  // Count template matches for lengths m and m+1 in one pass: a pair within
  // r at length m+1 is also within r at length m.
  const std::size_t count_m = x.size() - len + 1;
  const std::size_t count_m1 = x.size() - len;
  std::vector<std::size_t> close_m(count_m, 0), close_m1(count_m1, 0);
  for (std::size_t i = 0; i < count_m; ++i) {
    for (std::size_t j = i; j < count_m; ++j) {
      double d = 0.0;
      for (std::size_t k = 0; k < len && d <= r; ++k) d = std::max(d, std::abs(x[i + k] - x[j + k]));
      if (d > r) continue;
      ++close_m[i];
      if (i != j) ++close_m[j];
      if (j < count_m1 && std::abs(x[i + len] - x[j + len]) <= r) {
        ++close_m1[i];
        if (i != j) ++close_m1[j];
      }
    }
  }
  auto phi = [](const std::vector<std::size_t>& close) {
    double total = 0.0;
    const auto count = static_cast<double>(close.size());
    for (std::size_t c : close) total += std::log(static_cast<double>(c) / count);
    return total / count;
  };
  return phi(close_m) - phi(close_m1);
}

double approx_entropy(const TimeSeries& series, int m, double r) {
  return approx_entropy(series.values(), m, r);
}

double entropy_tolerance(std::span<const double> x, double factor) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return factor * std::sqrt(ss / static_cast<double>(x.size() - 1));
}

}  // namespace topolines
