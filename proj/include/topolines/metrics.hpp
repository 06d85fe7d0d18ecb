#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "topolines/persistence.hpp"
#include "topolines/series.hpp"

namespace topolines {

/// Sum of absolute pointwise differences. Throws on length mismatch.
double norm_l1(std::span<const double> a, std::span<const double> b);
double norm_l1(const TimeSeries& a, const TimeSeries& b);

/// Largest absolute pointwise difference. Throws on length mismatch.
double norm_linf(std::span<const double> a, std::span<const double> b);
double norm_linf(const TimeSeries& a, const TimeSeries& b);

/// Off-diagonal point of a persistence diagram.
struct DiagramPoint {
  double birth = 0.0;
  double death = 0.0;
  double persistence() const noexcept { return death - birth; }
};

/// Finite pairs as (birth value, death value); the essential class is dropped.
std::vector<DiagramPoint> points_of(const PersistenceDiagram& diagram);

/// One matched edge. An empty side means the diagonal.
struct MatchedPair {
  std::optional<std::size_t> first;
  std::optional<std::size_t> second;
  double cost = 0.0;
};

struct Matching {
  std::vector<MatchedPair> pairs;
  double total_cost = 0.0;  // sum for W1, max for bottleneck
};

/// Exact 1-Wasserstein distance with l1 ground cost; a point's distance to
/// the diagonal is its persistence.
Matching wasserstein1_matching(std::span<const DiagramPoint> a, std::span<const DiagramPoint> b);
double wasserstein1(std::span<const DiagramPoint> a, std::span<const DiagramPoint> b);

/// Exact bottleneck distance with l-infinity ground cost; a point's distance
/// to the diagonal is half its persistence.
Matching bottleneck_matching(std::span<const DiagramPoint> a, std::span<const DiagramPoint> b);
double bottleneck(std::span<const DiagramPoint> a, std::span<const DiagramPoint> b);

/// Pincus approximate entropy, self-matches included:
/// Phi^m(r) - Phi^{m+1}(r) with Chebyshev template distance.
double approx_entropy(std::span<const double> values, int m, double r);
double approx_entropy(const TimeSeries& series, int m, double r);

/// r = factor * sample standard deviation (n - 1 denominator).
double entropy_tolerance(std::span<const double> values, double factor = 0.2);

}  // namespace topolines
