#include "topolines/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace topolines {

void check_policy(const SimplifyPolicy& policy) {
  std::visit(
      [](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Threshold>) {
          if (!std::isfinite(p.t) || p.t < 0.0)
            throw ValidationError("threshold must be finite and >= 0");
        } else {
          if (!(p.q >= 0.0 && p.q <= 1.0)) throw ValidationError("fraction must lie in [0, 1]");
        }
      },
      policy);
}

bool removal_order(const ExtremaPair& a, const ExtremaPair& b) noexcept {
  if (a.persistence != b.persistence) return a.persistence < b.persistence;
  if (a.death_value != b.death_value) return a.death_value < b.death_value;
  return a.death_index < b.death_index;
}

PairSelection select_pairs(const PersistenceDiagram& diagram, const SimplifyPolicy& policy) {
  check_policy(policy);
  std::vector<ExtremaPair> ranked = diagram.pairs;
  std::sort(ranked.begin(), ranked.end(), removal_order);

  PairSelection out;
  if (const auto* th = std::get_if<Threshold>(&policy)) {
    for (const auto& p : ranked) (p.persistence < th->t ? out.removed : out.retained).push_back(p);
  } else {
    const double q = std::get<Fraction>(policy).q;
    const auto cut = static_cast<std::size_t>(std::floor(q * static_cast<double>(ranked.size())));
    out.removed.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(cut));
    out.retained.assign(ranked.begin() + static_cast<std::ptrdiff_t>(cut), ranked.end());
  }
  std::sort(out.removed.begin(), out.removed.end(), persistence_order);
  std::sort(out.retained.begin(), out.retained.end(), persistence_order);
  return out;
}

std::vector<double> isotonic_fit(std::span<const double> values, Monotone direction) {
  if (values.empty()) throw ValidationError("isotonic_fit: empty input");
  const double sign = direction == Monotone::Increasing ? 1.0 : -1.0;

  // Stack of pooled blocks: running sum and length.
  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());
  for (double v : values) {
    blocks.push_back({sign * v, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
      Block top = blocks.back();
      blocks.pop_back();
      blocks.back().sum += top.sum;
      blocks.back().count += top.count;
    }
  }

  std::vector<double> fitted;
  fitted.reserve(values.size());
  for (const auto& b : blocks) fitted.insert(fitted.end(), b.count, sign * b.mean());
  return fitted;
}

namespace {

// Monotone reconstruction between consecutive anchors.
void reconstruct(std::span<const double> input, std::span<const std::size_t> anchors,
                 std::vector<double>& out) {
  for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
    const std::size_t lo = anchors[k];
    const std::size_t hi = anchors[k + 1];
    if (hi - lo < 2) continue;
    const double a = input[lo];
    const double b = input[hi];
    const auto fit = isotonic_fit(input.subspan(lo, hi - lo + 1),
                                  a <= b ? Monotone::Increasing : Monotone::Decreasing);
    const double floor_v = std::min(a, b);
    const double ceil_v = std::max(a, b);
    for (std::size_t i = lo + 1; i < hi; ++i) out[i] = std::clamp(fit[i - lo], floor_v, ceil_v);
  }
}

}  // namespace

TimeSeries simplify(const TimeSeries& series, const SimplifyPolicy& policy,
                    PersistenceOptions options) {
  const auto values = series.values();
  const auto diagram = diagram_of(values, options);
  const auto selection = select_pairs(diagram, policy);

  std::vector<double> out(values.begin(), values.end());
  if (selection.removed.empty()) return series.with_values(std::move(out));

  std::unordered_set<std::size_t> dropped;
  for (const auto& p : selection.removed) {
    dropped.insert(p.birth_index);
    dropped.insert(p.death_index);
  }
  std::vector<std::size_t> anchors{0, values.size() - 1};
  for (const auto& e : classify_extrema(values)) {
    if (!dropped.contains(e.index)) anchors.push_back(e.index);
  }
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

  reconstruct(values, anchors, out);
  return series.with_values(std::move(out));
}

}  // namespace topolines
