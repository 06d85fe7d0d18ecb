#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "topolines/assignment.hpp"
#include "topolines/metrics.hpp"
#include "topolines/simplify.hpp"

using namespace topolines;

namespace {

std::vector<DiagramPoint> random_diagram(std::mt19937_64& rng, std::size_t max_points) {
  std::uniform_real_distribution<double> u(-2, 2), len(0.01, 3);
  std::vector<DiagramPoint> d(rng() % (max_points + 1));
  for (auto& p : d) {
    p.birth = u(rng);
    p.death = p.birth + len(rng);
  }
  return d;
}

std::vector<oracle::Point> to_oracle(const std::vector<DiagramPoint>& d) {
  std::vector<oracle::Point> out;
  for (auto p : d) out.push_back({p.birth, p.death});
  return out;
}

}  // namespace

TEST_CASE("residual norms") {
  const std::vector<double> a{1, 2, 3}, b{1, 3, 5};
  CHECK(norm_l1(a, a) == 0);
  CHECK(norm_l1(a, b) == 3);
  CHECK(norm_l1(b, a) == 3);
  CHECK(norm_linf(a, a) == 0);
  CHECK(norm_linf(a, b) == 2);
  CHECK(norm_linf(a, b) <= norm_l1(a, b));
  CHECK_THROWS_AS(norm_l1(a, std::vector<double>{1, 2}), ValidationError);
  CHECK_THROWS_AS(norm_linf(a, std::vector<double>{1, 2}), ValidationError);
  CHECK(norm_l1(TimeSeries(a), TimeSeries(b)) == 3);
}

TEST_CASE("diagram distance examples") {
  const std::vector<DiagramPoint> one{{0, 4}}, none{}, two{{0, 2}}, three{{0, 3}};
  CHECK(wasserstein1(one, one) == 0);
  CHECK(bottleneck(one, one) == 0);
  CHECK(wasserstein1(one, none) == 4);
  CHECK(bottleneck(one, none) == 2);
  CHECK(wasserstein1(two, three) == 1);
  CHECK(bottleneck(two, three) == 1);
  CHECK(wasserstein1(none, none) == 0);
  CHECK(bottleneck(none, none) == 0);

  const auto m = wasserstein1_matching(two, three);
  REQUIRE(m.pairs.size() == 1);
  CHECK(m.pairs[0].first == 0u);
  CHECK(m.pairs[0].second == 0u);

  const auto diag = bottleneck_matching(one, none);
  REQUIRE(diag.pairs.size() == 1);
  CHECK_FALSE(diag.pairs[0].second.has_value());
  CHECK_THROWS_AS(wasserstein1(std::vector<DiagramPoint>{{1, 0}}, none), ValidationError);
}

TEST_CASE("distances match the exhaustive oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const auto a = random_diagram(rng, 5), b = random_diagram(rng, 5);
    CHECK(std::abs(wasserstein1(a, b) - oracle::exhaustive_distance(to_oracle(a), to_oracle(b), false)) <= 1e-9);
    CHECK(std::abs(bottleneck(a, b) - oracle::exhaustive_distance(to_oracle(a), to_oracle(b), true)) <= 1e-9);
  }
}

TEST_CASE("distance axioms") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_diagram(rng, 4), b = random_diagram(rng, 4), c = random_diagram(rng, 4);
    for (auto dist : {&wasserstein1, &bottleneck}) {
      const double ab = dist(a, b), ba = dist(b, a);
      CHECK(std::abs(ab - ba) <= 1e-9);
      CHECK(ab >= 0);
      CHECK(dist(a, a) == 0);
      CHECK(ab <= dist(a, c) + dist(c, b) + 1e-9);
    }
    CHECK(bottleneck(a, b) <= wasserstein1(a, b) + 1e-12);
    if (!a.empty() || !b.empty()) {
      // Distinct multisets (continuous draws) are at positive distance.
      CHECK(wasserstein1(a, b) > 0);
      CHECK(bottleneck(a, b) > 0);
    }
  }
}

TEST_CASE("matchings cover every off-diagonal point once") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_diagram(rng, 8), b = random_diagram(rng, 8);
    for (const auto& m : {wasserstein1_matching(a, b), bottleneck_matching(a, b)}) {
      std::vector<int> seen_a(a.size()), seen_b(b.size());
      for (const auto& p : m.pairs) {
        CHECK((p.first || p.second));
        if (p.first) ++seen_a[*p.first];
        if (p.second) ++seen_b[*p.second];
      }
      for (int s : seen_a) CHECK(s == 1);
      for (int s : seen_b) CHECK(s == 1);
    }
  }
}

TEST_CASE("assignment solver matches brute force on small matrices") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    CostMatrix m{n, std::vector<double>(n * n)};
    for (auto& c : m.cost) c = u(rng);
    const auto a = solve_assignment(m);
    double got = 0;
    for (std::size_t r = 0; r < n; ++r) got += m(r, a[r]);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
      double s = 0;
      for (std::size_t r = 0; r < n; ++r) s += m(r, perm[r]);
      best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(std::abs(got - best) <= 1e-9);
  }
}

TEST_CASE("bipartite matching finds maximum cardinality") {
  // Rows 0 and 1 both only reach column 0.
  const auto partial = max_bipartite_matching({{0}, {0}, {1, 2}}, 3);
  CHECK(std::count(partial.begin(), partial.end(), unmatched) == 1);
  const auto m = max_bipartite_matching({{0, 1}, {0}, {1, 2}}, 3);
  CHECK(m == std::vector<std::size_t>{1, 0, 2});
}

TEST_CASE("approximate entropy") {
  const std::vector<double> constant(40, 3.0);
  CHECK(approx_entropy(constant, 2, 0.1) == 0);
  CHECK(approx_entropy(constant, 1, 5.0) == 0);

  std::vector<double> periodic(64), noise(64);
  for (std::size_t i = 0; i < 64; ++i) periodic[i] = i % 2 ? 2.0 : 1.0;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0, 3);
  for (auto& v : noise) v = u(rng);
  const double ap = approx_entropy(periodic, 2, 0.5);
  CHECK(ap == doctest::Approx(oracle::apen(periodic, 2, 0.5)).epsilon(1e-12));
  CHECK(ap < approx_entropy(noise, 2, 0.5));
  CHECK(approx_entropy(noise, 2, 0.5) == doctest::Approx(oracle::apen(noise, 2, 0.5)).epsilon(1e-12));

  auto shifted = noise;
  for (auto& v : shifted) v += 0.25;  // exact in binary
  CHECK(approx_entropy(shifted, 2, 0.5) == doctest::Approx(approx_entropy(noise, 2, 0.5)).epsilon(1e-12));

  for (int m : {1, 2, 3}) {
    std::vector<double> x(30);
    for (auto& v : x) v = u(rng);
    CHECK(approx_entropy(x, m, 0.4) == doctest::Approx(oracle::apen(x, m, 0.4)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(approx_entropy(noise, 2, 0.0), ValidationError);
  CHECK_THROWS_AS(approx_entropy(noise, 0, 0.5), ValidationError);
  CHECK_THROWS_AS(approx_entropy(std::vector<double>{1, 2, 3}, 2, 0.5), ValidationError);

  CHECK(entropy_tolerance(std::vector<double>{1, 3}) == doctest::Approx(0.2 * std::sqrt(2.0)));
}

TEST_CASE("topological smoothing moves the diagram by less than t/2") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3, 3), ut(0, 4);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> x(2 + rng() % 40);
    for (auto& v : x) v = u(rng);
    const double t = ut(rng);
    const auto before = points_of(diagram_of(x));
    const auto y = simplify(TimeSeries(x), Threshold{t});
    const auto after = points_of(diagram_of(y.values()));
    CHECK(bottleneck(before, after) <= t / 2);
  }
}
