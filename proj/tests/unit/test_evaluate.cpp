#include <cmath>

#include "doctest.h"
#include "support/oracles.hpp"
#include "topolines/evaluate.hpp"
#include "topolines/metrics.hpp"
#include "topolines/synthetic.hpp"

using namespace topolines;

namespace {

std::vector<oracle::Point> oracle_points(const std::vector<double>& v) {
  std::vector<oracle::Point> out;
  for (const auto& p : oracle::sublevel_tracker(v, false).pairs) out.push_back({p.birth_value, p.death_value});
  return out;
}

MethodScore scored(std::string method, std::optional<double> area) {
  MethodScore s;
  s.method = std::move(method);
  s.auc = area;
  if (area) s.fit = FitLine{};
  return s;
}

int rank_of(const RankReport& r, Metric m, const std::string& method) {
  for (const auto& s : r.per_metric.at(m))
    if (s.method == method) return s.rank;
  FAIL("method missing: " << method);
  return 0;
}

}  // namespace

TEST_CASE("sweep scores identity settings as zero error") {
  const TimeSeries x = generate_synthetic(SyntheticKind::NoisySine, 64, 3);
  const auto settings = entropy_settings_for(x);
  const auto result = sweep(x, {Threshold{0.0}, Subsample{1}, Median{1}, Gaussian{0.0}}, settings);
  REQUIRE(result.failures.empty());
  REQUIRE(result.points.size() == 4);
  const double original_entropy = oracle::apen({x.values().begin(), x.values().end()}, 2, settings.r);
  for (const auto& p : result.points) {
    CAPTURE(p.method);
    CHECK(p.metrics.l1 == 0.0);
    CHECK(p.metrics.linf == 0.0);
    CHECK(p.metrics.w1 == 0.0);
    CHECK(p.metrics.bottleneck == 0.0);
    CHECK(p.entropy == doctest::Approx(original_entropy).epsilon(1e-12));
  }
  CHECK(result.points[0].method == "TopoLines");
}

TEST_CASE("sweep of a median filter against direct computation") {
  const TimeSeries x({0, 10, 0, 0}, {}, "bump");
  const auto settings = entropy_settings_for(x);
  CHECK(settings.r == doctest::Approx(1.0));
  const auto result = sweep(x, {Median{3}}, settings);
  REQUIRE(result.points.size() == 1);
  const auto& p = result.points[0];
  CHECK(p.method == "Median");
  CHECK(p.parameter == 3);
  CHECK(p.metrics.l1 == doctest::Approx(10));
  CHECK(p.metrics.linf == doctest::Approx(10));
  CHECK(p.entropy == doctest::Approx(oracle::apen({0, 0, 0, 0}, 2, 1.0)));
  const auto a = oracle_points({0, 10, 0, 0});
  const auto b = oracle_points({0, 0, 0, 0});
  CHECK(p.metrics.w1 == doctest::Approx(oracle::exhaustive_distance(a, b, false)));
  CHECK(p.metrics.bottleneck == doctest::Approx(oracle::exhaustive_distance(a, b, true)));
  CHECK(p.metrics.bottleneck == doctest::Approx(5));
}

TEST_CASE("sweep records failing cells and keeps going") {
  const TimeSeries x({1, 3, 2, 5, 4, 6}, {}, "short");
  const auto result = sweep(x, {Median{2}, Median{3}, Fraction{1.5}}, entropy_settings_for(x));
  CHECK(result.points.size() == 1);
  CHECK(result.failures.size() == 2);
}

TEST_CASE("fit_line examples") {
  auto f = fit_line({{0, 0}, {1, 2}});
  REQUIRE(f);
  CHECK(f->slope == doctest::Approx(2));
  CHECK(f->intercept == doctest::Approx(0));

  f = fit_line({{0, 1}, {1, 1}, {2, 1}});
  REQUIRE(f);
  CHECK(f->slope == doctest::Approx(0));
  CHECK(f->intercept == doctest::Approx(1));

  f = fit_line({{0, 0}, {1, 1}, {2, 1}});
  REQUIRE(f);
  CHECK(f->slope == doctest::Approx(0.5));
  CHECK(f->intercept == doctest::Approx(1.0 / 6.0));
  CHECK(f->entropy_min == 0);
  CHECK(f->entropy_max == 2);

  CHECK_FALSE(fit_line({{1, 0}, {1, 5}}));
  CHECK_FALSE(fit_line({{1, 0}}));
  CHECK_FALSE(fit_line({}));
}

TEST_CASE("auc examples") {
  CHECK(auc(FitLine{0, 3, 0, 0}, 0, 2) == doctest::Approx(6));
  CHECK(auc(FitLine{1, 0, 0, 0}, 0, 1) == doctest::Approx(0.5));
  // The negative half of 2x - 1 is clamped to zero.
  CHECK(auc(FitLine{2, -1, 0, 0}, 0, 1) == doctest::Approx(0.25));
  CHECK(auc(FitLine{-1, -1, 0, 0}, 0, 1) == 0.0);
  CHECK_THROWS_AS(auc(FitLine{1, 0, 0, 0}, 1, 1), EvaluationError);
  CHECK_THROWS_AS(auc(FitLine{1, 0, 0, 0}, 2, 1), EvaluationError);
}

TEST_CASE("rank_methods examples") {
  SUBCASE("ascending area with name tie-break") {
    std::map<Metric, std::vector<MethodScore>> scores;
    scores[Metric::L1] = {scored("B", 2.0), scored("C", 1.0), scored("A", 2.0)};
    const auto r = rank_methods("d", scores);
    CHECK(rank_of(r, Metric::L1, "C") == 1);
    CHECK(rank_of(r, Metric::L1, "A") == 2);
    CHECK(rank_of(r, Metric::L1, "B") == 3);
    CHECK(r.per_metric.at(Metric::L1).front().method == "C");
  }
  SUBCASE("unrankable methods go last") {
    std::map<Metric, std::vector<MethodScore>> scores;
    scores[Metric::L1] = {scored("A", std::nullopt), scored("B", 5.0), scored("C", 7.0)};
    const auto r = rank_methods("d", scores);
    CHECK(rank_of(r, Metric::L1, "B") == 1);
    CHECK(rank_of(r, Metric::L1, "C") == 2);
    CHECK(rank_of(r, Metric::L1, "A") == 4);
  }
  SUBCASE("overall rank averages the four metrics") {
    std::map<Metric, std::vector<MethodScore>> scores;
    scores[Metric::L1] = {scored("A", 1.0), scored("B", 2.0)};
    scores[Metric::Linf] = {scored("A", 1.0), scored("B", 2.0)};
    scores[Metric::W1] = {scored("A", 2.0), scored("B", 1.0)};
    scores[Metric::Bottleneck] = {scored("A", 2.0), scored("B", 1.0)};
    const auto r = rank_methods("d", scores);
    CHECK(r.overall_rank.at("A") == doctest::Approx(1.5));
    CHECK(r.overall_rank.at("B") == doctest::Approx(1.5));
  }
  SUBCASE("ranks ignore positive rescaling of areas") {
    std::map<Metric, std::vector<MethodScore>> a, b;
    const std::vector<std::pair<std::string, double>> values{{"P", 3.5}, {"Q", 0.25}, {"R", 9.0}};
    for (auto [name, v] : values) {
      a[Metric::W1].push_back(scored(name, v));
      b[Metric::W1].push_back(scored(name, v * 1e3));
    }
    const auto ra = rank_methods("d", a), rb = rank_methods("d", b);
    for (auto [name, v] : values) CHECK(rank_of(ra, Metric::W1, name) == rank_of(rb, Metric::W1, name));
  }
}

TEST_CASE("default grids") {
  const TimeSeries x = generate_synthetic(SyntheticKind::SpikeTrain, 1024, 7);
  for (const auto& method : all_methods()) {
    CAPTURE(method);
    const auto grid = default_grid(method, x);
    CHECK(grid.size() == 12);
    for (const auto& spec : grid) CHECK(method_name(spec) == method);
  }
  const auto cutoff = default_grid("Cutoff", x);
  CHECK(parameter_of(cutoff.front()) == 512);
  CHECK(parameter_of(cutoff.back()) == 1);
  CHECK_THROWS_AS(default_grid("Wavelet", x), ValidationError);
}

TEST_CASE("evaluation is invariant to scaling the data by a power of two") {
  const TimeSeries x = generate_synthetic(SyntheticKind::NoisySine, 128, 11);
  std::vector<double> scaled(x.values().begin(), x.values().end());
  for (double& v : scaled) v *= 4.0;
  const auto a = evaluate(x);
  const auto b = evaluate(TimeSeries(scaled, {}, x.label()));
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i)
    CHECK(a.points[i].entropy == doctest::Approx(b.points[i].entropy).epsilon(1e-9));
  for (Metric m : kMetrics)
    for (const auto& method : all_methods()) {
      CAPTURE(to_string(m));
      CAPTURE(method);
      CHECK(rank_of(a.report, m, method) == rank_of(b.report, m, method));
    }
}

TEST_CASE("evaluation is deterministic across thread counts") {
  const TimeSeries x = generate_synthetic(SyntheticKind::RandomWalk, 128, 5);
  EvaluationConfig one, four;
  four.threads = 4;
  const auto a = evaluate(x, one), b = evaluate(x, four);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].method == b.points[i].method);
    CHECK(a.points[i].parameter == b.points[i].parameter);
    CHECK(a.points[i].entropy == b.points[i].entropy);
    for (Metric m : kMetrics) CHECK(a.points[i].metrics[m] == b.points[i].metrics[m]);
  }
  CHECK(a.report.overall_rank == b.report.overall_rank);
}

TEST_CASE("evaluate validates its configuration") {
  const TimeSeries x = generate_synthetic(SyntheticKind::NoisySine, 64, 1);
  EvaluationConfig config;
  config.methods = {"Median"};
  CHECK_THROWS_AS(evaluate(x, config), ValidationError);
  config.methods = {"Median", "Gaussian"};
  config.grids["Median"] = {};
  CHECK_THROWS_AS(evaluate(x, config), ValidationError);
  CHECK_THROWS_AS(evaluate(TimeSeries({1, 1, 1, 1, 1}, {}, "flat")), ValidationError);
}
