#include "topolines/filters.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <queue>

namespace topolines {

namespace {

// The FFTW planner is not reentrant.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t clamp_index(std::ptrdiff_t i, std::size_t n) {
  if (i < 0) return 0;
  if (static_cast<std::size_t>(i) >= n) return n - 1;
  return static_cast<std::size_t>(i);
}

}  // namespace

std::string filter_name(const FilterSpec& spec) {
  static constexpr const char* kNames[] = {"Median", "Gaussian", "Cutoff", "Subsample",
                                           "DouglasPeucker"};
  return kNames[spec.index()];
}

TimeSeries median_filter(const TimeSeries& series, std::size_t window) {
  if (window == 0 || window % 2 == 0) throw ValidationError("median window must be odd and >= 1");
  const auto x = series.values();
  const std::size_t n = x.size();
  const auto half = static_cast<std::ptrdiff_t>(window / 2);
  std::vector<double> out(n), buf(window);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t k = -half; k <= half; ++k)
      buf[static_cast<std::size_t>(k + half)] = x[clamp_index(static_cast<std::ptrdiff_t>(i) + k, n)];
    auto mid = buf.begin() + half;
    std::nth_element(buf.begin(), mid, buf.end());
    out[i] = *mid;
  }
  return series.with_values(std::move(out));
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!std::isfinite(sigma) || sigma < 0.0) throw ValidationError("gaussian sigma must be >= 0");
  if (sigma == 0.0) return {1.0};
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
    const double v = std::exp(-static_cast<double>(k * k) / (2.0 * sigma * sigma));
    w[static_cast<std::size_t>(k + radius)] = v;
    total += v;
  }
  for (auto& v : w) v /= total;
  return w;
}

TimeSeries gaussian_filter(const TimeSeries& series, double sigma) {
  const auto w = gaussian_kernel(sigma);
  if (w.size() == 1) return series;
  const auto x = series.values();
  const std::size_t n = x.size();
  const auto radius = static_cast<std::ptrdiff_t>(w.size() / 2);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::ptrdiff_t k = -radius; k <= radius; ++k)
      acc += w[static_cast<std::size_t>(k + radius)] *
             x[clamp_index(static_cast<std::ptrdiff_t>(i) + k, n)];
    out[i] = acc;
  }
  return series.with_values(std::move(out));
}

TimeSeries cutoff_filter(const TimeSeries& series, std::size_t keep_frequencies) {
  const std::size_t n = series.size();
  const std::size_t bins = n / 2 + 1;
  const std::size_t kept_bins = std::min(bins, keep_frequencies + 1);

  std::vector<double> real(series.values().begin(), series.values().end());
  std::vector<std::complex<double>> spectrum(bins);
  auto* spec = reinterpret_cast<fftw_complex*>(spectrum.data());
  fftw_plan forward, inverse;
  {
    std::lock_guard lock(fftw_planner_mutex());
    forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), real.data(), spec, FFTW_ESTIMATE);
    inverse = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec, real.data(), FFTW_ESTIMATE);
  }
  fftw_execute(forward);
  std::fill(spectrum.begin() + static_cast<std::ptrdiff_t>(kept_bins), spectrum.end(),
            std::complex<double>{});
  fftw_execute(inverse);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(inverse);
  }
  for (auto& v : real) v /= static_cast<double>(n);
  return series.with_values(std::move(real));
}

std::vector<double> interpolate_through(const TimeSeries& series,
                                        const std::vector<std::size_t>& kept) {
  const auto y = series.values();
  std::vector<double> out(y.begin(), y.end());
  for (std::size_t k = 0; k + 1 < kept.size(); ++k) {
    const std::size_t a = kept[k], b = kept[k + 1];
    const double xa = series.position(a), xb = series.position(b);
    for (std::size_t i = a + 1; i < b; ++i) {
      const double t = (series.position(i) - xa) / (xb - xa);
      out[i] = y[a] + t * (y[b] - y[a]);
    }
  }
  return out;
}

TimeSeries uniform_subsample(const TimeSeries& series, std::size_t stride) {
  if (stride == 0) throw ValidationError("subsample stride must be >= 1");
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < series.size(); i += stride) kept.push_back(i);
  if (kept.back() != series.size() - 1) kept.push_back(series.size() - 1);
  return series.with_values(interpolate_through(series, kept));
}

std::vector<std::size_t> douglas_peucker_indices(const TimeSeries& series, double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw ValidationError("douglas-peucker epsilon must be >= 0");
  const auto y = series.values();

  struct Split {
    double distance;
    std::size_t index, lo, hi;
  };
  auto worst_in = [&](std::size_t lo, std::size_t hi) {
    Split s{-1.0, lo, lo, hi};
    const double xa = series.position(lo), xb = series.position(hi);
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double t = (series.position(i) - xa) / (xb - xa);
      const double d = std::abs(y[i] - (y[lo] + t * (y[hi] - y[lo])));
      if (d > s.distance) s = {d, i, lo, hi};
    }
    return s;
  };
  // Largest distance first, then smallest index.
  auto after = [](const Split& a, const Split& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.index > b.index;
  };
  std::priority_queue<Split, std::vector<Split>, decltype(after)> queue(after);

  std::vector<std::size_t> kept{0, y.size() - 1};
  if (y.size() > 2) queue.push(worst_in(0, y.size() - 1));
  while (!queue.empty()) {
    const Split top = queue.top();
    queue.pop();
    if (top.distance <= epsilon) break;
    kept.push_back(top.index);
    if (top.index - top.lo > 1) queue.push(worst_in(top.lo, top.index));
    if (top.hi - top.index > 1) queue.push(worst_in(top.index, top.hi));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

TimeSeries douglas_peucker(const TimeSeries& series, double epsilon) {
  return series.with_values(interpolate_through(series, douglas_peucker_indices(series, epsilon)));
}

TimeSeries apply_filter(const TimeSeries& series, const FilterSpec& spec) {
  return std::visit(
      [&](const auto& f) -> TimeSeries {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Median>) return median_filter(series, f.window);
        else if constexpr (std::is_same_v<F, Gaussian>) return gaussian_filter(series, f.sigma);
        else if constexpr (std::is_same_v<F, Cutoff>) return cutoff_filter(series, f.keep_frequencies);
        else if constexpr (std::is_same_v<F, Subsample>) return uniform_subsample(series, f.stride);
        else return douglas_peucker(series, f.epsilon);
      },
      spec);
}

}  // namespace topolines
