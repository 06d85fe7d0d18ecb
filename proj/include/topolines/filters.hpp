#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "topolines/series.hpp"

namespace topolines {

struct Median {
  std::size_t window = 1;  // odd
};
struct Gaussian {
  double sigma = 0.0;
};
struct Cutoff {
  std::size_t keep_frequencies = 0;
};
struct Subsample {
  std::size_t stride = 1;
};
struct DouglasPeucker {
  double epsilon = 0.0;
};

using FilterSpec = std::variant<Median, Gaussian, Cutoff, Subsample, DouglasPeucker>;

std::string filter_name(const FilterSpec& spec);

/// Running median over a centred window with clamped (replicated) edges.
TimeSeries median_filter(const TimeSeries& series, std::size_t window);

/// Normalised kernel of radius ceil(3 sigma), w_k proportional to exp(-k^2 / 2 sigma^2).
/// Index r of the result is offset 0. sigma == 0 gives {1}.
std::vector<double> gaussian_kernel(double sigma);

/// Convolution with gaussian_kernel(sigma), clamped edges.
TimeSeries gaussian_filter(const TimeSeries& series, double sigma);

/// Keeps the DC bin and bins 1..keep (with their conjugates) of the DFT.
TimeSeries cutoff_filter(const TimeSeries& series, std::size_t keep_frequencies);

/// Samples 0, stride, 2*stride, ... and the last index; linear interpolation
/// in position space fills the rest.
TimeSeries uniform_subsample(const TimeSeries& series, std::size_t stride);

/// Indices kept by Douglas-Peucker using the vertical residual, ascending.
std::vector<std::size_t> douglas_peucker_indices(const TimeSeries& series, double epsilon);

/// Piecewise-linear reconstruction through douglas_peucker_indices.
TimeSeries douglas_peucker(const TimeSeries& series, double epsilon);

TimeSeries apply_filter(const TimeSeries& series, const FilterSpec& spec);

/// Linear interpolation through the samples at `kept` (ascending, containing
/// both endpoints), evaluated at every position of the series.
std::vector<double> interpolate_through(const TimeSeries& series,
                                        const std::vector<std::size_t>& kept);

}  // namespace topolines
