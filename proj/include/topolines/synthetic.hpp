#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "topolines/series.hpp"

namespace topolines {

enum class SyntheticKind { SpikeTrain, NoisySine, RandomWalk };

std::string to_string(SyntheticKind kind);
/// Accepts "spike-train", "noisy-sine", "random-walk" (case-insensitive, '_' or '-').
SyntheticKind parse_synthetic_kind(const std::string& text);

/// SpikeTrain parameters: unit noise scale, noise clipped to +-3, and this
/// many single-sample spikes of height 15..30.
inline constexpr double kSpikeNoiseScale = 1.0;
inline constexpr std::size_t kSpikeCount = 5;

/// Spike sample indices the generator placed for SpikeTrain(n, seed), ascending.
std::vector<std::size_t> spike_positions(std::size_t n, std::uint64_t seed);

/// Deterministic for a fixed (kind, n, seed) on every platform: uses
/// mt19937_64 with hand-written uniform and normal transforms. n >= 16.
TimeSeries generate_synthetic(SyntheticKind kind, std::size_t n, std::uint64_t seed);

}  // namespace topolines
