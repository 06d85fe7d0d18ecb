#include "topolines/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

namespace topolines {

namespace {

// The standard distributions are implementation-defined; these are not.
class Source {
 public:
  explicit Source(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (spare_) {
      spare_ = false;
      return cached_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    cached_ = radius * std::sin(2.0 * std::numbers::pi * u2);
    spare_ = true;
    return radius * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::size_t below(std::size_t bound) { return static_cast<std::size_t>(uniform() * static_cast<double>(bound)); }

 private:
  std::mt19937_64 engine_;
  bool spare_ = false;
  double cached_ = 0.0;
};

// Spikes sit in distinct, evenly sized bins away from the ends.
std::vector<std::size_t> place_spikes(Source& src, std::size_t n) {
  std::vector<std::size_t> out;
  const std::size_t margin = 2;
  const std::size_t usable = n - 2 * margin;
  const std::size_t bin = usable / kSpikeCount;
  for (std::size_t k = 0; k < kSpikeCount; ++k) out.push_back(margin + k * bin + src.below(bin));
  return out;
}

}  // namespace

std::string to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::SpikeTrain: return "spike-train";
    case SyntheticKind::NoisySine: return "noisy-sine";
    case SyntheticKind::RandomWalk: return "random-walk";
  }
  return "unknown";
}

SyntheticKind parse_synthetic_kind(const std::string& text) {
  std::string key;
  for (char c : text)
    if (c != '-' && c != '_') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (key == "spiketrain") return SyntheticKind::SpikeTrain;
  if (key == "noisysine") return SyntheticKind::NoisySine;
  if (key == "randomwalk") return SyntheticKind::RandomWalk;
  throw ValidationError("unknown synthetic kind '" + text + "'");
}

std::vector<std::size_t> spike_positions(std::size_t n, std::uint64_t seed) {
  if (n < 16) throw ValidationError("synthetic series need n >= 16");
  Source src(seed);
  return place_spikes(src, n);
}

TimeSeries generate_synthetic(SyntheticKind kind, std::size_t n, std::uint64_t seed) {
  if (n < 16) throw ValidationError("synthetic series need n >= 16");
  Source src(seed);
  std::vector<double> x(n);
  const std::string label = to_string(kind) + "-n" + std::to_string(n) + "-s" + std::to_string(seed);

  switch (kind) {
    case SyntheticKind::SpikeTrain: {
      const auto spikes = place_spikes(src, n);
      for (auto& v : x) v = kSpikeNoiseScale * std::clamp(src.normal(), -3.0, 3.0);
      for (std::size_t s : spikes) x[s] = kSpikeNoiseScale * (15.0 + 15.0 * src.uniform());
      break;
    }
    case SyntheticKind::NoisySine: {
      const double cycles = 2.0 + 2.0 * src.uniform();
      const double phase = 2.0 * std::numbers::pi * src.uniform();
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        x[i] = 10.0 * std::sin(2.0 * std::numbers::pi * cycles * t + phase) + 2.0 * src.normal();
      }
      break;
    }
    case SyntheticKind::RandomWalk: {
      double level = 100.0;
      for (auto& v : x) v = level += src.normal();
      break;
    }
  }
  return TimeSeries(std::move(x), {}, label);
}

}  // namespace topolines
