// Splittable counter-style random stream plus the exact variate samplers
// (uniform, normal, exponential, gamma) used by the flight simulators.
#pragma once

#include <cstdint>
#include <stdexcept>

namespace randflight {

namespace detail {

// SplitMix64 finalizer (Vigna / Steele-Lea-Flood).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Derives a per-stream additive constant; must be odd and avoid
// low-transition bit patterns (Steele-Lea-Flood mixGamma).
std::uint64_t mix_gamma(std::uint64_t z);

}  // namespace detail

/// Deterministic random stream addressed by (seed, stream_id).
///
/// Contract: the variate sequence is a pure function of (seed, stream_id);
/// distinct stream_ids give statistically independent sequences. This is what
/// lets Monte Carlo batches assign stream_id = sample index and produce
/// results independent of thread count and iteration order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : state_(detail::mix64(seed ^ detail::mix64(stream_id + detail::kGolden))),
        gamma_(detail::mix_gamma(detail::mix64(stream_id) + seed)) {}

  std::uint64_t next_u64() { return detail::mix64(state_ += gamma_); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; safe to pass to log().
  double next_uniform_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via the Marsaglia polar method (exact, no tables).
  double next_normal();

  /// Exponential with mean 1.
  double next_exponential();

  /// Gamma(shape, scale 1). Marsaglia-Tsang for shape >= 1; for shape < 1
  /// uses Gamma(shape+1) * U^(1/shape). Throws std::invalid_argument for
  /// shape <= 0.
  double next_gamma(double shape);

 private:
  std::uint64_t state_;
  std::uint64_t gamma_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace randflight
