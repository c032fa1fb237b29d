#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace schatten {

/// Seeded random stream. A stream is identified by (master seed, stream
/// index); identical identifiers reproduce identical output bit for bit.
/// Gaussians use the polar method on top of the raw engine, so no
/// implementation-defined <random> distributions enter the output.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed, std::uint64_t stream = 0)
      : master_(master_seed), stream_(stream), eng_(mix(master_seed, stream)) {}

  std::uint64_t master_seed() const { return master_; }
  std::uint64_t stream() const { return stream_; }

  /// Independent stream derived from the same master seed.
  RngStream substream(std::uint64_t index) const {
    return RngStream(master_, mix(stream_ + 1, index));
  }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform on (0, 1), never returning either endpoint.
  double uniform01() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal (Marsaglia polar, one cached value).
  double normal() {
    if (has_cache_) {
      has_cache_ = false;
      return cache_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cache_ = v * f;
    has_cache_ = true;
    return u * f;
  }

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    // splitmix64 over the pair
    std::uint64_t z = a + 0x9E3779B97F4A7C15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t master_;
  std::uint64_t stream_;
  std::mt19937_64 eng_;
  double cache_ = 0.0;
  bool has_cache_ = false;
};

}  // namespace schatten
