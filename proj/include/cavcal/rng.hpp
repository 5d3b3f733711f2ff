#pragma once

#include <cstdint>

#include "cavcal/mat3.hpp"

namespace cavcal {

/// Counter-based SplitMix64 stream. The draw sequence is a pure function of
/// (seed, stream_index), identical on every platform and for any worker
/// layout; parallel code takes one stream per task index and never shares.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index)
      : seed_(seed), stream_index_(stream_index) {
    state_ = mix(mix(seed) ^ mix(~stream_index));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in [0,1), 53 random bits.
  real uniform01() {
    return real(next_u64() >> 11) * real(1.0 / 9007199254740992.0);
  }

  real uniform(real lo, real hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller (pinned here for reproducibility).
  real gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    real u1 = uniform01(), u2 = uniform01();
    real r = std::sqrt(real(-2) * std::log1p(-u1));
    real a = real(2) * real(3.14159265358979323846) * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint64_t state_;
  real spare_ = 0;
  bool have_spare_ = false;
};

/// Entries i.i.d. uniform on [-alpha, alpha]; with `symmetric`, six draws
/// fill the upper triangle and mirror below.
Mat3 random_matrix(RngStream& rng, real alpha, bool symmetric);

/// Haar-uniform rotation from a normalized random quaternion.
Mat3 random_rotation(RngStream& rng);

}  // namespace cavcal
