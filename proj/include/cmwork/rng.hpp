#pragma once

#include <cmath>
#include <cstdint>

namespace cmwork {

// splitmix64: the standard 64-bit mixing generator.  Chosen because its
// state transitions are trivially relocatable: any number of independent
// streams can be seeded by hashing (seed, stream-id), with no correlation
// concerns at the sample counts used here.
struct SplitMix64 {
  uint64_t state;

  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

// Deterministic per-stream seed: a hash of (seed, stream) so that stream 0
// with seed s and stream 1 with seed s are unrelated, as are equal streams
// under different seeds.
inline uint64_t stream_seed(uint64_t seed, int stream) {
  SplitMix64 h{seed ^ (0x9e3779b97f4a7c15ull * (uint64_t(stream) + 1))};
  uint64_t x = h.next();
  return x ^ h.next();
}

// Standard normal variates via Box-Muller on splitmix64 uniforms.  The
// second variate of each pair is cached, so the draw sequence for a given
// seed is fixed regardless of how the consumer batches its requests.
class GaussianStream {
 public:
  explicit GaussianStream(uint64_t seed) : rng_{seed} {}

  // Uniform on (0, 1] (the open end avoids log(0) below).
  double uniform() { return double((rng_.next() >> 11) + 1) * 0x1p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double r = std::sqrt(-2.0 * std::log(uniform()));
    double a = 2.0 * 3.14159265358979323846 * uniform();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  SplitMix64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Monte Carlo estimates are always split over this many independent streams
// (seeded from stream_seed), whether or not they actually run in parallel.
// A fixed stream count makes the result a pure function of (seed, n):
// serial and multi-threaded runs produce bit-identical output.
inline constexpr int kMcStreams = 64;

}  // namespace cmwork
