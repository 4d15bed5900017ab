#pragma once

#include <cstdint>

namespace griddisp {

// Counter-based generator (splitmix64). All randomness in the simulator is
// derived from explicit (seed, counter...) keys so that every artifact is
// reproducible from its configuration alone.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t mix_key(uint64_t seed, uint64_t a) {
  return splitmix64(seed ^ splitmix64(a));
}

inline uint64_t mix_key(uint64_t seed, uint64_t a, uint64_t b) {
  return splitmix64(mix_key(seed, a) ^ splitmix64(b + 0x9e3779b97f4a7c15ULL));
}

// Uniform integer in [0, n) via 128-bit multiply; n must be > 0.
inline uint64_t bounded(uint64_t word, uint64_t n) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(word) * n) >> 64);
}

// Uniform double in [0, 1).
inline double unit_double(uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

// Small sequential PRNG used for shuffles; still keyed, never global.
class SplitMix {
 public:
  explicit SplitMix(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  uint64_t below(uint64_t n) { return bounded(next(), n); }

 private:
  uint64_t state_;
};

}  // namespace griddisp
