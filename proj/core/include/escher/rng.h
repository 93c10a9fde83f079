#ifndef ESCHER_RNG_H_
#define ESCHER_RNG_H_

#include <cstdint>
#include <random>
#include <vector>

#include "escher/check.h"

namespace escher {

// Deterministic random stream. All sampling in the library goes through this
// class so that runs with equal (config, seed) consume identical streams on
// every platform; std::uniform_* distributions are implementation-defined and
// deliberately avoided.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t NextUInt64() { return gen_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double UniformDouble() {
    return static_cast<double>(NextUInt64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in {0, ..., n - 1}, unbiased via rejection.
  int UniformInt(int n) {
    ESCHER_CHECK_GT(n, 0);
    const uint64_t un = static_cast<uint64_t>(n);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    uint64_t r = NextUInt64();
    while (r >= limit) r = NextUInt64();
    return static_cast<int>(r % un);
  }

 private:
  std::mt19937_64 gen_;
};

// Samples an index from a probability vector using one uniform draw. Falls
// back to the last positive entry if accumulated rounding leaves the draw
// above the total mass.
inline int SampleIndex(const std::vector<double>& probs, Rng& rng) {
  ESCHER_CHECK(!probs.empty());
  const double u = rng.UniformDouble();
  double cum = 0.0;
  int last_positive = -1;
  for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
    if (probs[i] > 0.0) last_positive = i;
    cum += probs[i];
    if (u < cum) return i;
  }
  ESCHER_CHECK_GE(last_positive, 0);
  return last_positive;
}

// SplitMix64 finalizer. Used to derive decorrelated stateless streams (e.g.
// frozen per-iteration oracle noise) from a seed and a position.
inline uint64_t HashMix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t HashCombine(uint64_t a, uint64_t b) {
  return HashMix(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

// Deterministic double in [0, 1) derived from a hash of the inputs.
inline double HashToUnitDouble(uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
  uint64_t h = HashCombine(HashCombine(a, b), HashCombine(c, d));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace escher

#endif  // ESCHER_RNG_H_
