#ifndef RSCHED_RANDOM_H_
#define RSCHED_RANDOM_H_

#include <cstdint>
#include <random>

namespace rsched {

// Deterministic random stream. All draws are derived from the raw 64-bit
// output of mt19937_64 so results do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Independent stream for one Monte Carlo trial.
  static Rng ForTrial(uint64_t seed, uint64_t trial) {
    return Rng(SplitMix64(seed ^ SplitMix64(trial + 0x9e3779b97f4a7c15ULL)));
  }

  static uint64_t SplitMix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  uint64_t Next() { return engine_(); }

  // Uniform in the open interval (0, 1).
  double Uniform01() {
    return (static_cast<double>(Next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi].
  int64_t UniformInt(int64_t lo, int64_t hi) {
    const uint64_t range = static_cast<uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<int64_t>(Next());
    const uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    uint64_t x = Next();
    while (x >= limit) x = Next();
    return lo + static_cast<int64_t>(x % range);
  }

  bool Bernoulli(double p) { return Uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rsched

#endif  // RSCHED_RANDOM_H_
