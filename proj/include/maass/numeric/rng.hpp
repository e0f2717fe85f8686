#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "maass/types.hpp"

namespace maass::num {

std::uint64_t splitmix64(std::uint64_t x);

// Seed for shard i of a run seeded with `seed`; shard count is fixed by the
// caller, so results do not depend on the worker count.
inline std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard) {
  return splitmix64(seed ^ splitmix64(shard + 0x9E3779B97F4A7C15ULL));
}

// mt19937_64 with explicit (library-independent) real mappings, so sample
// streams are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double normal();
  std::int64_t integer(std::int64_t lo, std::int64_t hi);  // inclusive
  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Haar-random rotation in SO(n), n ∈ {2, 3}.
Mat random_rotation(Rng& rng, int n);

// Worker count: MAASS_CERTIFY_THREADS if set, else hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, count) across worker_count() threads. Each index
// must write only its own output slot; reductions happen afterwards in index
// order, which keeps results bit-stable.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace maass::num
