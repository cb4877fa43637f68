// Copyright 2026 The segrobust Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seedable random source with a fixed, documented algorithm so sampled
// corpora reproduce bit for bit on every platform and standard library.
//
//   engine:   MT19937-64 (std::mt19937_64, whose output sequence is fixed by
//             the C++ standard)
//   doubles:  (x >> 11) * 2^-53, uniform on [0, 1)
//   integers: rejection sampling on the raw 64-bit output
//   sub-seeds: SplitMix64 finalizer over (seed, stream) and FNV-1a 64 for
//             string labels
//
// std::uniform_*_distribution is deliberately not used; its output is
// implementation defined.

#ifndef SEGROBUST_RANDOM_H_
#define SEGROBUST_RANDOM_H_

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace segrobust {

inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline uint64_t Fnv1a64(std::string_view text) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Independent stream seed for item `stream` under `seed`.
inline uint64_t DeriveSeed(uint64_t seed, uint64_t stream) {
  return SplitMix64(SplitMix64(seed) ^ SplitMix64(stream + 0x632BE59BD9B4E019ULL));
}

inline uint64_t DeriveSeed(uint64_t seed, std::string_view label) {
  return DeriveSeed(seed, Fnv1a64(label));
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1).
  double NextDouble() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * NextDouble(); }

  // Uniform on [0, n). n must be positive.
  uint64_t NextBelow(uint64_t n) {
    const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                           std::numeric_limits<uint64_t>::max() % n;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool Bernoulli(double p) { return NextDouble() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace segrobust

#endif  // SEGROBUST_RANDOM_H_
