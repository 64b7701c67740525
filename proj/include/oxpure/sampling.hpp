// Copyright 2026 The OxPure Authors
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

// Seeded random Bell-diagonal states.
//
// The generator maps mt19937_64 words to doubles directly instead of going
// through std::uniform_real_distribution, whose output is implementation
// defined.  This keeps sampled states, and everything derived from them,
// bit-identical across compilers for a fixed seed.

#ifndef OXPURE_SAMPLING_HPP_
#define OXPURE_SAMPLING_HPP_

#include <cstdint>
#include <random>

#include "oxpure/bell.hpp"

namespace oxpure {

inline constexpr std::uint64_t kDefaultSeed = 20260818;

class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}

  // Uniform in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 eng_;
};

// Uniform over the physical correlation tetrahedron by rejection from the
// enclosing cube.  Acceptance rate is 1/6, so a handful of draws per state.
inline CorrelationVector sample_correlations(Rng& rng) {
  for (;;) {
    const CorrelationVector c = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                                 rng.uniform(-1.0, 1.0)};
    if (is_physical(c)) return c;
  }
}

inline BellWeights sample_weights(Rng& rng) {
  return to_weights(sample_correlations(rng));
}

}  // namespace oxpure

#endif  // OXPURE_SAMPLING_HPP_
