// Copyright 2026 The OMG-RFTL Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OMG_RNG_H_
#define OMG_RNG_H_

#include <cstdint>
#include <random>

#include "omg/game.h"

namespace omg {

// Stream identifiers for the independent generators of one run.
enum class Stream : std::uint64_t {
  kLearner = 1,
  kAdversary = 2,
};

// SplitMix64 finalizer; used to derive seeds, never as a generator itself.
inline std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic generator for one (master seed, run index, stream) triple.
// mt19937_64 output is fixed by the standard and doubles are built from the
// top 53 bits, so draws are identical across platforms and builds.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t run_index,
      Stream stream = Stream::kLearner)
      : engine_(Mix64(Mix64(master_seed) ^ Mix64(run_index + 0x51ed27ULL) ^
                      Mix64(static_cast<std::uint64_t>(stream) << 32))) {}

  // Uniform on [0, 1).
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Categorical draw by inverse CDF over cumulative sums in index order.
  int Categorical(const Vector& probs) {
    const double u = Uniform();
    double cum = 0.0;
    const int d = static_cast<int>(probs.size());
    for (int i = 0; i < d; ++i) {
      cum += probs[i];
      if (u < cum) return i;
    }
    return d - 1;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace omg

#endif  // OMG_RNG_H_
