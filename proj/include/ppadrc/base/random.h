// Copyright 2026 The PP-ADRC Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPADRC_BASE_RANDOM_H_
#define PPADRC_BASE_RANDOM_H_

#include <cstdint>
#include <limits>
#include <string_view>

namespace ppadrc {

// 64-bit finalizer from SplitMix64. Bijective on uint64_t.
uint64_t Mix64(uint64_t x);

// 64-bit FNV-1a over raw bytes.
uint64_t Fnv1a64(std::string_view bytes, uint64_t basis = 0xcbf29ce484222325ULL);

// Sub-stream seed for (master, purpose, agent, iteration). Every random draw
// in the simulator comes from a stream seeded this way, so results do not
// depend on evaluation order or thread scheduling.
uint64_t DeriveSeed(uint64_t master, std::string_view label, uint64_t agent,
                    uint64_t iteration);

// SplitMix64 stream. Satisfies UniformRandomBitGenerator, but the
// distribution helpers below are used instead of <random> distributions
// because the latter are implementation-defined and would break
// cross-platform reproducibility.
class Stream {
 public:
  using result_type = uint64_t;

  explicit Stream(uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return Mix64(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t UniformInt(uint64_t n);

  // Standard normal via the Box-Muller transform (two uniforms per draw).
  double Normal();

 private:
  uint64_t state_;
};

}  // namespace ppadrc

#endif  // PPADRC_BASE_RANDOM_H_
