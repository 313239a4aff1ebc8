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

#include "ppadrc/base/random.h"

#include <cmath>
#include <numbers>

namespace ppadrc {

uint64_t Mix64(uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t Fnv1a64(std::string_view bytes, uint64_t basis) {
  uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t DeriveSeed(uint64_t master, std::string_view label, uint64_t agent,
                    uint64_t iteration) {
  uint64_t h = Mix64(master ^ 0x6a09e667f3bcc909ULL);
  h = Mix64(h ^ Fnv1a64(label));
  h = Mix64(h ^ (agent + 0x9e3779b97f4a7c15ULL));
  h = Mix64(h ^ (iteration * 0xd1b54a32d192ed03ULL + 0x3c6ef372fe94f82bULL));
  return h;
}

uint64_t Stream::UniformInt(uint64_t n) {
  // Rejection sampling on the top of the range keeps the draw unbiased.
  const uint64_t limit = max() - max() % n;
  uint64_t v;
  do {
    v = (*this)();
  } while (v >= limit);
  return v % n;
}

double Stream::Normal() {
  double u1 = Uniform();
  while (u1 <= 0.0) u1 = Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace ppadrc
