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

#ifndef PPADRC_TESTS_TEST_UTIL_H_
#define PPADRC_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "ppadrc/base/random.h"
#include "ppadrc/geometry/point.h"

namespace ppadrc::testing {

inline const absl::Status& ToStatus(const absl::Status& s) { return s; }
template <typename T>
const absl::Status& ToStatus(const absl::StatusOr<T>& s) {
  return s.status();
}

MATCHER(IsOk, "") {
  if (ToStatus(arg).ok()) return true;
  *result_listener << "status: " << ToStatus(arg);
  return false;
}

MATCHER_P(StatusIs, code, "") {
  if (ToStatus(arg).code() == code) return true;
  *result_listener << "status: " << ToStatus(arg);
  return false;
}

inline std::vector<Point> UniformCloud(int n, int dim, uint64_t seed,
                                       double lo = -1.0, double hi = 1.0) {
  Stream s(seed);
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    Point p(dim);
    for (int k = 0; k < dim; ++k) p[k] = s.Uniform(lo, hi);
    out.push_back(p);
  }
  return out;
}

}  // namespace ppadrc::testing

#endif  // PPADRC_TESTS_TEST_UTIL_H_
