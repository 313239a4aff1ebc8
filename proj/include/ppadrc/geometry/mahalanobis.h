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

#ifndef PPADRC_GEOMETRY_MAHALANOBIS_H_
#define PPADRC_GEOMETRY_MAHALANOBIS_H_

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "ppadrc/geometry/point.h"

namespace ppadrc {

// (x - mean)^T cov^{-1} (x - mean). `cov` must be symmetric (relative
// tolerance 1e-9) and positive definite.
absl::StatusOr<double> MahalanobisSq(const Point& x, const Point& mean,
                                     const Eigen::MatrixXd& cov);

}  // namespace ppadrc

#endif  // PPADRC_GEOMETRY_MAHALANOBIS_H_
