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

#include "ppadrc/geometry/mahalanobis.h"

#include <algorithm>

#include "Eigen/Cholesky"
#include "absl/strings/str_cat.h"

namespace ppadrc {

absl::StatusOr<double> MahalanobisSq(const Point& x, const Point& mean,
                                     const Eigen::MatrixXd& cov) {
  const int d = x.dim();
  if (mean.dim() != d || cov.rows() != d || cov.cols() != d) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dimension mismatch: x has ", d, ", mean has ", mean.dim(),
        ", cov is ", cov.rows(), "x", cov.cols()));
  }
  if (!cov.allFinite()) {
    return absl::InvalidArgumentError("covariance has non-finite entries");
  }
  const double scale = std::max(cov.cwiseAbs().maxCoeff(), 1e-300);
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    return absl::InvalidArgumentError("covariance is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    return absl::InvalidArgumentError(
        "covariance is not positive definite; regularize it first");
  }
  Eigen::VectorXd diff(d);
  for (int k = 0; k < d; ++k) diff[k] = x[k] - mean[k];
  const Eigen::VectorXd z = llt.matrixL().solve(diff);
  return z.squaredNorm();
}

}  // namespace ppadrc
