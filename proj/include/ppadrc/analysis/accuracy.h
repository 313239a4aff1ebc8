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


#ifndef PPADRC_ANALYSIS_ACCURACY_H_
#define PPADRC_ANALYSIS_ACCURACY_H_

#include <span>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "ppadrc/engine/protocol.h"
#include "ppadrc/geometry/point.h"

namespace ppadrc {

struct EnsembleMoments {
  Point mean;
  // Unbiased sample covariance (divisor R - 1).
  Eigen::MatrixXd cov;
};

absl::StatusOr<EnsembleMoments> EnsembleStats(std::span<const Point> finals);

// Eigenvalues below rel_tol * (largest eigenvalue) are dropped; the rest
// span the retained subspace.
struct ReducedCovariance {
  // d x d_eff, orthonormal columns.
  Eigen::MatrixXd basis;
  // d_eff x d_eff, positive definite: basis^T cov basis.
  Eigen::MatrixXd cov;
  int d_eff = 0;
  // All eigenvalues of the input, ascending.
  Eigen::VectorXd eigenvalues;
};

inline constexpr double kDefaultRelTol = 1e-10;

absl::StatusOr<ReducedCovariance> RegularizeCov(const Eigen::MatrixXd& cov,
                                                double rel_tol = kDefaultRelTol);

// Squared Mahalanobis distance of every sample from the sample mean, measured
// in the retained subspace of the sample covariance.
struct MahalanobisSample {
  EnsembleMoments moments;
  ReducedCovariance reduced;
  std::vector<double> d2;
};

absl::StatusOr<MahalanobisSample> MahalanobisSquaredAll(
    std::span<const Point> finals, double rel_tol = kDefaultRelTol);

// Volume of the unit ball in R^d.
double UnitBallVolume(int d);

struct CoverageRow {
  double chi = 0.0;
  // Fraction of samples with D_M^2 <= chi.
  double empirical = 0.0;
  // 1 - d_eff / chi, possibly negative.
  double floor = 0.0;
  // Volume of {x : D_M^2(x) <= chi} in the retained subspace.
  double volume = 0.0;
  bool pass = false;
};

struct CoverageReport {
  Point mean;
  Eigen::MatrixXd cov;
  int d_eff = 0;
  // Determinant of the retained covariance.
  double det = 0.0;
  double slack = 0.0;
  std::vector<CoverageRow> rows;
  bool pass = false;
};

// Empirical coverage against the multivariate Chebyshev floor; a row passes
// when empirical >= floor - slack. The covariance is estimated from the same
// sample, which biases D_M^2 slightly low.
absl::StatusOr<CoverageReport> MahalanobisCoverage(
    std::span<const Point> finals, std::span<const double> chis,
    double slack = 0.04, double rel_tol = kDefaultRelTol);

// Fraction of samples with D_M^2 >= chi, for each chi.
absl::StatusOr<std::vector<double>> MahalanobisTail(
    std::span<const Point> samples, std::span<const double> chis);

struct VarianceReport {
  // lambda^2 / (1 - upsilon^2).
  double bound = 0.0;
  double slack = 0.0;
  std::vector<double> variance;
  std::vector<bool> pass_dim;
  bool pass = false;
};

absl::StatusOr<VarianceReport> VarianceBoundCheck(
    std::span<const Point> finals, double lambda, double upsilon,
    double slack = 0.05);

struct HullMembershipReport {
  double hausdorff_ab = 0.0;
  double hausdorff_ac = 0.0;
  double hausdorff_ad = 0.0;
  // Diameter of hull(initials).
  double mu = 0.0;
  // sqrt(d/2) mu + sqrt(sum r_k^2).
  double geometric_bound = 0.0;
  bool geometric_ok = false;
  // Per noisy dimension: distance from the sample mean to the nearer end of
  // the initial range.
  std::vector<double> l;
  // Product over noisy dimensions of max(0, 1 - V / (l_k + r_k)^2) with
  // V = lambda^2 / (1 - upsilon^2); a factor is 0 when l_k + r_k <= 0.
  double floor = 0.0;
  double empirical = 0.0;
  double slack = 0.0;
  bool pass = false;
};

absl::StatusOr<HullMembershipReport> HullMembershipCheck(
    std::span<const Point> initials, std::span<const int> noisy_dims,
    std::span<const double> margins, double lambda, double upsilon,
    std::span<const Point> finals, double slack = 0.02);

// Largest distance between two normal agents at each recorded iteration.
absl::StatusOr<std::vector<double>> AgreementTrace(const RunResult& run);

}  // namespace ppadrc

#endif  // PPADRC_ANALYSIS_ACCURACY_H_
