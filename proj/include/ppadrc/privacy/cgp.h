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


#ifndef PPADRC_PRIVACY_CGP_H_
#define PPADRC_PRIVACY_CGP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ppadrc/engine/config.h"
#include "ppadrc/geometry/point.h"

namespace ppadrc {

// Parameters of the concentrated geo-privacy constant. n counts all agents,
// faulty ones included.
struct CgpParams {
  int n = 1;
  double lambda = 1.0;
  double upsilon = 0.5;
  double gamma_l = 0.8;

  absl::Status Validate() const;
};

// rho = n upsilon^2 / (2 lambda^2 (upsilon^2 - (1 - gamma_l)^2)).
// DomainError when gamma_l <= 1 - upsilon; InvalidArgument for other
// out-of-range parameters.
absl::StatusOr<double> CgpRho(const CgpParams& p);

// Renyi divergence of order alpha between N(0, sigma2 I) and
// N(shift, sigma2 I): alpha |shift|^2 / (2 sigma2).
absl::StatusOr<double> RenyiGaussian(double alpha, const Point& shift,
                                     double sigma2);

// Sum over h < horizon and agents i of
// RenyiGaussian(alpha, trace[h][i], lambda^2 upsilon^(2h)). Terms are
// evaluated in log space because both |trace| and upsilon^h underflow long
// before their ratio does.
absl::StatusOr<double> DivergenceTruncated(
    double alpha, const std::vector<std::vector<Point>>& shift_trace,
    double lambda, double upsilon, int horizon);

// Composition of CGP guarantees adds their constants.
double CgpCompose(std::span<const double> rhos);

// Per-step DP lower bound
// sqrt(2 log(1.25 / delta)) ell (1 - gamma_l)^h / (lambda upsilon^h) + slack.
absl::StatusOr<double> DpEpsilon(int h, double ell, double delta,
                                 double lambda, double upsilon,
                                 double gamma_l, double slack = 0.0);

// Distance between two state matrices: the largest row distance.
double MatrixDistance(std::span<const Point> shifts);

// Sum of squared row norms; reported alongside MatrixDistance.
double SumSquaredNorms(std::span<const Point> shifts);

// Importance-sampling estimate of the order-alpha Renyi divergence between
// N(0, sigma2 I) and N(shift, sigma2 I) from `draws` samples of the first.
// Diagnostic only.
absl::StatusOr<double> EstimateRenyiGaussian(double alpha, const Point& shift,
                                             double sigma2, int draws,
                                             uint64_t seed);

struct DivergenceEntry {
  double alpha = 0.0;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct DpEntry {
  int h = 0;
  double epsilon = 0.0;
};

struct PrivacyReport {
  double rho = 0.0;
  double dist = 0.0;
  double sum_sq = 0.0;
  int horizon = 0;
  // Largest per-coordinate gap between the two transmitted sequences.
  double transmitted_gap = 0.0;
  std::vector<DivergenceEntry> divergences;
  std::vector<DpEntry> dp;
  bool pass = false;
};

struct AuditOptions {
  std::vector<double> alphas = {1.5, 2.0, 4.0, 8.0};
  // DP schedule rows h = 0..dp_rows-1 at (ell, delta).
  int dp_rows = 10;
  double dp_ell = 1.0;
  double dp_delta = 0.05;
  double gap_tol = 1e-9;
};

// Runs the coupled pair for cfg and shifts, then checks every truncated
// divergence against alpha rho dist^2 and the transmitted sequences for
// equality within gap_tol. rho uses cfg.n and cfg.gamma.gamma_l.
absl::StatusOr<PrivacyReport> AuditPrivacy(const SimConfig& cfg,
                                           std::span<const Point> shifts,
                                           const AuditOptions& options = {});

}  // namespace ppadrc

#endif  // PPADRC_PRIVACY_CGP_H_
