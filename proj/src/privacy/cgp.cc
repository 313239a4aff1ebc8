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


#include "ppadrc/privacy/cgp.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "ppadrc/base/errors.h"
#include "ppadrc/base/random.h"
#include "ppadrc/base/status_macros.h"
#include "ppadrc/engine/protocol.h"

namespace ppadrc {
namespace {

absl::Status CheckAlpha(double alpha) {
  if (!(alpha > 1) || !std::isfinite(alpha)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must be finite and > 1, got ", alpha));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status CgpParams::Validate() const {
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (!(lambda > 0) || !std::isfinite(lambda)) {
    return absl::InvalidArgumentError("lambda must be finite and > 0");
  }
  if (!(upsilon > 0 && upsilon < 1)) {
    return absl::InvalidArgumentError("upsilon must lie in (0, 1)");
  }
  if (!(gamma_l > 0 && gamma_l < 1)) {
    return absl::InvalidArgumentError("gamma_l must lie in (0, 1)");
  }
  if (!(gamma_l > 1 - upsilon)) {
    return DomainError(absl::StrCat("gamma_l = ", gamma_l,
                                    " must exceed 1 - upsilon = ",
                                    1 - upsilon));
  }
  return absl::OkStatus();
}

absl::StatusOr<double> CgpRho(const CgpParams& p) {
  RETURN_IF_ERROR(p.Validate());
  const double u2 = p.upsilon * p.upsilon;
  const double q = 1 - p.gamma_l;
  return p.n * u2 / (2 * p.lambda * p.lambda * (u2 - q * q));
}

absl::StatusOr<double> RenyiGaussian(double alpha, const Point& shift,
                                     double sigma2) {
  RETURN_IF_ERROR(CheckAlpha(alpha));
  if (!(sigma2 > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sigma2 must be > 0, got ", sigma2));
  }
  return alpha * Dot(shift, shift) / (2 * sigma2);
}

absl::StatusOr<double> DivergenceTruncated(
    double alpha, const std::vector<std::vector<Point>>& shift_trace,
    double lambda, double upsilon, int horizon) {
  RETURN_IF_ERROR(CheckAlpha(alpha));
  if (!(lambda > 0) || !(upsilon > 0 && upsilon < 1)) {
    return absl::InvalidArgumentError(
        "need lambda > 0 and upsilon in (0, 1)");
  }
  if (horizon < 0 || horizon > static_cast<int>(shift_trace.size())) {
    return absl::InvalidArgumentError(
        absl::StrCat("horizon ", horizon, " outside the recorded trace of ",
                     shift_trace.size(), " iterations"));
  }
  const double log_lambda = std::log(lambda);
  const double log_upsilon = std::log(upsilon);
  double total = 0.0;
  for (int h = 0; h < horizon; ++h) {
    if (!shift_trace[h].empty() &&
        shift_trace[h].size() != shift_trace[0].size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("trace row ", h, " has ", shift_trace[h].size(),
                       " agents, row 0 has ", shift_trace[0].size()));
    }
    for (const Point& d : shift_trace[h]) {
      const double norm = Norm(d);
      if (norm == 0) continue;
      // alpha |d|^2 / (2 lambda^2 upsilon^(2h)).
      total += 0.5 * alpha *
               std::exp(2 * (std::log(norm) - log_lambda - h * log_upsilon));
    }
  }
  return total;
}

double CgpCompose(std::span<const double> rhos) {
  double sum = 0.0;
  for (double r : rhos) sum += r;
  return sum;
}

absl::StatusOr<double> DpEpsilon(int h, double ell, double delta,
                                 double lambda, double upsilon,
                                 double gamma_l, double slack) {
  if (!(delta > 0 && delta < 1)) {
    return DomainError(absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  if (h < 0 || !(ell > 0) || !(lambda > 0) || !(upsilon > 0 && upsilon < 1) ||
      !(gamma_l > 0 && gamma_l < 1) || slack < 0) {
    return absl::InvalidArgumentError(
        "need h >= 0, ell > 0, lambda > 0, upsilon and gamma_l in (0, 1), "
        "slack >= 0");
  }
  const double base = std::sqrt(2 * std::log(1.25 / delta)) * ell / lambda;
  return base * std::pow((1 - gamma_l) / upsilon, h) + slack;
}

double MatrixDistance(std::span<const Point> shifts) {
  double best = 0.0;
  for (const Point& d : shifts) best = std::max(best, Norm(d));
  return best;
}

double SumSquaredNorms(std::span<const Point> shifts) {
  double sum = 0.0;
  for (const Point& d : shifts) sum += Dot(d, d);
  return sum;
}

absl::StatusOr<double> EstimateRenyiGaussian(double alpha, const Point& shift,
                                             double sigma2, int draws,
                                             uint64_t seed) {
  RETURN_IF_ERROR(CheckAlpha(alpha));
  if (!(sigma2 > 0) || draws < 1) {
    return absl::InvalidArgumentError("need sigma2 > 0 and draws >= 1");
  }
  // D_alpha(P || Q) = log E_P[(p/q)^(alpha-1)] / (alpha - 1) with
  // log(p/q)(x) = (|x - shift|^2 - |x|^2) / (2 sigma2). The mean is
  // accumulated relative to the largest log term to avoid overflow.
  Stream s(seed);
  const double sd = std::sqrt(sigma2);
  const double shift_sq = Dot(shift, shift);
  std::vector<double> logs(draws);
  for (int i = 0; i < draws; ++i) {
    double cross = 0.0;
    for (int k = 0; k < shift.dim(); ++k) cross += sd * s.Normal() * shift[k];
    logs[i] = (alpha - 1) * (shift_sq - 2 * cross) / (2 * sigma2);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - top);
  return (top + std::log(acc / draws)) / (alpha - 1);
}

absl::StatusOr<PrivacyReport> AuditPrivacy(const SimConfig& cfg,
                                           std::span<const Point> shifts,
                                           const AuditOptions& options) {
  for (double a : options.alphas) RETURN_IF_ERROR(CheckAlpha(a));
  const CgpParams params{cfg.n, cfg.noise.lambda, cfg.noise.upsilon,
                         cfg.gamma.gamma_l};
  PrivacyReport report;
  ASSIGN_OR_RETURN(report.rho, CgpRho(params));
  ASSIGN_OR_RETURN(CoupledRuns runs, RunCoupled(cfg, shifts));
  report.dist = MatrixDistance(shifts);
  report.sum_sq = SumSquaredNorms(shifts);
  report.horizon = cfg.horizon;
  for (size_t t = 0; t < runs.original.transmitted.size(); ++t) {
    for (size_t r = 0; r < runs.original.transmitted[t].size(); ++r) {
      const Point d =
          runs.original.transmitted[t][r] - runs.shifted.transmitted[t][r];
      for (int k = 0; k < d.dim(); ++k) {
        report.transmitted_gap = std::max(report.transmitted_gap,
                                          std::abs(d[k]));
      }
    }
  }
  report.pass = report.transmitted_gap <= options.gap_tol;
  for (double a : options.alphas) {
    DivergenceEntry e;
    e.alpha = a;
    ASSIGN_OR_RETURN(e.value,
                     DivergenceTruncated(a, runs.shift_trace, cfg.noise.lambda,
                                         cfg.noise.upsilon, cfg.horizon));
    e.bound = a * report.rho * report.dist * report.dist;
    e.pass = e.value <= e.bound;
    report.pass = report.pass && e.pass;
    report.divergences.push_back(e);
  }
  for (int h = 0; h < options.dp_rows; ++h) {
    ASSIGN_OR_RETURN(double eps,
                     DpEpsilon(h, options.dp_ell, options.dp_delta,
                               cfg.noise.lambda, cfg.noise.upsilon,
                               cfg.gamma.gamma_l));
    report.dp.push_back({h, eps});
  }
  return report;
}

}  // namespace ppadrc
