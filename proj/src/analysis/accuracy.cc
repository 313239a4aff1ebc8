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


#include "ppadrc/analysis/accuracy.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"
#include "ppadrc/base/status_macros.h"
#include "ppadrc/geometry/mahalanobis.h"
#include "ppadrc/geometry/polytope.h"

namespace ppadrc {

absl::StatusOr<EnsembleMoments> EnsembleStats(std::span<const Point> finals) {
  const int r = static_cast<int>(finals.size());
  if (r < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("covariance needs at least 2 samples, got ", r));
  }
  const int d = finals[0].dim();
  RETURN_IF_ERROR(ValidateCloud(finals, d));
  EnsembleMoments m;
  m.mean = Centroid(finals);
  m.cov = Eigen::MatrixXd::Zero(d, d);
  for (const Point& p : finals) {
    const Point c = p - m.mean;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) m.cov(a, b) += c[a] * c[b];
    }
  }
  m.cov /= r - 1;
  return m;
}

absl::StatusOr<ReducedCovariance> RegularizeCov(const Eigen::MatrixXd& cov,
                                                double rel_tol) {
  if (cov.rows() != cov.cols() || cov.rows() == 0 || !cov.allFinite()) {
    return absl::InvalidArgumentError("covariance must be square and finite");
  }
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() >
      1e-9 * std::max(1.0, cov.cwiseAbs().maxCoeff())) {
    return absl::InvalidArgumentError("covariance is not symmetric");
  }
  if (!(rel_tol >= 0)) return absl::InvalidArgumentError("rel_tol < 0");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  ReducedCovariance out;
  out.eigenvalues = eig.eigenvalues();
  const double top = out.eigenvalues.maxCoeff();
  if (!(top > 0)) {
    return absl::InvalidArgumentError("covariance has no positive variance");
  }
  std::vector<int> keep;
  for (int k = 0; k < out.eigenvalues.size(); ++k) {
    if (out.eigenvalues[k] > rel_tol * top) keep.push_back(k);
  }
  out.d_eff = static_cast<int>(keep.size());
  out.basis.resize(cov.rows(), out.d_eff);
  for (int j = 0; j < out.d_eff; ++j) {
    out.basis.col(j) = eig.eigenvectors().col(keep[j]);
  }
  out.cov = out.basis.transpose() * cov * out.basis;
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  return out;
}

absl::StatusOr<MahalanobisSample> MahalanobisSquaredAll(
    std::span<const Point> finals, double rel_tol) {
  MahalanobisSample s;
  ASSIGN_OR_RETURN(s.moments, EnsembleStats(finals));
  ASSIGN_OR_RETURN(s.reduced, RegularizeCov(s.moments.cov, rel_tol));
  const int d = s.moments.mean.dim();
  const Point origin(s.reduced.d_eff);
  s.d2.reserve(finals.size());
  for (const Point& p : finals) {
    Eigen::VectorXd diff(d);
    for (int k = 0; k < d; ++k) diff[k] = p[k] - s.moments.mean[k];
    const Eigen::VectorXd z = s.reduced.basis.transpose() * diff;
    Point projected(s.reduced.d_eff);
    for (int k = 0; k < s.reduced.d_eff; ++k) projected[k] = z[k];
    ASSIGN_OR_RETURN(double d2,
                     MahalanobisSq(projected, origin, s.reduced.cov));
    s.d2.push_back(d2);
  }
  return s;
}

double UnitBallVolume(int d) {
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1);
}

absl::StatusOr<CoverageReport> MahalanobisCoverage(
    std::span<const Point> finals, std::span<const double> chis, double slack,
    double rel_tol) {
  for (double chi : chis) {
    if (!(chi > 0)) return absl::InvalidArgumentError("chi must be > 0");
  }
  if (!finals.empty() &&
      static_cast<int>(finals.size()) < finals[0].dim() + 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "coverage needs at least d + 2 = ", finals[0].dim() + 2,
        " samples, got ", finals.size()));
  }
  ASSIGN_OR_RETURN(MahalanobisSample s, MahalanobisSquaredAll(finals, rel_tol));
  CoverageReport report;
  report.mean = s.moments.mean;
  report.cov = s.moments.cov;
  report.d_eff = s.reduced.d_eff;
  report.det = s.reduced.cov.determinant();
  report.slack = slack;
  report.pass = true;
  const double n = static_cast<double>(s.d2.size());
  for (double chi : chis) {
    CoverageRow row;
    row.chi = chi;
    row.empirical =
        std::count_if(s.d2.begin(), s.d2.end(),
                      [chi](double v) { return v <= chi; }) / n;
    row.floor = 1.0 - report.d_eff / chi;
    row.volume = UnitBallVolume(report.d_eff) *
                 std::pow(chi, report.d_eff / 2.0) * std::sqrt(report.det);
    row.pass = row.empirical >= row.floor - slack;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

absl::StatusOr<std::vector<double>> MahalanobisTail(
    std::span<const Point> samples, std::span<const double> chis) {
  ASSIGN_OR_RETURN(MahalanobisSample s, MahalanobisSquaredAll(samples));
  std::vector<double> out;
  const double n = static_cast<double>(s.d2.size());
  for (double chi : chis) {
    out.push_back(std::count_if(s.d2.begin(), s.d2.end(),
                                [chi](double v) { return v >= chi; }) / n);
  }
  return out;
}

absl::StatusOr<VarianceReport> VarianceBoundCheck(
    std::span<const Point> finals, double lambda, double upsilon,
    double slack) {
  if (!(lambda >= 0) || !(upsilon >= 0 && upsilon < 1)) {
    return absl::InvalidArgumentError(
        "need lambda >= 0 and upsilon in [0, 1)");
  }
  ASSIGN_OR_RETURN(EnsembleMoments m, EnsembleStats(finals));
  VarianceReport report;
  report.bound = lambda * lambda / (1 - upsilon * upsilon);
  report.slack = slack;
  report.pass = true;
  for (int k = 0; k < m.cov.rows(); ++k) {
    report.variance.push_back(m.cov(k, k));
    const bool ok = m.cov(k, k) <= report.bound * (1 + slack);
    report.pass_dim.push_back(ok);
    report.pass = report.pass && ok;
  }
  return report;
}

absl::StatusOr<HullMembershipReport> HullMembershipCheck(
    std::span<const Point> initials, std::span<const int> noisy_dims,
    std::span<const double> margins, double lambda, double upsilon,
    std::span<const Point> finals, double slack) {
  if (finals.empty()) return absl::InvalidArgumentError("no final values");
  if (!(lambda >= 0) || !(upsilon >= 0 && upsilon < 1)) {
    return absl::InvalidArgumentError(
        "need lambda >= 0 and upsilon in [0, 1)");
  }
  ASSIGN_OR_RETURN(DerivedHulls hulls,
                   BuildHullsBC(initials, noisy_dims, margins));
  ASSIGN_OR_RETURN(Polytope box, BuildBoundingBoxD(initials));
  const int d = initials[0].dim();
  RETURN_IF_ERROR(ValidateCloud(finals, d));

  HullMembershipReport r;
  r.slack = slack;
  ASSIGN_OR_RETURN(r.hausdorff_ab, Hausdorff(hulls.a, hulls.b));
  ASSIGN_OR_RETURN(r.hausdorff_ac, Hausdorff(hulls.a, hulls.c));
  ASSIGN_OR_RETURN(r.hausdorff_ad, Hausdorff(hulls.a, box));
  r.mu = Diameter(hulls.a);
  double r_sq = 0.0;
  for (double m : margins) r_sq += m * m;
  r.geometric_bound = std::sqrt(d / 2.0) * r.mu + std::sqrt(r_sq);
  r.geometric_ok = r.hausdorff_ac <= r.geometric_bound + 1e-9;

  const Point mean = Centroid(finals);
  const auto ranges = CoordinateRanges(initials);
  const double v = lambda * lambda / (1 - upsilon * upsilon);
  r.floor = 1.0;
  for (size_t j = 0; j < noisy_dims.size(); ++j) {
    const int k = noisy_dims[j];
    const double l = std::min(mean[k] - ranges[k].first,
                              ranges[k].second - mean[k]);
    r.l.push_back(l);
    const double reach = l + margins[j];
    r.floor *= reach > 0 ? std::max(0.0, 1.0 - v / (reach * reach)) : 0.0;
  }
  int inside = 0;
  for (const Point& p : finals) {
    ASSIGN_OR_RETURN(bool in, Contains(hulls.c, p, 1e-9));
    inside += in ? 1 : 0;
  }
  r.empirical = static_cast<double>(inside) / finals.size();
  r.pass = r.geometric_ok && r.empirical >= r.floor - slack;
  return r;
}

absl::StatusOr<std::vector<double>> AgreementTrace(const RunResult& run) {
  if (run.trajectory.empty()) {
    return absl::FailedPreconditionError(
        "agreement trace needs a recorded trajectory");
  }
  std::vector<double> out;
  out.reserve(run.trajectory.size());
  for (const StateMatrix& x : run.trajectory) {
    double worst = 0.0;
    for (size_t a = 0; a < x.size(); ++a) {
      for (size_t b = a + 1; b < x.size(); ++b) {
        worst = std::max(worst, Distance(x[a], x[b]));
      }
    }
    out.push_back(worst);
  }
  return out;
}

}  // namespace ppadrc
