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


#include <cmath>
#include <numbers>
#include <vector>

#include "Eigen/Dense"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "ppadrc/analysis/accuracy.h"
#include "ppadrc/analysis/ensemble.h"
#include "ppadrc/base/random.h"
#include "ppadrc/engine/scenarios.h"
#include "ppadrc/geometry/polytope.h"
#include "test_util.h"

namespace ppadrc {
namespace {

using ::ppadrc::testing::IsOk;
using ::ppadrc::testing::StatusIs;
using ::ppadrc::testing::UniformCloud;

std::vector<Point> GaussianCloud(int n, int dim, uint64_t seed) {
  Stream s(seed);
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    Point p(dim);
    for (int k = 0; k < dim; ++k) p[k] = s.Normal();
    out.push_back(p);
  }
  return out;
}

// Correlated Gaussian: x = L z with a fixed lower-triangular L.
std::vector<Point> CorrelatedCloud(int n, int dim, uint64_t seed) {
  std::vector<Point> z = GaussianCloud(n, dim, seed);
  for (Point& p : z) {
    Point q(dim);
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b <= a; ++b) q[a] += (a == b ? 2.0 : 0.7) * p[b];
    }
    p = q + Point(dim);
  }
  return z;
}

TEST(EnsembleStatsTest, TwoPoints) {
  const std::vector<Point> pts = {{0, 0}, {2, 0}};
  auto m = EnsembleStats(pts);
  ASSERT_THAT(m, IsOk());
  EXPECT_EQ(m->mean, (Point{1, 0}));
  EXPECT_DOUBLE_EQ(m->cov(0, 0), 2.0);
  EXPECT_EQ(m->cov(0, 1), 0.0);
  EXPECT_EQ(m->cov(1, 1), 0.0);
}

TEST(EnsembleStatsTest, IdenticalPointsAndRejections) {
  const std::vector<Point> same(5, Point{0.3, 0.1, -2});
  auto m = EnsembleStats(same);
  ASSERT_THAT(m, IsOk());
  EXPECT_EQ(m->cov.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THAT(EnsembleStats(std::vector<Point>{{1, 2}}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(EnsembleStats(std::vector<Point>{{1, 2}, {1, 2, 3}}),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(RegularizeCovTest, Examples) {
  auto full = RegularizeCov(Eigen::Vector2d(4, 1).asDiagonal().toDenseMatrix());
  ASSERT_THAT(full, IsOk());
  EXPECT_EQ(full->d_eff, 2);
  auto line = RegularizeCov(Eigen::Vector2d(4, 0).asDiagonal().toDenseMatrix());
  ASSERT_THAT(line, IsOk());
  EXPECT_EQ(line->d_eff, 1);
  EXPECT_NEAR(std::abs(line->basis(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(line->cov(0, 0), 4.0, 1e-15);
  // Rotated diag(1, 1e-14).
  const double c = std::cos(0.3), s = std::sin(0.3);
  Eigen::Matrix2d rot;
  rot << c, -s, s, c;
  const Eigen::Matrix2d cov =
      rot * Eigen::Vector2d(1, 1e-14).asDiagonal() * rot.transpose();
  auto thin = RegularizeCov(cov);
  ASSERT_THAT(thin, IsOk());
  EXPECT_EQ(thin->d_eff, 1);
  EXPECT_THAT(RegularizeCov(Eigen::Matrix2d::Zero()),
              StatusIs(absl::StatusCode::kInvalidArgument));
  Eigen::Matrix2d skew;
  skew << 1, 0.5, 0, 1;
  EXPECT_THAT(RegularizeCov(skew),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(RegularizeCovTest, ProjectorOrthonormalAndFaithful) {
  Stream s(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 2;
    const int rank = 1 + trial % d;
    Eigen::MatrixXd a(d, rank);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < rank; ++j) a(i, j) = s.Normal();
    }
    const Eigen::MatrixXd cov = a * a.transpose();
    auto red = RegularizeCov(cov, 1e-10);
    ASSERT_THAT(red, IsOk());
    EXPECT_EQ(red->d_eff, rank);
    const Eigen::MatrixXd gram = red->basis.transpose() * red->basis;
    EXPECT_LE((gram - Eigen::MatrixXd::Identity(rank, rank))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
    const Eigen::MatrixXd back =
        red->basis * red->cov * red->basis.transpose();
    EXPECT_LE((back - cov).cwiseAbs().maxCoeff(),
              1e-10 * red->eigenvalues.maxCoeff());
  }
}

TEST(MahalanobisCoverageTest, StandardGaussianMatchesChiSquareTail) {
  const auto pts = GaussianCloud(10000, 2, 4);
  const std::vector<double> chis = {1, 2, 4};
  auto rep = MahalanobisCoverage(pts, chis);
  ASSERT_THAT(rep, IsOk());
  EXPECT_EQ(rep->d_eff, 2);
  EXPECT_TRUE(rep->pass);
  // P{chi2_2 <= c} = 1 - exp(-c/2); binomial sd is below 0.005.
  for (const CoverageRow& row : rep->rows) {
    EXPECT_NEAR(row.empirical, 1 - std::exp(-row.chi / 2), 0.02);
    EXPECT_DOUBLE_EQ(row.floor, 1 - 2 / row.chi);
  }
  EXPECT_LE(rep->rows[0].floor, 0.0);
  // Volume of the chi = 4 ellipse with |Sigma| close to 1.
  EXPECT_NEAR(rep->rows[2].volume, std::numbers::pi * 4, 0.1 * 4 * 3.2);
}

TEST(MahalanobisCoverageTest, SingularEnsembleUsesRetainedSubspace) {
  std::vector<Point> pts;
  Stream s(2);
  for (int i = 0; i < 500; ++i) {
    const double u = s.Normal();
    pts.push_back({1 + u, 2 - 2 * u});
  }
  const std::vector<double> chis = {2, 3, 4, 5};
  auto rep = MahalanobisCoverage(pts, chis);
  ASSERT_THAT(rep, IsOk());
  EXPECT_EQ(rep->d_eff, 1);
  for (const CoverageRow& row : rep->rows) {
    EXPECT_DOUBLE_EQ(row.floor, 1 - 1 / row.chi);
    EXPECT_TRUE(row.pass);
  }
}

TEST(MahalanobisCoverageTest, Rejections) {
  const auto pts = GaussianCloud(3, 2, 1);
  const std::vector<double> chis = {2};
  EXPECT_THAT(MahalanobisCoverage(pts, chis),
              StatusIs(absl::StatusCode::kInvalidArgument));
  const auto many = GaussianCloud(30, 2, 1);
  const std::vector<double> bad = {0};
  EXPECT_THAT(MahalanobisCoverage(many, bad),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(UnitBallVolumeTest, LowDimensions) {
  EXPECT_DOUBLE_EQ(UnitBallVolume(1), 2.0);
  EXPECT_DOUBLE_EQ(UnitBallVolume(2), std::numbers::pi);
  EXPECT_DOUBLE_EQ(UnitBallVolume(3), 4.0 / 3.0 * std::numbers::pi);
}

TEST(MahalanobisTailTest, ChebyshevHoldsOnReferenceLaws) {
  const std::vector<double> chis = {2, 3, 4, 5, 6, 7, 8, 9, 10};
  for (int d : {2, 3}) {
    const std::vector<std::vector<Point>> samples = {
        GaussianCloud(100000, d, 10 + d), CorrelatedCloud(100000, d, 20 + d),
        UniformCloud(100000, d, 30 + d, -1, 3)};
    for (const auto& cloud : samples) {
      auto tail = MahalanobisTail(cloud, chis);
      ASSERT_THAT(tail, IsOk());
      for (size_t j = 0; j < chis.size(); ++j) {
        EXPECT_LE((*tail)[j], d / chis[j] + 0.01);
      }
    }
  }
}

TEST(VarianceBoundCheckTest, BoundValues) {
  const std::vector<Point> pts = {{0, 0}, {1, 0}, {0, 1}};
  auto rep = VarianceBoundCheck(pts, 2.0, 0.75);
  ASSERT_THAT(rep, IsOk());
  EXPECT_NEAR(rep->bound, 9.142857142857, 1e-9);
  EXPECT_TRUE(rep->pass);
  EXPECT_DOUBLE_EQ(VarianceBoundCheck(pts, 1.5, 0.0)->bound, 2.25);
}

TEST(VarianceBoundCheckTest, FlagsExcessVariance) {
  const std::vector<Point> pts = {{-3, 0}, {3, 0}};
  auto rep = VarianceBoundCheck(pts, 1.0, 0.5);
  ASSERT_THAT(rep, IsOk());
  EXPECT_FALSE(rep->pass);
  EXPECT_FALSE(rep->pass_dim[0]);
  EXPECT_TRUE(rep->pass_dim[1]);
}

TEST(HullMembershipCheckTest, NoiselessLimit) {
  const std::vector<Point> init = {{0, 0}, {2, 0}, {1, 2}, {0.5, 1}};
  const std::vector<Point> finals(10, Point{1, 1});
  const std::vector<int> dims = {1};
  const std::vector<double> margins = {0.0};
  auto rep = HullMembershipCheck(init, dims, margins, 0.0, 0.5, finals);
  ASSERT_THAT(rep, IsOk());
  EXPECT_EQ(rep->empirical, 1.0);
  EXPECT_EQ(rep->floor, 1.0);
  EXPECT_TRUE(rep->pass);
  EXPECT_DOUBLE_EQ(rep->l[0], 1.0);
}

TEST(HullMembershipCheckTest, CountsMembershipInWidenedHull) {
  const std::vector<Point> init = {{0, 0}, {2, 0}, {2, 1}, {0, 1}};
  const std::vector<Point> finals = {{1, 0.5}, {1, 1.2}, {1, -0.2}, {1, 2}};
  const std::vector<int> dims = {1};
  const std::vector<double> margins = {0.3};
  auto rep = HullMembershipCheck(init, dims, margins, 0.2, 0.5, finals);
  ASSERT_THAT(rep, IsOk());
  EXPECT_DOUBLE_EQ(rep->empirical, 0.75);
  EXPECT_DOUBLE_EQ(rep->hausdorff_ac, 0.3);
  EXPECT_TRUE(rep->geometric_ok);
  // mean y = 0.875, l = 0.125, reach 0.425, V = 0.04 / 0.75.
  EXPECT_NEAR(rep->floor, 1 - (0.04 / 0.75) / (0.425 * 0.425), 1e-12);
}

TEST(HullMembershipCheckTest, GeometricBoundOnRandomInstances) {
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 2;
    const auto init = UniformCloud(6 + trial % 5, d, 500 + trial);
    const std::vector<int> dims = {trial % d};
    const std::vector<double> margins = {0.1 * (trial % 6)};
    const std::vector<Point> finals = {Centroid(init)};
    auto rep = HullMembershipCheck(init, dims, margins, 1.0, 0.5, finals);
    ASSERT_THAT(rep, IsOk());
    EXPECT_TRUE(rep->geometric_ok) << trial;
    EXPECT_LE(rep->hausdorff_ab, std::sqrt(d / 2.0) * rep->mu + 1e-9);
    EXPECT_LE(rep->hausdorff_ad, std::sqrt(d / 2.0) * rep->mu + 1e-9);
  }
}

TEST(AgreementTraceTest, ZeroForIdenticalStates) {
  SimConfig cfg = PlanarScenario();
  cfg.noise.lambda = 0;
  cfg.horizon = 20;
  cfg.initial.states.assign(8, Point{0.2, 0.2});
  cfg.record.trajectory = true;
  auto run = ppadrc::Run(cfg);
  ASSERT_THAT(run, IsOk());
  auto trace = AgreementTrace(*run);
  ASSERT_THAT(trace, IsOk());
  for (double v : *trace) EXPECT_EQ(v, 0.0);
}

TEST(AgreementTraceTest, NoiselessTraceShrinksToZero) {
  SimConfig cfg = PlanarScenario();
  cfg.noise.lambda = 0;
  cfg.record.trajectory = true;
  auto run = ppadrc::Run(cfg);
  ASSERT_THAT(run, IsOk());
  auto trace = AgreementTrace(*run);
  ASSERT_THAT(trace, IsOk());
  ASSERT_EQ(trace->size(), 1001u);
  for (size_t t = 1; t < trace->size(); ++t) {
    EXPECT_LE((*trace)[t], (*trace)[t - 1] + 1e-12);
  }
  EXPECT_LT(trace->back(), 1e-6);
}

TEST(AgreementTraceTest, NoisyTraceFollowsNoiseEnvelope) {
  SimConfig cfg = PlanarScenario();
  cfg.horizon = 200;
  cfg.record.trajectory = true;
  auto run = ppadrc::Run(cfg);
  ASSERT_THAT(run, IsOk());
  auto trace = AgreementTrace(*run);
  ASSERT_THAT(trace, IsOk());
  for (int t = 30; t <= 200; t += 10) {
    EXPECT_LE((*trace)[t], 20 * cfg.noise.StdDev(t)) << "t=" << t;
  }
  RunResult bare = *run;
  bare.trajectory.clear();
  EXPECT_THAT(AgreementTrace(bare),
              StatusIs(absl::StatusCode::kFailedPrecondition));
}

TEST(RunEnsembleTest, IndependentOfThreadCount) {
  SimConfig cfg = PlanarScenario();
  cfg.horizon = 100;
  EnsembleOptions one{16, 1, 77, false};
  EnsembleOptions many{16, 4, 77, false};
  auto a = RunEnsemble(cfg, one);
  auto b = RunEnsemble(cfg, many);
  ASSERT_THAT(a, IsOk());
  ASSERT_THAT(b, IsOk());
  EXPECT_EQ(a->finals, b->finals);
  EXPECT_EQ(a->disagreement_sq, b->disagreement_sq);
  ASSERT_EQ(a->runs(), 16);
  for (int r = 0; r < 16; ++r) EXPECT_EQ(a->seeds[r], RunSeed(77, r));
  EXPECT_EQ(a->config_digest, ConfigDigest(cfg));
  EXPECT_TRUE(a->results.empty());
}

TEST(RunEnsembleTest, KeepsResultsAndPropagatesErrors) {
  SimConfig cfg = PlanarScenario();
  cfg.horizon = 10;
  auto e = RunEnsemble(cfg, {3, 2, 1, true});
  ASSERT_THAT(e, IsOk());
  ASSERT_EQ(e->results.size(), 3u);
  EXPECT_EQ(e->finals[1], Centroid(e->results[1].final_states));
  cfg.topology.k = 5;
  EXPECT_THAT(RunEnsemble(cfg, {3, 2, 1, false}),
              StatusIs(absl::StatusCode::kFailedPrecondition));
  EXPECT_THAT(RunEnsemble(PlanarScenario(), {0, 1, 1, false}),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ConfigDigestTest, SensitiveToRunFields) {
  SimConfig a = PlanarScenario();
  SimConfig b = a;
  EXPECT_EQ(ConfigDigest(a), ConfigDigest(b));
  b.record.trajectory = true;
  EXPECT_EQ(ConfigDigest(a), ConfigDigest(b));
  b.noise.lambda = std::nextafter(2.0, 3.0);
  EXPECT_NE(ConfigDigest(a), ConfigDigest(b));
}

}  // namespace
}  // namespace ppadrc
