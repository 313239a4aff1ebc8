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
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "ppadrc/base/errors.h"
#include "ppadrc/engine/protocol.h"
#include "ppadrc/engine/scenarios.h"
#include "ppadrc/privacy/cgp.h"
#include "test_util.h"

namespace ppadrc {
namespace {

using ::ppadrc::testing::IsOk;
using ::ppadrc::testing::StatusIs;
using ::ppadrc::testing::UniformCloud;
using ::testing::DoubleNear;

// Infinite-horizon divergence of one agent whose shift decays by (1 - gamma)
// per step: alpha ell^2 / (2 lambda^2) * upsilon^2 / (upsilon^2 - (1-gamma)^2).
double GeometricClosedForm(double alpha, double ell, double lambda,
                           double upsilon, double gamma) {
  const double q = 1 - gamma;
  return alpha * ell * ell / (2 * lambda * lambda) * upsilon * upsilon /
         (upsilon * upsilon - q * q);
}

TEST(CgpRhoTest, ReferenceParameters) {
  auto rho = CgpRho({6, 2.0, 0.75, 0.4});
  ASSERT_THAT(rho, IsOk());
  EXPECT_NEAR(*rho, 6 * 0.5625 / (2 * 4 * 0.2025), 1e-12);
  EXPECT_NEAR(*rho, 2.0833333333, 1e-9);
}

TEST(CgpRhoTest, UnitStepLimit) {
  auto rho = CgpRho({2, 1.0, 0.3, 1 - 1e-12});
  ASSERT_THAT(rho, IsOk());
  EXPECT_NEAR(*rho, 1.0, 1e-9);
}

TEST(CgpRhoTest, DomainBoundary) {
  const absl::Status s = CgpRho({6, 2.0, 0.75, 0.25}).status();
  EXPECT_TRUE(IsDomainError(s)) << s;
  EXPECT_TRUE(IsDomainError(CgpRho({6, 2.0, 0.75, 0.1}).status()));
  EXPECT_THAT(CgpRho({0, 2.0, 0.75, 0.4}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(CgpRho({6, 0.0, 0.75, 0.4}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(CgpRho({6, 2.0, 1.0, 0.4}),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(CgpRhoTest, DecreasesInLambdaAndUpsilon) {
  for (double gamma : {0.4, 0.6, 0.8}) {
    for (double lambda = 0.5; lambda <= 4.0; lambda += 0.5) {
      for (double upsilon = 0.65; upsilon < 0.96; upsilon += 0.05) {
        const double base = *CgpRho({6, lambda, upsilon, gamma});
        EXPECT_LT(*CgpRho({6, lambda + 0.1, upsilon, gamma}), base);
        EXPECT_LT(*CgpRho({6, lambda, upsilon + 0.01, gamma}), base);
      }
    }
  }
}

TEST(RenyiGaussianTest, Examples) {
  EXPECT_DOUBLE_EQ(*RenyiGaussian(2, Point{1, 0}, 1), 1.0);
  EXPECT_EQ(*RenyiGaussian(3.5, Point{0, 0, 0}, 0.2), 0.0);
  EXPECT_NEAR(*RenyiGaussian(2, Point{0.2, 0.1}, 4), 0.0125, 1e-15);
  EXPECT_THAT(RenyiGaussian(2, Point{1, 0}, 0),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(RenyiGaussian(1, Point{1, 0}, 1),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(RenyiGaussianTest, ImportanceSamplingAgrees) {
  for (const Point& mu : {Point{0.5}, Point{1.0}, Point{0.3, -0.4}}) {
    for (double sigma2 : {1.0, 2.0}) {
      const double exact = *RenyiGaussian(2, mu, sigma2);
      auto est = EstimateRenyiGaussian(2, mu, sigma2, 1000000, 5);
      ASSERT_THAT(est, IsOk());
      EXPECT_NEAR(*est / exact, 1.0, 0.05) << mu.DebugString();
    }
  }
}

std::vector<std::vector<Point>> GeometricTrace(const Point& delta,
                                               double gamma, int horizon) {
  std::vector<std::vector<Point>> trace;
  double f = 1.0;
  for (int h = 0; h < horizon; ++h) {
    trace.push_back({-f * delta});
    f *= 1 - gamma;
  }
  return trace;
}

TEST(DivergenceTruncatedTest, ZeroShifts) {
  std::vector<std::vector<Point>> trace(50, std::vector<Point>(4, Point(2)));
  EXPECT_EQ(*DivergenceTruncated(2, trace, 2, 0.75, 50), 0.0);
}

TEST(DivergenceTruncatedTest, GeometricSeriesLimit) {
  const double ell = 0.3;
  const auto trace = GeometricTrace(Point{ell, 0}, 0.4, 1000);
  for (double alpha : {1.5, 2.0, 8.0}) {
    auto v = DivergenceTruncated(alpha, trace, 2.0, 0.75, 1000);
    ASSERT_THAT(v, IsOk());
    EXPECT_NEAR(*v / GeometricClosedForm(alpha, ell, 2.0, 0.75, 0.4), 1.0,
                1e-12);
  }
}

TEST(DivergenceTruncatedTest, MatchesDirectSumWhileRepresentable) {
  const auto trace = GeometricTrace(Point{0.1, -0.2}, 0.5, 60);
  double direct = 0.0;
  for (int h = 0; h < 60; ++h) {
    direct += *RenyiGaussian(4, trace[h][0], 2.5 * 2.5 * std::pow(0.8, 2 * h));
  }
  EXPECT_NEAR(*DivergenceTruncated(4, trace, 2.5, 0.8, 60), direct,
              1e-12 * direct);
}

TEST(DivergenceTruncatedTest, MonotoneInHorizonLinearInAlpha) {
  std::vector<std::vector<Point>> trace;
  const auto noise = UniformCloud(30 * 3, 2, 8, -0.1, 0.1);
  for (int h = 0; h < 30; ++h) {
    trace.push_back({noise[3 * h], noise[3 * h + 1], noise[3 * h + 2]});
  }
  double prev = 0.0;
  for (int t = 0; t <= 30; ++t) {
    const double v = *DivergenceTruncated(2, trace, 1.5, 0.9, t);
    EXPECT_GE(v, prev);
    prev = v;
    EXPECT_NEAR(*DivergenceTruncated(6, trace, 1.5, 0.9, t), 3 * v,
                1e-12 * v);
  }
}

TEST(DivergenceTruncatedTest, Rejections) {
  const auto trace = GeometricTrace(Point{1, 0}, 0.5, 10);
  EXPECT_THAT(DivergenceTruncated(2, trace, 1, 0.75, 11),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(DivergenceTruncated(0.5, trace, 1, 0.75, 10),
              StatusIs(absl::StatusCode::kInvalidArgument));
  auto ragged = trace;
  ragged[3].push_back(Point{0, 0});
  EXPECT_THAT(DivergenceTruncated(2, ragged, 1, 0.75, 10),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(DivergenceTruncatedTest, EngineTraceMatchesClosedForm) {
  // One shifted agent under fixed gamma: the coupled trace is exactly
  // geometric, so the truncated sum approaches the closed form.
  SimConfig cfg = PrivacyScenario();
  const std::vector<Point> shifts = PrivacyScenarioShift();
  auto runs = RunCoupled(cfg, shifts);
  ASSERT_THAT(runs, IsOk());
  const double ell = Norm(shifts[0]);
  EXPECT_NEAR(ell, 0.2236, 1e-4);
  for (double alpha : {1.5, 2.0, 4.0, 8.0}) {
    auto v = DivergenceTruncated(alpha, runs->shift_trace, 2.0, 0.75, 1000);
    ASSERT_THAT(v, IsOk());
    EXPECT_NEAR(*v / GeometricClosedForm(alpha, ell, 2.0, 0.75, 0.4), 1.0,
                1e-9);
    EXPECT_LE(*v, alpha * *CgpRho({6, 2.0, 0.75, 0.4}) * ell * ell);
  }
}

TEST(CgpComposeTest, SumsConstants) {
  EXPECT_EQ(CgpCompose(std::vector<double>{0.5, 0.5}), 1.0);
  EXPECT_EQ(CgpCompose({}), 0.0);
  const std::vector<double> a = {0.1, 2.5, 0.75};
  const std::vector<double> b = {0.75, 0.1, 2.5};
  EXPECT_DOUBLE_EQ(CgpCompose(a), CgpCompose(b));
}

TEST(DpEpsilonTest, ReferenceValues) {
  EXPECT_THAT(*DpEpsilon(0, 1, 0.05, 2, 0.75, 0.4), DoubleNear(1.26864, 1e-5));
  EXPECT_THAT(*DpEpsilon(1, 1, 0.05, 2, 0.75, 0.4), DoubleNear(1.01491, 1e-5));
  EXPECT_DOUBLE_EQ(*DpEpsilon(0, 1, 0.05, 2, 0.75, 0.4),
                   std::sqrt(2 * std::log(25.0)) / 2);
  EXPECT_DOUBLE_EQ(*DpEpsilon(0, 1, 0.05, 2, 0.75, 0.4, 0.1),
                   *DpEpsilon(0, 1, 0.05, 2, 0.75, 0.4) + 0.1);
}

TEST(DpEpsilonTest, GeometricInIteration) {
  for (auto [upsilon, gamma] : {std::pair{0.75, 0.4}, std::pair{0.9, 0.3}}) {
    const double e0 = *DpEpsilon(0, 0.5, 0.01, 1.5, upsilon, gamma);
    double prev = e0;
    for (int h = 1; h <= 40; ++h) {
      const double e = *DpEpsilon(h, 0.5, 0.01, 1.5, upsilon, gamma);
      EXPECT_NEAR(e / e0, std::pow((1 - gamma) / upsilon, h), 1e-14);
      EXPECT_LT(e, prev);
      prev = e;
    }
  }
}

TEST(DpEpsilonTest, Rejections) {
  EXPECT_TRUE(IsDomainError(DpEpsilon(0, 1, 0.0, 2, 0.75, 0.4).status()));
  EXPECT_TRUE(IsDomainError(DpEpsilon(0, 1, 1.0, 2, 0.75, 0.4).status()));
  EXPECT_THAT(DpEpsilon(-1, 1, 0.05, 2, 0.75, 0.4),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(MatrixDistanceTest, MaxRowNorm) {
  const std::vector<Point> d = {{0.1, 0.2}, {0, 0}, {0.3, 0}};
  EXPECT_DOUBLE_EQ(MatrixDistance(d), 0.3);
  EXPECT_NEAR(SumSquaredNorms(d), 0.14, 1e-15);
}

TEST(AuditPrivacyTest, ReferenceScenarioPasses) {
  SimConfig cfg = PrivacyScenario();
  cfg.horizon = 200;
  auto report = AuditPrivacy(cfg, PrivacyScenarioShift());
  ASSERT_THAT(report, IsOk());
  EXPECT_TRUE(report->pass);
  EXPECT_NEAR(report->rho, 2.0833333333, 1e-9);
  EXPECT_NEAR(report->dist, std::sqrt(0.05), 1e-15);
  EXPECT_LE(report->transmitted_gap, 1e-9);
  ASSERT_EQ(report->divergences.size(), 4u);
  for (const DivergenceEntry& e : report->divergences) {
    EXPECT_TRUE(e.pass);
    EXPECT_GT(e.value, 0.0);
  }
  ASSERT_EQ(report->dp.size(), 10u);
  EXPECT_NEAR(report->dp[0].epsilon, 1.26864, 1e-5);
}

TEST(AuditPrivacyTest, RandomShiftsStayUnderBound) {
  SimConfig cfg = PrivacyScenario();
  cfg.horizon = 300;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    cfg.seed = seed;
    const auto shifts = UniformCloud(5, 2, 40 + seed, -0.17, 0.17);
    auto report = AuditPrivacy(cfg, shifts);
    ASSERT_THAT(report, IsOk());
    EXPECT_TRUE(report->pass) << "seed " << seed;
  }
}

}  // namespace
}  // namespace ppadrc
