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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "Eigen/Dense"
#include "gtest/gtest.h"
#include "ppadrc/base/random.h"
#include "ppadrc/geometry/mahalanobis.h"
#include "ppadrc/geometry/polytope.h"
#include "test_util.h"

namespace ppadrc {
namespace {

using ::ppadrc::testing::IsOk;
using ::ppadrc::testing::StatusIs;
using ::ppadrc::testing::UniformCloud;

double PointSegmentDistance(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = SquaredNorm(ab);
  double t = len2 > 0 ? Dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return Distance(p, a + t * ab);
}

std::vector<std::pair<Point, Point>> BoundaryEdges(const Polytope& poly) {
  const auto& v = poly.vertices();
  std::vector<std::pair<Point, Point>> edges;
  if (v.size() == 1) {
    edges.emplace_back(v[0], v[0]);
  } else if (v.size() == 2) {
    edges.emplace_back(v[0], v[1]);
  } else {
    for (size_t i = 0; i < v.size(); ++i) {
      edges.emplace_back(v[i], v[(i + 1) % v.size()]);
    }
  }
  return edges;
}

// Samples the boundary of `p` densely and measures the exact distance of
// each sample to the boundary of `q`.
double SampledDirectedHausdorff(const Polytope& p, const Polytope& q,
                                int per_edge) {
  const auto target = BoundaryEdges(q);
  double worst = 0.0;
  for (const auto& [a, b] : BoundaryEdges(p)) {
    for (int s = 0; s <= per_edge; ++s) {
      const Point x = a + (static_cast<double>(s) / per_edge) * (b - a);
      double d = std::numeric_limits<double>::infinity();
      for (const auto& [c, e] : target) {
        d = std::min(d, PointSegmentDistance(x, c, e));
      }
      worst = std::max(worst, d);
    }
  }
  return worst;
}

Polytope Hull(const std::vector<Point>& pts, int dim) {
  auto h = ConvexHull(pts, dim);
  EXPECT_THAT(h, IsOk());
  return *h;
}

TEST(HausdorffTest, IdenticalSetsAreAtZero) {
  auto sq = Hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 2);
  EXPECT_EQ(*Hausdorff(sq, sq), 0.0);
}

TEST(HausdorffTest, TranslatedUnitSquares) {
  auto a = Hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 2);
  auto b = Hull({{1, 0}, {2, 0}, {2, 1}, {1, 1}}, 2);
  EXPECT_NEAR(*Hausdorff(a, b), 1.0, 1e-12);
}

TEST(HausdorffTest, NestedSetsUseBoundaries) {
  // Thin rectangle inside a square: the top edge midpoint (2, 2.1) of the
  // rectangle is 1.9 from the square's boundary, farther than any of the
  // rectangle's vertices; the square's corner is sqrt(0.5^2 + 1.9^2) from
  // the rectangle.
  auto outer = Hull({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, 2);
  auto inner = Hull({{0.5, 1.9}, {3.5, 1.9}, {3.5, 2.1}, {0.5, 2.1}}, 2);
  EXPECT_NEAR(DirectedHausdorff(inner, outer), 1.9, 1e-12);
  EXPECT_NEAR(*Hausdorff(inner, outer), std::sqrt(0.25 + 3.61), 1e-12);
}

TEST(HausdorffTest, NestedCubes) {
  std::vector<Point> big;
  std::vector<Point> small;
  for (int m = 0; m < 8; ++m) {
    big.push_back(Point{2.0 * (m & 1), 2.0 * ((m >> 1) & 1),
                        2.0 * ((m >> 2) & 1)});
    small.push_back(Point{0.5 + (m & 1), 0.5 + ((m >> 1) & 1),
                          0.5 + ((m >> 2) & 1)});
  }
  auto a = Hull(big, 3);
  auto b = Hull(small, 3);
  EXPECT_NEAR(DirectedHausdorff(b, a), 0.5, 1e-12);
  EXPECT_NEAR(DirectedHausdorff(a, b), std::sqrt(0.75), 1e-12);
}

TEST(HausdorffTest, DegenerateSegments) {
  auto s = Hull({{0, 0}, {2, 0}}, 2);
  auto t = Hull({{0, 1}, {2, 1}}, 2);
  EXPECT_NEAR(*Hausdorff(s, t), 1.0, 1e-12);
  auto pt = Hull({{1, 0}}, 2);
  EXPECT_NEAR(*Hausdorff(s, pt), 1.0, 1e-12);
}

TEST(HausdorffTest, DimensionMismatch) {
  auto s = Hull({{0, 0}, {2, 0}}, 2);
  auto t = Hull({{0, 0, 0}, {2, 0, 0}}, 3);
  EXPECT_THAT(Hausdorff(s, t).status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(HausdorffOracleTest, MatchesBoundarySampling) {
  Stream s(555);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = Hull(UniformCloud(3 + trial % 7, 2, 100 + trial), 2);
    // Alternate between overlapping, nested and disjoint pairs.
    const double scale = trial % 3 == 0 ? 0.3 : 1.0;
    const double shift = trial % 3 == 2 ? 1.5 : 0.0;
    auto cloud = UniformCloud(3 + trial % 5, 2, 900 + trial, -scale, scale);
    for (Point& x : cloud) x[0] += shift;
    auto q = Hull(cloud, 2);
    const double exact = *Hausdorff(p, q);
    const double sampled = std::max(SampledDirectedHausdorff(p, q, 4000),
                                    SampledDirectedHausdorff(q, p, 4000));
    EXPECT_NEAR(exact, sampled, 1e-3) << "trial " << trial;
    EXPECT_GE(exact, sampled - 1e-12) << "trial " << trial;
  }
}

TEST(HausdorffPropertyTest, MetricAxioms) {
  for (int dim : {2, 3}) {
    for (int trial = 0; trial < 40; ++trial) {
      auto p = Hull(UniformCloud(6, dim, 10 * trial + dim), dim);
      auto q = Hull(UniformCloud(7, dim, 10 * trial + dim + 1000), dim);
      auto r = Hull(UniformCloud(5, dim, 10 * trial + dim + 2000, -0.5, 1.5),
                    dim);
      const double pq = *Hausdorff(p, q);
      EXPECT_NEAR(pq, *Hausdorff(q, p), 1e-9);
      EXPECT_NEAR(*Hausdorff(p, p), 0.0, 1e-9);
      EXPECT_LE(*Hausdorff(p, r), pq + *Hausdorff(q, r) + 1e-9);
    }
  }
}

TEST(BuildHullsTest, PrismFromSixPoints) {
  std::vector<Point> pts = {{1, 0, 0}, {0, 2, 0}, {-0.25, -0.25, 0},
                            {0, 0, 2}, {0, 1, 0}, {0.25, 0.5, 0}};
  const int noisy[] = {2};
  const double margins[] = {0.4};
  auto hulls = BuildHullsBC(pts, noisy, margins);
  ASSERT_THAT(hulls, IsOk());
  // Triangular prism: three base corners at z = 0 and z = 2.
  EXPECT_EQ(hulls->b.vertices().size(), 6);
  EXPECT_EQ(hulls->c.vertices().size(), 6);
  auto zrange = [](const Polytope& poly) {
    const auto r = CoordinateRanges(poly.vertices());
    return r[2];
  };
  EXPECT_NEAR(zrange(hulls->b).first, 0.0, 1e-12);
  EXPECT_NEAR(zrange(hulls->b).second, 2.0, 1e-12);
  EXPECT_NEAR(zrange(hulls->c).first, -0.4, 1e-12);
  EXPECT_NEAR(zrange(hulls->c).second, 2.4, 1e-12);
  for (const Point& v : hulls->b.vertices()) {
    EXPECT_TRUE(*Contains(hulls->c, v));
  }
  for (const Point& v : hulls->a.vertices()) {
    EXPECT_TRUE(*Contains(hulls->b, v));
  }
}

TEST(BuildHullsTest, ZeroMarginGivesEqualHulls) {
  auto init = UniformCloud(6, 2, 3);
  const int noisy[] = {1};
  const double margins[] = {0.0};
  auto hulls = BuildHullsBC(init, noisy, margins);
  ASSERT_THAT(hulls, IsOk());
  EXPECT_NEAR(*Hausdorff(hulls->b, hulls->c), 0.0, 1e-12);
}

TEST(BuildHullsTest, MarginWidensSquare) {
  std::vector<Point> sq = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const int noisy[] = {1};
  const double margins[] = {0.3};
  auto hulls = BuildHullsBC(sq, noisy, margins);
  ASSERT_THAT(hulls, IsOk());
  const auto r = CoordinateRanges(hulls->c.vertices());
  EXPECT_NEAR(r[1].first, -0.3, 1e-12);
  EXPECT_NEAR(r[1].second, 1.3, 1e-12);
  EXPECT_NEAR(r[0].first, 0.0, 1e-12);
  EXPECT_NEAR(r[0].second, 1.0, 1e-12);
}

TEST(BuildHullsTest, RejectsInvalidNoiseSets) {
  auto init = UniformCloud(5, 2, 1);
  const int all[] = {0, 1};
  const double two[] = {0.1, 0.1};
  EXPECT_THAT(BuildHullsBC(init, all, two).status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
  const int one[] = {1};
  EXPECT_THAT(BuildHullsBC(init, one, {}).status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(BuildHullsBC(init, {}, {}).status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
  const int out_of_range[] = {2};
  const double one_margin[] = {0.1};
  EXPECT_THAT(BuildHullsBC(init, out_of_range, one_margin).status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
  const double negative[] = {-0.1};
  EXPECT_THAT(BuildHullsBC(init, one, negative).status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(BoundingBoxTest, Examples) {
  std::vector<Point> tri = {{0, 0}, {1, 0}, {0, 1}};
  auto box = BuildBoundingBoxD(tri);
  ASSERT_THAT(box, IsOk());
  EXPECT_EQ(box->vertices().size(), 4);
  EXPECT_TRUE(*Contains(*box, Point{1, 1}));
  std::vector<Point> one = {{0.3, 0.4}};
  auto pt = BuildBoundingBoxD(one);
  ASSERT_THAT(pt, IsOk());
  EXPECT_EQ(pt->affine_dim(), 0);
  EXPECT_EQ(pt->vertices().size(), 1);
}

TEST(DerivedHullPropertyTest, HausdorffBoundsHold) {
  for (int dim : {2, 3}) {
    for (int trial = 0; trial < 100; ++trial) {
      auto init = UniformCloud(4 + trial % 8, dim, 7000 + 31 * trial + dim);
      auto a = Hull(init, dim);
      const double mu = Diameter(a);
      const double bound = std::sqrt(dim / 2.0) * mu;
      auto box = BuildBoundingBoxD(init);
      ASSERT_THAT(box, IsOk());
      EXPECT_LE(*Hausdorff(a, *box), bound + 1e-9);
      for (const Point& v : a.vertices()) EXPECT_TRUE(*Contains(*box, v));

      const int noisy[] = {trial % dim};
      const double margins[] = {0.05 * (trial % 10)};
      auto hulls = BuildHullsBC(init, noisy, margins);
      ASSERT_THAT(hulls, IsOk());
      EXPECT_LE(*Hausdorff(a, hulls->b), bound + 1e-9);
      EXPECT_LE(*Hausdorff(a, hulls->c), bound + margins[0] + 1e-9);
      for (const Point& v : hulls->b.vertices()) {
        EXPECT_TRUE(*Contains(hulls->c, v));
      }
    }
  }
}

TEST(MahalanobisTest, Examples) {
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  EXPECT_EQ(*MahalanobisSq(Point{1, 2}, Point{1, 2}, id), 0.0);
  EXPECT_NEAR(*MahalanobisSq(Point{3, 4}, Point{0, 0}, id), 25.0, 1e-12);
  Eigen::Matrix2d diag;
  diag << 4, 0, 0, 1;
  EXPECT_NEAR(*MahalanobisSq(Point{2, 1}, Point{0, 0}, diag), 2.0, 1e-12);
}

TEST(MahalanobisTest, RejectsBadCovariance) {
  Eigen::Matrix2d singular;
  singular << 1, 1, 1, 1;
  EXPECT_THAT(MahalanobisSq(Point{1, 0}, Point{0, 0}, singular).status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
  Eigen::Matrix2d asym;
  asym << 2, 1, 0, 2;
  EXPECT_THAT(MahalanobisSq(Point{1, 0}, Point{0, 0}, asym).status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(MahalanobisSq(Point{1, 0, 0}, Point{0, 0},
                            Eigen::Matrix2d::Identity())
                  .status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(MahalanobisPropertyTest, InvariantUnderLinearMaps) {
  Stream s(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 2;
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd m(d, d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        if (c <= r) l(r, c) = s.Normal();
        m(r, c) = s.Normal();
      }
      l(r, r) = 0.5 + std::abs(l(r, r));
    }
    if (std::abs(m.determinant()) < 0.1) continue;
    const Eigen::MatrixXd cov = l * l.transpose();
    Point x(d);
    Point mean(d);
    for (int k = 0; k < d; ++k) {
      x[k] = s.Normal();
      mean[k] = s.Normal();
    }
    auto map = [&](const Point& p) {
      Eigen::VectorXd v(d);
      for (int k = 0; k < d; ++k) v[k] = p[k];
      const Eigen::VectorXd w = m * v;
      Point out(d);
      for (int k = 0; k < d; ++k) out[k] = w[k];
      return out;
    };
    const double before = *MahalanobisSq(x, mean, cov);
    const Eigen::MatrixXd cov2 = m * cov * m.transpose();
    const double after =
        *MahalanobisSq(map(x), map(mean), 0.5 * (cov2 + cov2.transpose()));
    EXPECT_NEAR(before, after, 1e-8 * std::max(1.0, before));
    EXPECT_GE(before, 0.0);
  }
}

}  // namespace
}  // namespace ppadrc
