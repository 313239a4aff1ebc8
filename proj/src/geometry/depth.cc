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

#include "ppadrc/geometry/depth.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "Eigen/Dense"
#include "absl/strings/str_cat.h"
#include "ppadrc/base/errors.h"
#include "ppadrc/base/random.h"
#include "ppadrc/base/status_macros.h"

namespace ppadrc {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Offsets {
  int coincident = 0;
  std::vector<Point> rel;
  std::vector<double> len;
};

Offsets SplitCloud(const Point& p, std::span<const Point> cloud, double tol) {
  Offsets o;
  o.rel.reserve(cloud.size());
  o.len.reserve(cloud.size());
  for (const Point& q : cloud) {
    Point r = q - p;
    const double l = Norm(r);
    if (l <= tol) {
      ++o.coincident;
    } else {
      o.rel.push_back(r);
      o.len.push_back(l);
    }
  }
  return o;
}

int CountClosed(const Offsets& o, const Point& u, double tol) {
  int c = o.coincident;
  for (const Point& r : o.rel) {
    if (Dot(u, r) >= -tol) ++c;
  }
  return c;
}

// Midpoints of the arcs cut out of the unit circle by the angles at which
// some planar vector r crosses u . r = -tol (tol = 0 gives the open-arc
// decomposition). `xs`, `ys` are planar coordinates of the vectors.
std::vector<double> ArcMidpoints(std::span<const double> xs,
                                 std::span<const double> ys, double tol) {
  std::vector<double> angles;
  angles.reserve(2 * xs.size());
  for (size_t k = 0; k < xs.size(); ++k) {
    const double l = std::hypot(xs[k], ys[k]);
    const double theta = std::atan2(ys[k], xs[k]);
    const double half =
        0.5 * std::numbers::pi + std::asin(std::min(1.0, tol / l));
    for (double a : {theta + half, theta - half}) {
      a = std::fmod(a, kTwoPi);
      if (a < 0) a += kTwoPi;
      angles.push_back(a);
    }
  }
  std::sort(angles.begin(), angles.end());
  std::vector<double> mids;
  mids.reserve(angles.size());
  for (size_t i = 0; i < angles.size(); ++i) {
    const double a = angles[i];
    const double b =
        i + 1 < angles.size() ? angles[i + 1] : angles[0] + kTwoPi;
    if (b - a > 1e-13) mids.push_back(0.5 * (a + b));
  }
  if (mids.empty()) mids = angles;
  return mids;
}

DepthResult Depth2d(const Point& p, std::span<const Point> cloud, double tol) {
  const Offsets o = SplitCloud(p, cloud, tol);
  DepthResult best{static_cast<int>(cloud.size()), Point::Unit(2, 0)};
  if (o.rel.empty()) return best;
  std::vector<double> xs(o.rel.size());
  std::vector<double> ys(o.rel.size());
  for (size_t k = 0; k < o.rel.size(); ++k) {
    xs[k] = o.rel[k][0];
    ys[k] = o.rel[k][1];
  }
  best.depth = std::numeric_limits<int>::max();
  for (double phi : ArcMidpoints(xs, ys, tol)) {
    const Point u{std::cos(phi), std::sin(phi)};
    const int c = CountClosed(o, u, tol);
    if (c < best.depth) {
      best.depth = c;
      best.witness_normal = u;
    }
  }
  return best;
}

DepthResult Depth3d(const Point& p, std::span<const Point> cloud, double tol) {
  const Offsets o = SplitCloud(p, cloud, tol);
  DepthResult best{static_cast<int>(cloud.size()), Point::Unit(3, 0)};
  if (o.rel.empty()) return best;
  best.depth = std::numeric_limits<int>::max();
  auto consider = [&](const Point& u) {
    const int c = CountClosed(o, u, tol);
    if (c < best.depth) {
      best.depth = c;
      best.witness_normal = u;
    }
  };
  const int m = static_cast<int>(o.rel.size());
  for (int i = 0; i < m; ++i) {
    consider(o.rel[i] / o.len[i]);
    consider(-o.rel[i] / o.len[i]);
  }
  std::vector<double> proj(m);
  std::vector<double> wproj(m);
  std::vector<int> boundary;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Point& ri = o.rel[i];
      const Point& rj = o.rel[j];
      const Point c = Cross(ri, rj);
      const double cl = Norm(c);
      if (cl <= 1e-12 * o.len[i] * o.len[j]) continue;
      // v = c / |c| is a vertex of the great-circle arrangement: the normal
      // of the plane through p, q_i and q_j. The open cells next to +v and
      // -v are reached by moving within that plane along w, chosen so that
      // both q_i and q_j fall strictly on the negative side.
      const Point v = c / cl;
      boundary.clear();
      for (int k = 0; k < m; ++k) {
        proj[k] = Dot(v, o.rel[k]);
        if (std::abs(proj[k]) <= 1e-12 * o.len[k]) boundary.push_back(k);
      }
      if (boundary.size() > 2) {
        // Several points on the plane: the cells around v are cut by all
        // of them, so take the in-plane arc midpoints.
        const Point b1 = ri / o.len[i];
        const Point b2 = Cross(v, b1);
        std::vector<double> xs;
        std::vector<double> ys;
        for (int k : boundary) {
          xs.push_back(Dot(o.rel[k], b1));
          ys.push_back(Dot(o.rel[k], b2));
        }
        for (double phi : ArcMidpoints(xs, ys, 0.0)) {
          const Point w = std::cos(phi) * b1 + std::sin(phi) * b2;
          for (double sign : {1.0, -1.0}) {
            double eps = 1.0;
            for (int k = 0; k < m; ++k) {
              if (std::abs(proj[k]) <= 1e-12 * o.len[k]) continue;
              const double wk = std::abs(Dot(w, o.rel[k]));
              if (wk > 0.0) eps = std::min(eps, 0.5 * std::abs(proj[k]) / wk);
            }
            Point u = sign * v + eps * w;
            consider(u / Norm(u));
          }
        }
        continue;
      }
      // w . ri = w . rj = -1, built from the dual basis of (ri, rj) in the
      // plane; the Gram determinant a*d - b*b cancels catastrophically for
      // nearly parallel offsets, whereas |c|^2 does not.
      const double c2 = cl * cl;
      const Point w = -(Cross(rj, c) + Cross(c, ri)) / c2;
      double eps = 1.0 / Norm(w);
      for (int k = 0; k < m; ++k) {
        wproj[k] = Dot(w, o.rel[k]);
        if (k == i || k == j) continue;
        const double wk = std::abs(wproj[k]);
        if (wk > 0.0) eps = std::min(eps, 0.5 * std::abs(proj[k]) / wk);
      }
      // w is orthogonal to v, so both perturbed normals share one length.
      const double scaled_tol = tol * std::sqrt(1.0 + eps * eps * Dot(w, w));
      int plus = o.coincident;
      int minus = o.coincident;
      for (int k = 0; k < m; ++k) {
        const double shift = eps * wproj[k];
        if (proj[k] + shift >= -scaled_tol) ++plus;
        if (-proj[k] + shift >= -scaled_tol) ++minus;
      }
      if (std::min(plus, minus) < best.depth) {
        const double sign = plus <= minus ? 1.0 : -1.0;
        Point u = sign * v + eps * w;
        best.depth = std::min(plus, minus);
        best.witness_normal = u / Norm(u);
      }
    }
  }
  return best;
}

DepthResult DepthUnchecked(const Point& p, std::span<const Point> cloud,
                           double tol) {
  return p.dim() == 2 ? Depth2d(p, cloud, tol) : Depth3d(p, cloud, tol);
}

template <int D>
Point RadonFixed(std::span<const Point> pts) {
  // Affine dependency lambda (sum lambda_i x_i = 0, sum lambda_i = 0) from
  // the signed maximal minors of the (D+1) x (D+2) lifted point matrix.
  Eigen::Matrix<double, D + 1, D + 2> lifted;
  for (int i = 0; i < D + 2; ++i) {
    for (int k = 0; k < D; ++k) lifted(k, i) = pts[i][k];
    lifted(D, i) = 1.0;
  }
  std::array<double, D + 2> lambda;
  for (int i = 0; i < D + 2; ++i) {
    Eigen::Matrix<double, D + 1, D + 1> minor;
    for (int c = 0, col = 0; c < D + 2; ++c) {
      if (c == i) continue;
      minor.col(col++) = lifted.col(c);
    }
    lambda[i] = (i % 2 == 0 ? 1.0 : -1.0) * minor.determinant();
  }
  Point num(D);
  double den = 0.0;
  for (int i = 0; i < D + 2; ++i) {
    if (lambda[i] > 0) {
      num += lambda[i] * pts[i];
      den += lambda[i];
    }
  }
  if (!(den > 0.0)) return Centroid(pts);
  return num / den;
}

Point IteratedRadon(std::span<const Point> cloud, int dim, Stream& stream) {
  std::vector<Point> pool(cloud.begin(), cloud.end());
  Point last = Centroid(cloud);
  const size_t group = dim + 2;
  std::array<Point, 5> pick;
  while (pool.size() >= group) {
    for (size_t k = 0; k < group; ++k) {
      const size_t idx = stream.UniformInt(pool.size());
      pick[k] = pool[idx];
      pool[idx] = pool.back();
      pool.pop_back();
    }
    last = RadonPoint(std::span<const Point>(pick.data(), group));
    pool.push_back(last);
  }
  return last;
}

}  // namespace

Point RadonPoint(std::span<const Point> pts) {
  return pts.size() == 4 ? RadonFixed<2>(pts) : RadonFixed<3>(pts);
}

absl::StatusOr<DepthResult> TukeyDepth(const Point& p,
                                       std::span<const Point> cloud,
                                       double tol) {
  if (cloud.empty()) {
    return absl::InvalidArgumentError("Tukey depth in an empty cloud");
  }
  if (p.dim() != 2 && p.dim() != 3) {
    return absl::InvalidArgumentError(
        absl::StrCat("Tukey depth needs d in {2, 3}, got ", p.dim()));
  }
  RETURN_IF_ERROR(ValidateCloud(cloud, p.dim()));
  if (!p.IsFinite()) {
    return absl::InvalidArgumentError("query point is not finite");
  }
  return DepthUnchecked(p, cloud, tol);
}

int CenterpointDepthTarget(int n, int dim) {
  const int denom = dim == 2 ? 3 : 6;
  return (n + denom - 1) / denom;
}

absl::StatusOr<CenterpointResult> Centerpoint(
    std::span<const Point> cloud, int dim, const CenterpointOptions& options) {
  if (dim != 2 && dim != 3) {
    return absl::InvalidArgumentError(
        absl::StrCat("centerpoint needs d in {2, 3}, got ", dim));
  }
  RETURN_IF_ERROR(ValidateCloud(cloud, dim));
  const int n = static_cast<int>(cloud.size());
  if (n < dim + 1) {
    return InsufficientPointsError(
        absl::StrCat("centerpoint needs at least ", dim + 1, " points, got ",
                     n));
  }

  CenterpointResult best;
  best.depth = -1;
  best.target = CenterpointDepthTarget(n, dim);
  const double tol = options.tol;
  // Returns true once the deepest candidate so far reaches the target.
  auto consider = [&](const Point& c) {
    const int depth = DepthUnchecked(c, cloud, tol).depth;
    ++best.evaluations;
    if (depth > best.depth) {
      best.depth = depth;
      best.point = c;
    }
    return best.depth >= best.target;
  };

  Stream stream(Mix64(options.seed));
  if (consider(CoordinateMedian(cloud))) return best;
  if (consider(Centroid(cloud))) return best;
  for (int k = 0; k < options.radon_candidates; ++k) {
    if (consider(IteratedRadon(cloud, dim, stream))) return best;
  }

  for (const Point& q : cloud) {
    if (consider(q)) return best;
  }
  if (dim == 2 && n <= 15) {
    std::vector<std::pair<Point, Point>> lines;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Point dir = cloud[j] - cloud[i];
        if (Norm(dir) > tol) lines.emplace_back(cloud[i], dir);
      }
    }
    for (size_t a = 0; a < lines.size(); ++a) {
      for (size_t b = a + 1; b < lines.size(); ++b) {
        const auto& [pa, da] = lines[a];
        const auto& [pb, db] = lines[b];
        const double denom = da[0] * db[1] - da[1] * db[0];
        if (std::abs(denom) <= 1e-14 * Norm(da) * Norm(db)) continue;
        const Point w = pb - pa;
        const double s = (w[0] * db[1] - w[1] * db[0]) / denom;
        if (consider(pa + s * da)) return best;
      }
    }
  }

  const auto ranges = [&] {
    double diag2 = 0.0;
    for (int k = 0; k < dim; ++k) {
      double lo = cloud[0][k];
      double hi = cloud[0][k];
      for (const Point& q : cloud) {
        lo = std::min(lo, q[k]);
        hi = std::max(hi, q[k]);
      }
      diag2 += (hi - lo) * (hi - lo);
    }
    return std::sqrt(diag2);
  }();
  // Step sizes cycle through halvings of the cloud diameter so that clouds
  // flattened far below their diameter in some direction (agents that have
  // agreed on noiseless coordinates) are searched at their own scale.
  constexpr int kScales = 48;
  const double initial_step = 0.25 * ranges;
  for (int it = 0; it < options.search_budget && best.depth < best.target;
       ++it) {
    const double step = std::ldexp(initial_step, -(it % kScales));
    Point c = best.point;
    for (int k = 0; k < dim; ++k) c[k] += step * stream.Normal();
    consider(c);
  }
  if (best.depth >= best.target) return best;
  return SearchExhaustedError(absl::StrCat(
      "no candidate reached depth ", best.target, " among ", n,
      " points in R^", dim, " (deepest found: ", best.depth, " after ",
      best.evaluations, " evaluations)"));
}

}  // namespace ppadrc
