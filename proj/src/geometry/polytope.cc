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

#include "ppadrc/geometry/polytope.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "Eigen/Dense"
#include "absl/strings/str_cat.h"
#include "ppadrc/base/status_macros.h"

namespace ppadrc {
namespace {

struct Planar {
  double x;
  double y;
  int index;
};

double Cross2(const Planar& o, const Planar& a, const Planar& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain. Returns the indices of the strictly convex hull
// vertices in counterclockwise order; near-collinear points are dropped.
std::vector<int> MonotoneChain(std::vector<Planar> pts, double eps_area) {
  std::sort(pts.begin(), pts.end(), [](const Planar& a, const Planar& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  const int n = static_cast<int>(pts.size());
  if (n < 3) {
    std::vector<int> out;
    for (const Planar& p : pts) out.push_back(p.index);
    return out;
  }
  std::vector<Planar> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && Cross2(h[k - 2], h[k - 1], pts[i]) <= eps_area) --k;
    h[k++] = pts[i];
  }
  for (int i = n - 2, t = k + 1; i >= 0; --i) {
    while (k >= t && Cross2(h[k - 2], h[k - 1], pts[i]) <= eps_area) --k;
    h[k++] = pts[i];
  }
  std::vector<int> ring;
  for (int i = 0; i < k - 1; ++i) ring.push_back(h[i].index);
  return ring;
}

double CoordinateScale(std::span<const Point> pts) {
  double s = 1.0;
  for (const Point& p : pts) {
    for (int k = 0; k < p.dim(); ++k) s = std::max(s, std::abs(p[k]));
  }
  return s;
}

// Any unit vector orthogonal to the unit vector n (3D).
Point AnyOrthogonal(const Point& n) {
  const Point axis = std::abs(n[0]) < 0.9 ? Point{1, 0, 0} : Point{0, 1, 0};
  Point e = Cross(n, axis);
  return e / Norm(e);
}

Point ClosestOnSegment(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = SquaredNorm(ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp(Dot(p - a, ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

// Closest point on triangle abc to p (Ericson, Real-Time Collision Detection).
Point ClosestOnTriangle(const Point& p, const Point& a, const Point& b,
                        const Point& c) {
  const Point ab = b - a;
  const Point ac = c - a;
  const Point ap = p - a;
  const double d1 = Dot(ab, ap);
  const double d2 = Dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;
  const Point bp = p - b;
  const double d3 = Dot(ab, bp);
  const double d4 = Dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    return a + (d1 / (d1 - d3)) * ab;
  }
  const Point cp = p - c;
  const double d5 = Dot(ab, cp);
  const double d6 = Dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    return a + (d2 / (d2 - d6)) * ac;
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
  }
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

double DistanceToCell(const Point& p, const Cell& cell) {
  switch (cell.size) {
    case 1:
      return Distance(p, cell.v[0]);
    case 2:
      return Distance(p, ClosestOnSegment(p, cell.v[0], cell.v[1]));
    default:
      return Distance(p,
                      ClosestOnTriangle(p, cell.v[0], cell.v[1], cell.v[2]));
  }
}

// max over the cell of min_j (offset_j - normal_j . a). The objective is
// concave and piecewise linear, so the maximum sits at a vertex of the LP
// { t <= offset_j - normal_j . a(w), w in the standard simplex }; all such
// vertices are enumerated.
double MaxFacetSlackOnCell(const Cell& cell,
                           const std::vector<Halfspace>& facets) {
  const int m = cell.size - 1;
  const Point& v0 = cell.v[0];
  const int num_facets = static_cast<int>(facets.size());
  if (m == 0) {
    double h = std::numeric_limits<double>::infinity();
    for (const Halfspace& f : facets) {
      h = std::min(h, f.offset - Dot(f.normal, v0));
    }
    return h;
  }
  // Rows a . z <= rhs with z = (w_1..w_m, t).
  const int vars = m + 1;
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (const Halfspace& f : facets) {
    Eigen::VectorXd r(vars);
    for (int k = 0; k < m; ++k) r(k) = Dot(f.normal, cell.v[k + 1] - v0);
    r(m) = 1.0;
    rows.push_back(r);
    rhs.push_back(f.offset - Dot(f.normal, v0));
  }
  for (int k = 0; k < m; ++k) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(vars);
    r(k) = -1.0;
    rows.push_back(r);
    rhs.push_back(0.0);
  }
  {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(vars);
    for (int k = 0; k < m; ++k) r(k) = 1.0;
    rows.push_back(r);
    rhs.push_back(1.0);
  }
  const int total = static_cast<int>(rows.size());
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> pick(vars);
  // Enumerate index combinations of size `vars`; the first must be a facet
  // row since t is otherwise unconstrained.
  auto evaluate = [&]() {
    Eigen::MatrixXd a(vars, vars);
    Eigen::VectorXd b(vars);
    for (int r = 0; r < vars; ++r) {
      a.row(r) = rows[pick[r]].transpose();
      b(r) = rhs[pick[r]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) return;
    const Eigen::VectorXd z = lu.solve(b);
    for (int r = 0; r < total; ++r) {
      if (rows[r].dot(z) > rhs[r] + 1e-10) return;
    }
    best = std::max(best, z(m));
  };
  for (pick[0] = 0; pick[0] < num_facets; ++pick[0]) {
    for (pick[1] = pick[0] + 1; pick[1] < total; ++pick[1]) {
      if (vars == 2) {
        evaluate();
        continue;
      }
      for (pick[2] = pick[1] + 1; pick[2] < total; ++pick[2]) evaluate();
    }
  }
  return best;
}

}  // namespace

std::vector<std::pair<double, double>> CoordinateRanges(
    std::span<const Point> points) {
  const int dim = points.front().dim();
  std::vector<std::pair<double, double>> ranges(
      dim, {std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()});
  for (const Point& p : points) {
    for (int k = 0; k < dim; ++k) {
      ranges[k].first = std::min(ranges[k].first, p[k]);
      ranges[k].second = std::max(ranges[k].second, p[k]);
    }
  }
  return ranges;
}

absl::StatusOr<Polytope> ConvexHull(std::span<const Point> points, int dim) {
  if (dim != 2 && dim != 3) {
    return absl::InvalidArgumentError(
        absl::StrCat("hull dimension must be 2 or 3, got ", dim));
  }
  if (points.empty()) {
    return absl::InvalidArgumentError("convex hull of an empty point set");
  }
  RETURN_IF_ERROR(ValidateCloud(points, dim));

  const double scale = CoordinateScale(points);
  const double eps_len = 1e-12 * scale;
  const int n = static_cast<int>(points.size());

  Polytope poly;
  poly.dim_ = dim;
  const Point& p0 = points[0];
  poly.carrier_origin_ = p0;

  // Affine dimension of the set, found by successive farthest points.
  int i1 = 0;
  double d1 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = Distance(points[i], p0);
    if (d > d1) {
      d1 = d;
      i1 = i;
    }
  }
  if (d1 <= eps_len) {
    poly.affine_dim_ = 0;
    poly.vertices_ = {p0};
    poly.cells_ = {Cell{{p0, p0, p0}, 1}};
    return poly;
  }
  // Facet tolerances follow the extent of the set so that tiny clusters keep
  // their vertices; the floor covers rounding in the absolute coordinates.
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  const double eps_side = std::max(1e-10 * d1, noise);
  const double eps_area = std::max(1e-12 * d1, noise) * d1;
  const Point u = (points[i1] - p0) / d1;
  int i2 = 0;
  double d2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const Point r = points[i] - p0;
    const double d = Norm(r - Dot(r, u) * u);
    if (d > d2) {
      d2 = d;
      i2 = i;
    }
  }
  if (d2 <= eps_len) {
    int lo = 0;
    int hi = 0;
    for (int i = 0; i < n; ++i) {
      const double s = Dot(points[i] - p0, u);
      if (s < Dot(points[lo] - p0, u)) lo = i;
      if (s > Dot(points[hi] - p0, u)) hi = i;
    }
    poly.affine_dim_ = 1;
    poly.vertices_ = {points[lo], points[hi]};
    poly.cells_ = {Cell{{points[lo], points[hi], points[hi]}, 2}};
    poly.carrier_basis_ = {u};
    return poly;
  }

  if (dim == 2) {
    std::vector<Planar> planar;
    planar.reserve(n);
    for (int i = 0; i < n; ++i) planar.push_back({points[i][0], points[i][1], i});
    const std::vector<int> ring = MonotoneChain(planar, eps_area);
    poly.affine_dim_ = 2;
    for (int idx : ring) poly.vertices_.push_back(points[idx]);
    const int m = static_cast<int>(poly.vertices_.size());
    for (int i = 0; i < m; ++i) {
      const Point& a = poly.vertices_[i];
      const Point& b = poly.vertices_[(i + 1) % m];
      Point normal{b[1] - a[1], a[0] - b[0]};
      normal /= Norm(normal);
      poly.facets_.push_back({normal, Dot(normal, a)});
      poly.cells_.push_back(Cell{{a, b, b}, 2});
    }
    return poly;
  }

  // dim == 3.
  Point e2 = points[i2] - p0;
  e2 -= Dot(e2, u) * u;
  e2 /= Norm(e2);
  const Point plane_normal = Cross(u, e2);
  double d3 = 0.0;
  for (int i = 0; i < n; ++i) {
    d3 = std::max(d3, std::abs(Dot(points[i] - p0, plane_normal)));
  }
  if (d3 <= eps_len) {
    std::vector<Planar> planar;
    planar.reserve(n);
    for (int i = 0; i < n; ++i) {
      const Point r = points[i] - p0;
      planar.push_back({Dot(r, u), Dot(r, e2), i});
    }
    const std::vector<int> ring = MonotoneChain(planar, eps_area);
    poly.affine_dim_ = 2;
    poly.carrier_basis_ = {u, e2};
    for (int idx : ring) poly.vertices_.push_back(points[idx]);
    for (size_t i = 1; i + 1 < ring.size(); ++i) {
      poly.cells_.push_back(Cell{
          {poly.vertices_[0], poly.vertices_[i], poly.vertices_[i + 1]}, 3});
    }
    return poly;
  }

  // Full-dimensional 3D hull: every supporting plane through three input
  // points is a facet plane. Input sizes here are small (tens of points).
  std::vector<Halfspace> planes;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Point normal = Cross(points[j] - points[i], points[k] - points[i]);
        const double len = Norm(normal);
        if (len <= eps_area) continue;
        normal /= len;
        double offset = Dot(normal, points[i]);
        bool pos = false;
        bool neg = false;
        for (int m = 0; m < n && !(pos && neg); ++m) {
          const double s = Dot(normal, points[m]) - offset;
          if (s > eps_side) pos = true;
          if (s < -eps_side) neg = true;
        }
        if (pos && neg) continue;
        if (pos) {
          normal = -normal;
          offset = -offset;
        }
        bool duplicate = false;
        for (const Halfspace& h : planes) {
          if (Dot(h.normal, normal) > 1.0 - 1e-9 &&
              std::abs(h.offset - offset) <= eps_side) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) planes.push_back({normal, offset});
      }
    }
  }

  std::vector<int> vertex_of(n, -1);
  std::vector<std::vector<int>> rings;
  std::vector<Halfspace> kept;
  for (const Halfspace& h : planes) {
    const Point b1 = AnyOrthogonal(h.normal);
    const Point b2 = Cross(h.normal, b1);
    std::vector<Planar> planar;
    for (int i = 0; i < n; ++i) {
      if (std::abs(Dot(h.normal, points[i]) - h.offset) <= eps_side) {
        planar.push_back({Dot(points[i], b1), Dot(points[i], b2), i});
      }
    }
    std::vector<int> ring = MonotoneChain(planar, eps_area);
    if (ring.size() < 3) continue;
    kept.push_back(h);
    rings.push_back(std::move(ring));
  }
  for (const auto& ring : rings) {
    for (int idx : ring) vertex_of[idx] = 0;
  }
  for (int i = 0; i < n; ++i) {
    if (vertex_of[i] == 0) {
      vertex_of[i] = static_cast<int>(poly.vertices_.size());
      poly.vertices_.push_back(points[i]);
    }
  }
  for (const auto& ring : rings) {
    for (size_t i = 1; i + 1 < ring.size(); ++i) {
      const std::array<int, 3> tri = {vertex_of[ring[0]], vertex_of[ring[i]],
                                      vertex_of[ring[i + 1]]};
      poly.triangles_.push_back(tri);
      poly.cells_.push_back(Cell{{poly.vertices_[tri[0]],
                                  poly.vertices_[tri[1]],
                                  poly.vertices_[tri[2]]},
                                 3});
    }
  }
  poly.affine_dim_ = 3;
  poly.facets_ = std::move(kept);
  poly.carrier_basis_ = {Point{1, 0, 0}, Point{0, 1, 0}, Point{0, 0, 1}};
  return poly;
}

absl::StatusOr<bool> Contains(const Polytope& poly, const Point& p,
                              double tol) {
  if (p.dim() != poly.dim()) {
    return absl::InvalidArgumentError(
        absl::StrCat("point dimension ", p.dim(), " does not match polytope ",
                     "dimension ", poly.dim()));
  }
  if (tol < 0) return absl::InvalidArgumentError("negative tolerance");
  if (poly.IsFullDimensional()) {
    for (const Halfspace& f : poly.facets()) {
      if (Dot(f.normal, p) - f.offset > tol) return false;
    }
    return true;
  }
  return DistanceToPolytope(poly, p) <= tol;
}

double DistanceToPolytope(const Polytope& poly, const Point& p) {
  if (poly.IsFullDimensional()) {
    bool inside = true;
    for (const Halfspace& f : poly.facets()) {
      if (Dot(f.normal, p) > f.offset) {
        inside = false;
        break;
      }
    }
    if (inside) return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Cell& cell : poly.cells()) {
    best = std::min(best, DistanceToCell(p, cell));
  }
  return best;
}

double Diameter(const Polytope& poly) {
  const auto& v = poly.vertices();
  double best = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    for (size_t j = i + 1; j < v.size(); ++j) {
      best = std::max(best, Distance(v[i], v[j]));
    }
  }
  return best;
}

double DirectedHausdorff(const Polytope& p, const Polytope& q) {
  // For a in R^d, dist(a, dQ) = max(dist(a, Q), min_j slack_j(a)) when Q is
  // full-dimensional: the first term is convex (maximized at cell vertices)
  // and the second concave (maximized by an LP over the cell).
  double best = 0.0;
  for (const Cell& cell : p.cells()) {
    for (int k = 0; k < cell.size; ++k) {
      best = std::max(best, DistanceToPolytope(q, cell.v[k]));
    }
    if (q.IsFullDimensional()) {
      best = std::max(best, MaxFacetSlackOnCell(cell, q.facets()));
    }
  }
  return best;
}

absl::StatusOr<double> Hausdorff(const Polytope& p, const Polytope& q) {
  if (p.dim() != q.dim()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Hausdorff distance between dimensions ", p.dim(),
                     " and ", q.dim()));
  }
  return std::max(DirectedHausdorff(p, q), DirectedHausdorff(q, p));
}

absl::StatusOr<DerivedHulls> BuildHullsBC(std::span<const Point> initials,
                                          std::span<const int> noisy_dims,
                                          std::span<const double> margins) {
  if (initials.empty()) {
    return absl::InvalidArgumentError("no initial states");
  }
  const int dim = initials.front().dim();
  ASSIGN_OR_RETURN(Polytope a, ConvexHull(initials, dim));
  if (noisy_dims.empty()) {
    return absl::InvalidArgumentError("noisy_dims is empty");
  }
  if (static_cast<int>(noisy_dims.size()) >= dim) {
    return absl::InvalidArgumentError(
        "all dimensions are noisy; at least one dimension must be noise-free");
  }
  std::vector<bool> seen(dim, false);
  for (int k : noisy_dims) {
    if (k < 0 || k >= dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("noisy dimension ", k, " out of range [0, ", dim, ")"));
    }
    if (seen[k]) {
      return absl::InvalidArgumentError(
          absl::StrCat("noisy dimension ", k, " listed twice"));
    }
    seen[k] = true;
  }
  if (margins.empty()) return absl::InvalidArgumentError("margins are empty");
  if (margins.size() != noisy_dims.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("got ", margins.size(), " margins for ",
                     noisy_dims.size(), " noisy dimensions"));
  }
  for (double r : margins) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      return absl::InvalidArgumentError("margins must be finite and >= 0");
    }
  }

  const auto ranges = CoordinateRanges(initials);
  const int corners = 1 << noisy_dims.size();
  auto extrude = [&](bool widen) {
    std::vector<Point> pts;
    for (const Point& v : a.vertices()) {
      for (int mask = 0; mask < corners; ++mask) {
        Point p = v;
        for (size_t j = 0; j < noisy_dims.size(); ++j) {
          const int k = noisy_dims[j];
          const double r = widen ? margins[j] : 0.0;
          p[k] = (mask >> j) & 1 ? ranges[k].second + r : ranges[k].first - r;
        }
        pts.push_back(p);
      }
    }
    return ConvexHull(pts, dim);
  };
  ASSIGN_OR_RETURN(Polytope b, extrude(false));
  ASSIGN_OR_RETURN(Polytope c, extrude(true));
  return DerivedHulls{std::move(a), std::move(b), std::move(c)};
}

absl::StatusOr<Polytope> BuildBoundingBoxD(std::span<const Point> initials) {
  if (initials.empty()) {
    return absl::InvalidArgumentError("no initial states");
  }
  const int dim = initials.front().dim();
  RETURN_IF_ERROR(ValidateCloud(initials, dim));
  const auto ranges = CoordinateRanges(initials);
  std::vector<Point> corners;
  for (int mask = 0; mask < (1 << dim); ++mask) {
    Point p(dim);
    for (int k = 0; k < dim; ++k) {
      p[k] = (mask >> k) & 1 ? ranges[k].second : ranges[k].first;
    }
    corners.push_back(p);
  }
  return ConvexHull(corners, dim);
}

}  // namespace ppadrc
