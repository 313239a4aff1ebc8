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

#ifndef PPADRC_GEOMETRY_POLYTOPE_H_
#define PPADRC_GEOMETRY_POLYTOPE_H_

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "ppadrc/geometry/point.h"

namespace ppadrc {

// Closed halfspace {x : normal . x <= offset} with a unit normal.
struct Halfspace {
  Point normal;
  double offset = 0.0;
};

// A simplex with one to three vertices: a point, a segment or a triangle.
struct Cell {
  std::array<Point, 3> v;
  int size = 0;
};

// Convex hull of a finite point set in R^2 or R^3.
//
// Full-dimensional hulls carry their facet halfspaces and a cover of the
// boundary by cells (edges in 2D, triangles in 3D). Lower-dimensional hulls
// (a point, a segment, or a planar polygon in 3D) record their affine carrier
// and are covered by cells spanning the set itself; their topological
// boundary in R^d is the whole set.
class Polytope {
 public:
  int dim() const { return dim_; }
  int affine_dim() const { return affine_dim_; }
  bool IsFullDimensional() const { return affine_dim_ == dim_; }

  // Extreme points. For a full-dimensional 2D hull they are in
  // counterclockwise order; for a segment they are its two endpoints.
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  // 3D full-dimensional boundary triangles as indices into vertices(),
  // oriented counterclockwise when seen from outside.
  const std::vector<std::array<int, 3>>& triangles() const {
    return triangles_;
  }
  const std::vector<Cell>& cells() const { return cells_; }

  const Point& carrier_origin() const { return carrier_origin_; }
  // Orthonormal basis of the affine carrier (affine_dim() vectors).
  const std::vector<Point>& carrier_basis() const { return carrier_basis_; }

 private:
  friend absl::StatusOr<Polytope> ConvexHull(std::span<const Point>, int);

  int dim_ = 0;
  int affine_dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Cell> cells_;
  Point carrier_origin_;
  std::vector<Point> carrier_basis_;
};

absl::StatusOr<Polytope> ConvexHull(std::span<const Point> points, int dim);

// True iff `p` satisfies every facet inequality within `tol`; for a
// lower-dimensional hull, iff p is within `tol` of the set.
absl::StatusOr<bool> Contains(const Polytope& poly, const Point& p,
                              double tol = kDefaultTol);

// Euclidean distance from `p` to the polytope (zero inside).
double DistanceToPolytope(const Polytope& poly, const Point& p);

// Largest distance between two vertices.
double Diameter(const Polytope& poly);

// Distance between the boundaries of P and Q:
//   max( max_{a in dP} dist(a, dQ), max_{b in dQ} dist(b, dP) ).
// Exact for convex inputs.
absl::StatusOr<double> Hausdorff(const Polytope& p, const Polytope& q);

// Directed part max_{a in dP} dist(a, dQ).
double DirectedHausdorff(const Polytope& p, const Polytope& q);

// Hulls derived from the normal agents' initial states when only the
// dimensions in `noisy_dims` receive noise. B extrudes the projection of
// hull(initials) over the initial range of each noisy dimension; C widens
// each of those ranges by the matching margin on both sides.
struct DerivedHulls {
  Polytope a;
  Polytope b;
  Polytope c;
};
absl::StatusOr<DerivedHulls> BuildHullsBC(std::span<const Point> initials,
                                          std::span<const int> noisy_dims,
                                          std::span<const double> margins);

// Axis-aligned bounding box of the initial states.
absl::StatusOr<Polytope> BuildBoundingBoxD(std::span<const Point> initials);

// Per-dimension [min, max] of a point set.
std::vector<std::pair<double, double>> CoordinateRanges(
    std::span<const Point> points);

}  // namespace ppadrc

#endif  // PPADRC_GEOMETRY_POLYTOPE_H_
