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

#ifndef PPADRC_GEOMETRY_POINT_H_
#define PPADRC_GEOMETRY_POINT_H_

#include <array>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace ppadrc {

inline constexpr int kMaxDim = 3;
inline constexpr double kDefaultTol = 1e-9;

// A point in R^d for d <= 3. Unused trailing coordinates are kept at zero so
// that value comparison is well defined.
class Point {
 public:
  Point() = default;
  explicit Point(int dim) : dim_(dim) {}
  Point(std::initializer_list<double> coords);

  static Point FromSpan(std::span<const double> coords);
  static Point Zero(int dim) { return Point(dim); }
  static Point Unit(int dim, int axis) {
    Point p(dim);
    p[axis] = 1.0;
    return p;
  }

  int dim() const { return dim_; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  std::span<const double> coords() const {
    return {c_.data(), static_cast<size_t>(dim_)};
  }
  bool IsFinite() const;

  Point& operator+=(const Point& o) {
    for (int k = 0; k < dim_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Point& operator-=(const Point& o) {
    for (int k = 0; k < dim_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Point& operator*=(double s) {
    for (int k = 0; k < dim_; ++k) c_[k] *= s;
    return *this;
  }
  Point& operator/=(double s) {
    for (int k = 0; k < dim_; ++k) c_[k] /= s;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator-(Point a) { return a *= -1.0; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend Point operator/(Point a, double s) { return a /= s; }
  friend bool operator==(const Point& a, const Point& b) = default;

  std::string DebugString() const;

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

inline double Dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (int k = 0; k < a.dim(); ++k) s += a[k] * b[k];
  return s;
}
inline double SquaredNorm(const Point& a) { return Dot(a, a); }
inline double Norm(const Point& a) { return std::sqrt(SquaredNorm(a)); }
inline double Distance(const Point& a, const Point& b) { return Norm(a - b); }

// 3D cross product.
Point Cross(const Point& a, const Point& b);

// z-component of the 2D cross product (b - o) x (c - o).
inline double Orient2d(const Point& o, const Point& b, const Point& c) {
  return (b[0] - o[0]) * (c[1] - o[1]) - (b[1] - o[1]) * (c[0] - o[0]);
}

// Stack of per-agent states, one row per agent.
using StateMatrix = std::vector<Point>;

// Checks that every point has dimension `dim` and finite coordinates.
absl::Status ValidateCloud(std::span<const Point> cloud, int dim);

Point Centroid(std::span<const Point> cloud);
Point CoordinateMedian(std::span<const Point> cloud);

// Largest pairwise distance between rows of `a` and `b` (same length).
double MaxRowDistance(std::span<const Point> a, std::span<const Point> b);

}  // namespace ppadrc

#endif  // PPADRC_GEOMETRY_POINT_H_
