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

#include "ppadrc/geometry/point.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace ppadrc {

Point::Point(std::initializer_list<double> coords)
    : dim_(static_cast<int>(coords.size())) {
  int k = 0;
  for (double v : coords) c_[k++] = v;
}

Point Point::FromSpan(std::span<const double> coords) {
  Point p(static_cast<int>(coords.size()));
  for (size_t k = 0; k < coords.size(); ++k) p.c_[k] = coords[k];
  return p;
}

bool Point::IsFinite() const {
  for (int k = 0; k < dim_; ++k) {
    if (!std::isfinite(c_[k])) return false;
  }
  return true;
}

std::string Point::DebugString() const {
  return absl::StrCat("(", absl::StrJoin(coords(), ", "), ")");
}

Point Cross(const Point& a, const Point& b) {
  return Point{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
               a[0] * b[1] - a[1] * b[0]};
}

absl::Status ValidateCloud(std::span<const Point> cloud, int dim) {
  for (size_t i = 0; i < cloud.size(); ++i) {
    if (cloud[i].dim() != dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("point ", i, " has dimension ", cloud[i].dim(),
                       ", expected ", dim));
    }
    if (!cloud[i].IsFinite()) {
      return absl::InvalidArgumentError(
          absl::StrCat("point ", i, " has a non-finite coordinate"));
    }
  }
  return absl::OkStatus();
}

Point Centroid(std::span<const Point> cloud) {
  Point c(cloud.front().dim());
  for (const Point& p : cloud) c += p;
  return c / static_cast<double>(cloud.size());
}

Point CoordinateMedian(std::span<const Point> cloud) {
  const int dim = cloud.front().dim();
  Point m(dim);
  std::vector<double> column(cloud.size());
  for (int k = 0; k < dim; ++k) {
    for (size_t i = 0; i < cloud.size(); ++i) column[i] = cloud[i][k];
    std::sort(column.begin(), column.end());
    const size_t h = column.size() / 2;
    m[k] = column.size() % 2 == 1 ? column[h]
                                  : 0.5 * (column[h - 1] + column[h]);
  }
  return m;
}

double MaxRowDistance(std::span<const Point> a, std::span<const Point> b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, Distance(a[i], b[i]));
  return d;
}

}  // namespace ppadrc
