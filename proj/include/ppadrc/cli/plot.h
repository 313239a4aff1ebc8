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


#ifndef PPADRC_CLI_PLOT_H_
#define PPADRC_CLI_PLOT_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "ppadrc/geometry/point.h"

namespace ppadrc::cli {

// Minimal deterministic SVG writer. World coordinates map onto a square
// canvas with equal axis scales; every number is printed with fixed
// precision, so equal inputs give byte-identical documents.
class SvgCanvas {
 public:
  // `extent` lists the points that must be visible.
  SvgCanvas(std::span<const Point> extent, std::string title, int size = 480);

  void Polygon(std::span<const Point> ring, const std::string& fill,
               const std::string& stroke, double fill_opacity);
  void Polyline(std::span<const Point> path, const std::string& stroke,
                bool dashed = false);
  void Dot(const Point& p, const std::string& fill, double radius = 3.0);
  void Cross(const Point& p, const std::string& stroke, double half = 4.0);
  void Label(const Point& p, const std::string& text);
  std::string Finish() const;

 private:
  std::string X(double x) const;
  std::string Y(double y) const;

  std::string body_;
  std::string title_;
  int size_;
  double x0_ = 0, y0_ = 0, scale_ = 1;
};

struct PlotFile {
  std::string name;
  std::string svg;
};

// Axis pairs drawn for a dimension: {(0,1)} in 2D, three pairs in 3D.
std::vector<std::pair<int, int>> AxisPairs(int dim);

// Initial normal states with their hull, optional final states, and the
// Byzantine message box when non-empty.
absl::StatusOr<std::vector<PlotFile>> PlotInitial(
    std::span<const Point> initial, std::span<const Point> finals,
    const std::vector<std::pair<double, double>>& byzantine_box);

// Ensemble final values over hull(initial), the sample mean, and, when
// `noisy_dims` is non-empty, the widened hull for `margin`.
absl::StatusOr<std::vector<PlotFile>> PlotFinalsHulls(
    std::span<const Point> initial, std::span<const Point> finals,
    std::span<const int> noisy_dims, double margin);

// Ensemble final values with the Mahalanobis level sets D_M^2 = chi, drawn
// as projections of the sample-covariance ellipsoids.
absl::StatusOr<std::vector<PlotFile>> PlotMahalanobis(
    std::span<const Point> finals, std::span<const double> chis);

}  // namespace ppadrc::cli

#endif  // PPADRC_CLI_PLOT_H_
