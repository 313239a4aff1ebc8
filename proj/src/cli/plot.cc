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


#include "ppadrc/cli/plot.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "Eigen/Dense"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "ppadrc/analysis/accuracy.h"
#include "ppadrc/base/status_macros.h"
#include "ppadrc/geometry/polytope.h"

namespace ppadrc::cli {
namespace {

constexpr char kNormal[] = "#1f4fbf";
constexpr char kFaulty[] = "#c0392b";
constexpr char kHullA[] = "#2e8b57";
constexpr char kHullC[] = "#e6b800";
constexpr char kMean[] = "#00a650";

Point Project(const Point& p, std::pair<int, int> axes) {
  return Point{p[axes.first], p[axes.second]};
}

std::vector<Point> ProjectAll(std::span<const Point> pts,
                              std::pair<int, int> axes) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.push_back(Project(p, axes));
  return out;
}

// Counterclockwise ring of the planar hull of `pts`; a segment or a single
// point when the projection is degenerate.
absl::StatusOr<std::vector<Point>> Ring(std::span<const Point> pts) {
  ASSIGN_OR_RETURN(Polytope hull, ConvexHull(pts, 2));
  return hull.vertices();
}

std::string AxisTag(std::pair<int, int> axes) {
  const char names[] = {'x', 'y', 'z'};
  return absl::StrCat(std::string(1, names[axes.first]),
                      std::string(1, names[axes.second]));
}

std::string FileName(const std::string& stem, int dim,
                     std::pair<int, int> axes) {
  return dim == 2 ? absl::StrCat(stem, ".svg")
                  : absl::StrCat(stem, "_", AxisTag(axes), ".svg");
}

std::vector<Point> BoxCorners(
    const std::vector<std::pair<double, double>>& box,
    std::pair<int, int> axes) {
  const auto [x0, x1] = box[axes.first];
  const auto [y0, y1] = box[axes.second];
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

}  // namespace

SvgCanvas::SvgCanvas(std::span<const Point> extent, std::string title,
                     int size)
    : title_(std::move(title)), size_(size) {
  double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  if (!extent.empty()) {
    xlo = xhi = extent[0][0];
    ylo = yhi = extent[0][1];
    for (const Point& p : extent) {
      xlo = std::min(xlo, p[0]);
      xhi = std::max(xhi, p[0]);
      ylo = std::min(ylo, p[1]);
      yhi = std::max(yhi, p[1]);
    }
  }
  const double span = std::max({xhi - xlo, yhi - ylo, 1e-9}) * 1.1;
  x0_ = 0.5 * (xlo + xhi) - 0.5 * span;
  y0_ = 0.5 * (ylo + yhi) - 0.5 * span;
  scale_ = size_ / span;
}

std::string SvgCanvas::X(double x) const {
  return absl::StrFormat("%.3f", (x - x0_) * scale_);
}

std::string SvgCanvas::Y(double y) const {
  return absl::StrFormat("%.3f", size_ - (y - y0_) * scale_);
}

void SvgCanvas::Polygon(std::span<const Point> ring, const std::string& fill,
                        const std::string& stroke, double fill_opacity) {
  if (ring.size() < 3) return Polyline(ring, stroke);
  std::string pts;
  for (const Point& p : ring) absl::StrAppend(&pts, X(p[0]), ",", Y(p[1]), " ");
  pts.pop_back();
  absl::StrAppend(&body_, "<polygon points=\"", pts, "\" fill=\"", fill,
                  "\" fill-opacity=\"",
                  absl::StrFormat("%.2f", fill_opacity), "\" stroke=\"",
                  stroke, "\" stroke-width=\"1.5\"/>\n");
}

void SvgCanvas::Polyline(std::span<const Point> path,
                         const std::string& stroke, bool dashed) {
  if (path.empty()) return;
  std::string pts;
  for (const Point& p : path) absl::StrAppend(&pts, X(p[0]), ",", Y(p[1]), " ");
  pts.pop_back();
  absl::StrAppend(&body_, "<polyline points=\"", pts,
                  "\" fill=\"none\" stroke=\"", stroke,
                  "\" stroke-width=\"1.5\"",
                  dashed ? " stroke-dasharray=\"5,3\"" : "", "/>\n");
}

void SvgCanvas::Dot(const Point& p, const std::string& fill, double radius) {
  absl::StrAppend(&body_, "<circle cx=\"", X(p[0]), "\" cy=\"", Y(p[1]),
                  "\" r=\"", absl::StrFormat("%.1f", radius), "\" fill=\"",
                  fill, "\"/>\n");
}

void SvgCanvas::Cross(const Point& p, const std::string& stroke,
                      double half) {
  const double cx = (p[0] - x0_) * scale_;
  const double cy = size_ - (p[1] - y0_) * scale_;
  absl::StrAppend(
      &body_,
      absl::StrFormat("<path d=\"M%.3f %.3fL%.3f %.3fM%.3f %.3fL%.3f %.3f\" "
                      "stroke=\"%s\" stroke-width=\"1.5\"/>\n",
                      cx - half, cy - half, cx + half, cy + half, cx - half,
                      cy + half, cx + half, cy - half, stroke));
}

void SvgCanvas::Label(const Point& p, const std::string& text) {
  absl::StrAppend(&body_, "<text x=\"", X(p[0]), "\" y=\"", Y(p[1]),
                  "\" font-family=\"sans-serif\" font-size=\"12\">", text,
                  "</text>\n");
}

std::string SvgCanvas::Finish() const {
  return absl::StrCat(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"", size_,
      "\" height=\"", size_, "\" viewBox=\"0 0 ", size_, " ", size_, "\">\n",
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      "<text x=\"8\" y=\"16\" font-family=\"sans-serif\" font-size=\"13\">",
      title_, "</text>\n", body_, "</svg>\n");
}

std::vector<std::pair<int, int>> AxisPairs(int dim) {
  if (dim == 2) return {{0, 1}};
  return {{0, 1}, {0, 2}, {1, 2}};
}

absl::StatusOr<std::vector<PlotFile>> PlotInitial(
    std::span<const Point> initial, std::span<const Point> finals,
    const std::vector<std::pair<double, double>>& byzantine_box) {
  if (initial.empty()) return absl::InvalidArgumentError("no initial states");
  const int dim = initial[0].dim();
  if (dim != 2 && dim != 3) {
    return absl::InvalidArgumentError("plots need d = 2 or 3");
  }
  std::vector<PlotFile> out;
  for (const auto axes : AxisPairs(dim)) {
    std::vector<Point> a = ProjectAll(initial, axes);
    std::vector<Point> f = ProjectAll(finals, axes);
    std::vector<Point> extent = a;
    extent.insert(extent.end(), f.begin(), f.end());
    std::vector<Point> box;
    if (static_cast<int>(byzantine_box.size()) == dim) {
      box = BoxCorners(byzantine_box, axes);
      extent.insert(extent.end(), box.begin(), box.end());
    }
    SvgCanvas svg(extent, absl::StrCat("initial states (", AxisTag(axes),
                                       ")"));
    ASSIGN_OR_RETURN(std::vector<Point> ring, Ring(a));
    svg.Polygon(ring, kHullA, kHullA, 0.2);
    if (!box.empty()) svg.Polygon(box, kFaulty, kFaulty, 0.1);
    for (const Point& p : a) svg.Dot(p, kNormal);
    for (const Point& p : f) svg.Cross(p, kFaulty);
    out.push_back({FileName("initial", dim, axes), svg.Finish()});
  }
  return out;
}

absl::StatusOr<std::vector<PlotFile>> PlotFinalsHulls(
    std::span<const Point> initial, std::span<const Point> finals,
    std::span<const int> noisy_dims, double margin) {
  if (initial.empty() || finals.empty()) {
    return absl::InvalidArgumentError(
        "finals+hulls needs initial states and a non-empty ensemble");
  }
  const int dim = initial[0].dim();
  if (dim != 2 && dim != 3) {
    return absl::InvalidArgumentError("plots need d = 2 or 3");
  }
  std::vector<Point> c_vertices;
  if (!noisy_dims.empty()) {
    const std::vector<double> margins(noisy_dims.size(), margin);
    ASSIGN_OR_RETURN(DerivedHulls hulls,
                     BuildHullsBC(initial, noisy_dims, margins));
    c_vertices = hulls.c.vertices();
  }
  const Point mean = Centroid(finals);
  std::vector<PlotFile> out;
  for (const auto axes : AxisPairs(dim)) {
    std::vector<Point> a = ProjectAll(initial, axes);
    std::vector<Point> f = ProjectAll(finals, axes);
    std::vector<Point> c = ProjectAll(c_vertices, axes);
    std::vector<Point> extent = a;
    extent.insert(extent.end(), f.begin(), f.end());
    extent.insert(extent.end(), c.begin(), c.end());
    SvgCanvas svg(extent, absl::StrCat("final values (", AxisTag(axes), ")"));
    if (!c.empty()) {
      ASSIGN_OR_RETURN(std::vector<Point> ring_c, Ring(c));
      svg.Polygon(ring_c, kHullC, kHullC, 0.25);
    }
    ASSIGN_OR_RETURN(std::vector<Point> ring_a, Ring(a));
    svg.Polygon(ring_a, kHullA, kHullA, 0.2);
    for (const Point& p : f) svg.Dot(p, kNormal, 1.5);
    svg.Dot(Project(mean, axes), kMean, 5.0);
    out.push_back({FileName("finals_hulls", dim, axes), svg.Finish()});
  }
  return out;
}

absl::StatusOr<std::vector<PlotFile>> PlotMahalanobis(
    std::span<const Point> finals, std::span<const double> chis) {
  if (finals.size() < 2) {
    return absl::InvalidArgumentError("mahalanobis plot needs >= 2 finals");
  }
  const int dim = finals[0].dim();
  if (dim != 2 && dim != 3) {
    return absl::InvalidArgumentError("plots need d = 2 or 3");
  }
  ASSIGN_OR_RETURN(EnsembleMoments m, EnsembleStats(finals));
  std::vector<PlotFile> out;
  for (const auto axes : AxisPairs(dim)) {
    // The shadow of {D_M^2 <= chi} on an axis plane is the ellipse of the
    // marginal covariance block at the same level.
    Eigen::Matrix2d block;
    block << m.cov(axes.first, axes.first), m.cov(axes.first, axes.second),
        m.cov(axes.second, axes.first), m.cov(axes.second, axes.second);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(block);
    const Eigen::Vector2d root =
        eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Point center = Project(m.mean, axes);
    std::vector<std::vector<Point>> curves;
    for (double chi : chis) {
      std::vector<Point> curve;
      for (int s = 0; s <= 128; ++s) {
        const double th = 2 * std::numbers::pi * s / 128;
        const Eigen::Vector2d u(root[0] * std::cos(th),
                                root[1] * std::sin(th));
        const Eigen::Vector2d v = std::sqrt(chi) * eig.eigenvectors() * u;
        curve.push_back(center + Point{v[0], v[1]});
      }
      curves.push_back(std::move(curve));
    }
    std::vector<Point> f = ProjectAll(finals, axes);
    std::vector<Point> extent = f;
    for (const auto& c : curves) extent.insert(extent.end(), c.begin(), c.end());
    SvgCanvas svg(extent,
                  absl::StrCat("Mahalanobis level sets (", AxisTag(axes), ")"));
    for (const Point& p : f) svg.Dot(p, kNormal, 1.5);
    for (size_t j = 0; j < curves.size(); ++j) {
      svg.Polyline(curves[j], kFaulty);
      svg.Label(curves[j][0], absl::StrFormat("chi=%g", chis[j]));
    }
    svg.Dot(center, kMean, 4.0);
    out.push_back({FileName("mahalanobis", dim, axes), svg.Finish()});
  }
  return out;
}

}  // namespace ppadrc::cli
