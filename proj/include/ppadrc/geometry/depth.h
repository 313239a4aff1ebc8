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

#ifndef PPADRC_GEOMETRY_DEPTH_H_
#define PPADRC_GEOMETRY_DEPTH_H_

#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "ppadrc/geometry/point.h"

namespace ppadrc {

struct DepthResult {
  int depth = 0;
  // The closed halfspace {q : witness_normal . q >= witness_normal . p}
  // contains exactly `depth` cloud points (within tolerance).
  Point witness_normal;
};

// Tukey (halfspace) depth of `p` in `cloud`: the minimum number of cloud
// points in a closed halfspace containing p. Points within `tol` of the
// halfspace boundary count as inside.
//
// Candidate normals come from the arrangement of directions q - p: in 2D the
// midpoints of the arcs between critical angles, in 3D small perturbations
// of the normals of the planes through p and each cloud pair. Every
// candidate is counted directly, so the returned witness always attains the
// returned depth.
absl::StatusOr<DepthResult> TukeyDepth(const Point& p,
                                       std::span<const Point> cloud,
                                       double tol = kDefaultTol);

// Depth target a centerpoint must certify: ceil(n/3) in 2D and ceil(n/6)
// in 3D.
int CenterpointDepthTarget(int n, int dim);

struct CenterpointOptions {
  // Sole source of randomness for the search: for a fixed seed, randomized
  // candidates depend on the cloud only through its coordinates, never
  // through their bit patterns.
  uint64_t seed = 0;
  // Depth evaluations allowed for the local random search.
  int search_budget = 2000;
  int radon_candidates = 2;
  double tol = kDefaultTol;
};

struct CenterpointResult {
  Point point;
  int depth = 0;
  int target = 0;
  int evaluations = 0;
};

// Finds a point whose exactly evaluated Tukey depth reaches
// CenterpointDepthTarget. Candidates, in stages: coordinate-wise median,
// centroid and iterated Radon points; then the cloud points and (2D,
// n <= 15) all intersections of lines through point pairs; then a local
// random search around the deepest candidate. Candidates are tried in that
// order and the first one that reaches the target is returned. Fails with
// SearchExhausted rather than return a shallow point.
absl::StatusOr<CenterpointResult> Centerpoint(
    std::span<const Point> cloud, int dim,
    const CenterpointOptions& options = {});

// Radon point of exactly dim + 2 points.
Point RadonPoint(std::span<const Point> pts);

}  // namespace ppadrc

#endif  // PPADRC_GEOMETRY_DEPTH_H_
