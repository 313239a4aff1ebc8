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


#ifndef PPADRC_CLI_EXPERIMENT_H_
#define PPADRC_CLI_EXPERIMENT_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ppadrc/engine/config.h"
#include "ppadrc/geometry/point.h"

namespace ppadrc::cli {

// Hull-membership sweep: every margin in `margins` is applied to all noisy
// dimensions, producing one report row per margin.
struct HullSpec {
  std::vector<int> noisy_dims;
  std::vector<double> margins;
};

struct AnalysisSpec {
  std::vector<double> chis;
  bool variance = false;
  HullSpec hull;
  double coverage_slack = 0.04;
  double variance_slack = 0.05;
  double membership_slack = 0.02;

  bool empty() const {
    return chis.empty() && !variance && hull.margins.empty();
  }
};

struct PrivacySpec {
  bool enabled = false;
  std::vector<double> alphas = {1.5, 2.0, 4.0, 8.0};
  // Either explicit per-agent shifts or the neighboring initial states; the
  // shifts are then paired_initials - initials.
  std::vector<Point> shifts;
  std::vector<Point> paired_initials;
  int dp_rows = 10;
  double dp_ell = 1.0;
  double dp_delta = 0.05;
};

struct ExperimentConfig {
  SimConfig sim;
  int runs = 1;
  AnalysisSpec analysis;
  PrivacySpec privacy;
  // Plot kinds: "initial", "finals+hulls", "mahalanobis".
  std::vector<std::string> plots;
};

// Parses and validates a JSON experiment document. Unknown keys are errors.
// Failures are InvalidArgument with the offending field path, or DomainError
// for the gamma_l > 1 - upsilon constraint.
absl::StatusOr<ExperimentConfig> ParseExperimentConfig(const std::string& text);

// Canonical JSON rendering; ParseExperimentConfig(EmitExperimentConfig(c))
// reproduces c.
std::string EmitExperimentConfig(const ExperimentConfig& cfg);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, const std::string& bytes);

}  // namespace ppadrc::cli

#endif  // PPADRC_CLI_EXPERIMENT_H_
