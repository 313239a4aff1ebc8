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


#ifndef PPADRC_CLI_RECORDS_H_
#define PPADRC_CLI_RECORDS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "ppadrc/geometry/point.h"

namespace ppadrc::cli {

// Line-delimited JSON records. Reals are written with 17 significant digits
// and digests as 16 hex digits, so parsing an emitted record reproduces it
// bit for bit.

struct RunRecord {
  uint64_t seed = 0;
  uint64_t config_digest = 0;
  uint64_t schedule_digest = 0;
  int dim = 0;
  StateMatrix initial;
  StateMatrix final_states;
  int degenerate_fallbacks = 0;
  int resilience_violations = 0;

  bool operator==(const RunRecord&) const = default;
};

std::string EmitRunRecord(const RunRecord& rec);
absl::StatusOr<RunRecord> ParseRunRecord(const std::string& text);

// ensemble.ndrec: a header line, then one line per run in run order.
struct EnsembleRecord {
  uint64_t config_digest = 0;
  uint64_t master_seed = 0;
  int dim = 0;
  StateMatrix initial;
  std::vector<uint64_t> seeds;
  std::vector<Point> finals;
  std::vector<double> disagreement_sq;

  int runs() const { return static_cast<int>(finals.size()); }
  bool operator==(const EnsembleRecord&) const = default;
};

std::string EmitEnsemble(const EnsembleRecord& rec);
absl::StatusOr<EnsembleRecord> ParseEnsemble(const std::string& text);

// One line per (iteration, agent): {"t":..,"agent":..,"<field>":[..]}.
// `agents` maps state rows to agent ids.
std::string EmitTrace(const std::vector<StateMatrix>& rows,
                      std::span<const int> agents, const std::string& field);

struct TraceEntry {
  int t = 0;
  int agent = 0;
  Point x;
  bool operator==(const TraceEntry&) const = default;
};
absl::StatusOr<std::vector<TraceEntry>> ParseTrace(const std::string& text,
                                                   const std::string& field);

// %.17g rendering used by every emitted file.
std::string FormatReal(double v);

// Pretty-printed JSON with reals in FormatReal form (nlohmann's own dump
// prints the shortest round-trip form instead). Non-finite reals become null.
std::string DumpJson(const nlohmann::json& j);

}  // namespace ppadrc::cli

#endif  // PPADRC_CLI_RECORDS_H_
