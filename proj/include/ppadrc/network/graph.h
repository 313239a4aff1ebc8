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

#ifndef PPADRC_NETWORK_GRAPH_H_
#define PPADRC_NETWORK_GRAPH_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace ppadrc {

// Directed graph on agents 0..n-1 without self-loops. Edge (j, i) means
// agent i receives agent j's message; in-neighbor lists are kept sorted.
class DiGraph {
 public:
  DiGraph() = default;
  explicit DiGraph(int n) : in_(n) {}

  static DiGraph Complete(int n);

  int n() const { return static_cast<int>(in_.size()); }
  absl::Status AddEdge(int from, int to);
  bool HasEdge(int from, int to) const;
  const std::vector<int>& in_neighbors(int v) const { return in_[v]; }
  int EdgeCount() const;
  // Edges as (from, to), ordered by `to` then `from`.
  std::vector<std::pair<int, int>> Edges() const;

  friend bool operator==(const DiGraph&, const DiGraph&) = default;

 private:
  std::vector<std::vector<int>> in_;
};

absl::StatusOr<DiGraph> UnionGraph(std::span<const DiGraph> graphs);

// True iff some vertex of the union graph is reachable from every other
// vertex.
absl::StatusOr<bool> IsJointlyReachable(std::span<const DiGraph> graphs);

// Same, on the subgraph induced by the vertices with `keep[v]` set.
absl::StatusOr<bool> IsJointlyReachableAmong(std::span<const DiGraph> graphs,
                                             const std::vector<bool>& keep);

// For every normal agent i: (faulty in-neighbors of i) < |N_in(i)| / (dim+1).
bool FaultConditionOk(const DiGraph& g, std::span<const int> faulty, int dim);

// Graphs for iterations 0..T-1 and the window start indices that partition
// them (windows[0] == 0, strictly increasing, all < T).
struct GraphSchedule {
  int n = 0;
  std::vector<DiGraph> graphs;
  std::vector<int> windows;

  int horizon() const { return static_cast<int>(graphs.size()); }
};

absl::Status ValidateSchedule(const GraphSchedule& schedule);

// True iff every window, restricted to normal agents, is jointly reachable.
absl::StatusOr<bool> CheckRepeatedReachability(const GraphSchedule& schedule,
                                               std::span<const int> faulty);

enum class TopologyKind {
  // Every normal agent hears every other agent.
  kComplete,
  // Every normal agent hears all faulty agents plus k - |faulty| normal
  // agents drawn uniformly without replacement.
  kRandomKIn,
  // Every normal agent hears all other normal agents plus one faulty agent
  // drawn uniformly.
  kOneFaulty,
};

struct TopologyPolicy {
  TopologyKind kind = TopologyKind::kComplete;
  int k = 0;
};

absl::StatusOr<TopologyKind> ParseTopologyKind(const std::string& name);
std::string TopologyKindName(TopologyKind kind);

struct ScheduleOptions {
  int window_len = 1;
  int max_retries = 1000;
};

// Fails with InfeasiblePolicy when `policy` cannot give every normal agent
// fewer than 1/(dim + 1) faulty in-neighbors.
absl::Status CheckPolicyFeasible(const TopologyPolicy& policy,
                                 int normal_count, int faulty_count, int dim);

// Draws a schedule in which every graph satisfies FaultConditionOk and every
// window is jointly reachable among normal agents. Faulty agents receive no
// edges. Fails with InfeasiblePolicy when the policy cannot meet the fault
// condition or a window exhausts its retry budget.
absl::StatusOr<GraphSchedule> GenerateSchedule(const TopologyPolicy& policy,
                                               int n,
                                               std::span<const int> faulty,
                                               int dim, int horizon,
                                               uint64_t seed,
                                               const ScheduleOptions& options =
                                                   {});

// Line format:
//   n <n>
//   windows <w0> <w1> ...
//   <t> <from>><to> <from>><to> ...
// with one graph line per iteration, in order.
std::string SerializeSchedule(const GraphSchedule& schedule);
absl::StatusOr<GraphSchedule> ParseSchedule(const std::string& text);

uint64_t ScheduleDigest(const GraphSchedule& schedule);

}  // namespace ppadrc

#endif  // PPADRC_NETWORK_GRAPH_H_
