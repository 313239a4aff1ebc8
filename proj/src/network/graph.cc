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

#include "ppadrc/network/graph.h"

#include <algorithm>
#include <string>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "ppadrc/base/errors.h"
#include "ppadrc/base/random.h"
#include "ppadrc/base/status_macros.h"

namespace ppadrc {
namespace {

absl::StatusOr<std::vector<bool>> FaultyMask(int n,
                                             std::span<const int> faulty) {
  std::vector<bool> mask(n, false);
  for (int f : faulty) {
    if (f < 0 || f >= n) {
      return absl::InvalidArgumentError(
          absl::StrCat("faulty agent ", f, " outside [0, ", n, ")"));
    }
    mask[f] = true;
  }
  return mask;
}

// Reverse breadth-first search from `root` over in-edges restricted to
// `keep`; returns the number of kept vertices that can reach root.
int CountReaching(const DiGraph& g, const std::vector<bool>& keep, int root) {
  std::vector<bool> seen(g.n(), false);
  std::vector<int> frontier = {root};
  seen[root] = true;
  int count = 1;
  while (!frontier.empty()) {
    const int v = frontier.back();
    frontier.pop_back();
    for (int u : g.in_neighbors(v)) {
      if (keep[u] && !seen[u]) {
        seen[u] = true;
        ++count;
        frontier.push_back(u);
      }
    }
  }
  return count;
}

absl::Status CheckSameSize(std::span<const DiGraph> graphs) {
  if (graphs.empty()) {
    return absl::InvalidArgumentError("empty graph sequence");
  }
  for (const DiGraph& g : graphs) {
    if (g.n() != graphs[0].n()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "graphs disagree on agent count: ", graphs[0].n(), " vs ", g.n()));
    }
  }
  return absl::OkStatus();
}

}  // namespace

DiGraph DiGraph::Complete(int n) {
  DiGraph g(n);
  for (int to = 0; to < n; ++to) {
    for (int from = 0; from < n; ++from) {
      if (from != to) g.in_[to].push_back(from);
    }
  }
  return g;
}

absl::Status DiGraph::AddEdge(int from, int to) {
  if (from < 0 || from >= n() || to < 0 || to >= n()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "edge ", from, ">", to, " outside [0, ", n(), ")"));
  }
  if (from == to) {
    return absl::InvalidArgumentError(
        absl::StrCat("self-loop at agent ", from));
  }
  auto& in = in_[to];
  auto it = std::lower_bound(in.begin(), in.end(), from);
  if (it == in.end() || *it != from) in.insert(it, from);
  return absl::OkStatus();
}

bool DiGraph::HasEdge(int from, int to) const {
  return std::binary_search(in_[to].begin(), in_[to].end(), from);
}

int DiGraph::EdgeCount() const {
  int c = 0;
  for (const auto& in : in_) c += static_cast<int>(in.size());
  return c;
}

std::vector<std::pair<int, int>> DiGraph::Edges() const {
  std::vector<std::pair<int, int>> out;
  for (int to = 0; to < n(); ++to) {
    for (int from : in_[to]) out.emplace_back(from, to);
  }
  return out;
}

absl::StatusOr<DiGraph> UnionGraph(std::span<const DiGraph> graphs) {
  if (graphs.empty()) return DiGraph(0);
  RETURN_IF_ERROR(CheckSameSize(graphs));
  DiGraph u(graphs[0].n());
  for (const DiGraph& g : graphs) {
    for (const auto& [from, to] : g.Edges()) {
      RETURN_IF_ERROR(u.AddEdge(from, to));
    }
  }
  return u;
}

absl::StatusOr<bool> IsJointlyReachableAmong(std::span<const DiGraph> graphs,
                                             const std::vector<bool>& keep) {
  RETURN_IF_ERROR(CheckSameSize(graphs));
  if (static_cast<int>(keep.size()) != graphs[0].n()) {
    return absl::InvalidArgumentError("vertex mask size mismatch");
  }
  ASSIGN_OR_RETURN(DiGraph u, UnionGraph(graphs));
  const int kept = static_cast<int>(std::count(keep.begin(), keep.end(), true));
  if (kept <= 1) return true;
  for (int v = 0; v < u.n(); ++v) {
    if (keep[v] && CountReaching(u, keep, v) == kept) return true;
  }
  return false;
}

absl::StatusOr<bool> IsJointlyReachable(std::span<const DiGraph> graphs) {
  RETURN_IF_ERROR(CheckSameSize(graphs));
  return IsJointlyReachableAmong(graphs,
                                 std::vector<bool>(graphs[0].n(), true));
}

bool FaultConditionOk(const DiGraph& g, std::span<const int> faulty,
                      int dim) {
  std::vector<bool> mask(g.n(), false);
  for (int f : faulty) {
    if (f >= 0 && f < g.n()) mask[f] = true;
  }
  for (int i = 0; i < g.n(); ++i) {
    if (mask[i]) continue;
    const auto& in = g.in_neighbors(i);
    int bad = 0;
    for (int j : in) bad += mask[j] ? 1 : 0;
    // bad < |N| / (dim + 1), in integers.
    if (bad * (dim + 1) >= static_cast<int>(in.size()) && bad > 0) {
      return false;
    }
  }
  return true;
}

absl::Status ValidateSchedule(const GraphSchedule& s) {
  if (s.n <= 0) return absl::InvalidArgumentError("schedule has no agents");
  for (size_t t = 0; t < s.graphs.size(); ++t) {
    if (s.graphs[t].n() != s.n) {
      return absl::InvalidArgumentError(
          absl::StrCat("graph ", t, " has ", s.graphs[t].n(),
                       " agents, schedule has ", s.n));
    }
  }
  if (s.graphs.empty()) return absl::OkStatus();
  if (s.windows.empty() || s.windows[0] != 0) {
    return absl::InvalidArgumentError("windows must start at iteration 0");
  }
  for (size_t w = 0; w < s.windows.size(); ++w) {
    if (s.windows[w] >= s.horizon() ||
        (w > 0 && s.windows[w] <= s.windows[w - 1])) {
      return absl::InvalidArgumentError(
          absl::StrCat("window starts must be increasing and below ",
                       s.horizon()));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<bool> CheckRepeatedReachability(const GraphSchedule& schedule,
                                               std::span<const int> faulty) {
  RETURN_IF_ERROR(ValidateSchedule(schedule));
  ASSIGN_OR_RETURN(std::vector<bool> bad, FaultyMask(schedule.n, faulty));
  std::vector<bool> keep(schedule.n);
  for (int v = 0; v < schedule.n; ++v) keep[v] = !bad[v];
  for (size_t w = 0; w < schedule.windows.size(); ++w) {
    const int begin = schedule.windows[w];
    const int end = w + 1 < schedule.windows.size() ? schedule.windows[w + 1]
                                                    : schedule.horizon();
    ASSIGN_OR_RETURN(
        bool ok,
        IsJointlyReachableAmong(
            std::span<const DiGraph>(schedule.graphs).subspan(begin,
                                                              end - begin),
            keep));
    if (!ok) return false;
  }
  return true;
}

absl::StatusOr<TopologyKind> ParseTopologyKind(const std::string& name) {
  if (name == "complete") return TopologyKind::kComplete;
  if (name == "random_k_in") return TopologyKind::kRandomKIn;
  if (name == "one_faulty") return TopologyKind::kOneFaulty;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown topology policy '", name,
                   "' (expected complete, random_k_in or one_faulty)"));
}

std::string TopologyKindName(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kComplete:
      return "complete";
    case TopologyKind::kRandomKIn:
      return "random_k_in";
    case TopologyKind::kOneFaulty:
      return "one_faulty";
  }
  return "unknown";
}

absl::Status CheckPolicyFeasible(const TopologyPolicy& policy,
                                 int normal_count, int faulty_count,
                                 int dim) {
  const int nn = normal_count;
  const int nf = faulty_count;
  const int n = nn + nf;
  // In-degree and faulty in-degree of every normal agent under the policy.
  int degree = 0;
  int faulty_in = 0;
  switch (policy.kind) {
    case TopologyKind::kComplete:
      degree = n - 1;
      faulty_in = nf;
      break;
    case TopologyKind::kRandomKIn:
      if (policy.k < nf + 1 || policy.k - nf > nn - 1) {
        return InfeasiblePolicyError(absl::StrCat(
            "random_k_in needs |faulty| < k <= n - 1; got k = ", policy.k,
            " with ", nf, " faulty of ", n));
      }
      degree = policy.k;
      faulty_in = nf;
      break;
    case TopologyKind::kOneFaulty:
      degree = nn - 1 + (nf > 0 ? 1 : 0);
      faulty_in = nf > 0 ? 1 : 0;
      break;
  }
  if (faulty_in > 0 && faulty_in * (dim + 1) >= degree) {
    return InfeasiblePolicyError(absl::StrCat(
        TopologyKindName(policy.kind), " gives each normal agent ", faulty_in,
        " faulty of ", degree, " in-neighbors, but the fault condition needs "
        "fewer than ", degree, "/", dim + 1));
  }
  return absl::OkStatus();
}

absl::StatusOr<GraphSchedule> GenerateSchedule(const TopologyPolicy& policy,
                                               int n,
                                               std::span<const int> faulty,
                                               int dim, int horizon,
                                               uint64_t seed,
                                               const ScheduleOptions& options) {
  if (n <= 0 || horizon < 0) {
    return absl::InvalidArgumentError("need n > 0 and horizon >= 0");
  }
  if (options.window_len < 1 || options.max_retries < 1) {
    return absl::InvalidArgumentError(
        "window_len and max_retries must be at least 1");
  }
  ASSIGN_OR_RETURN(std::vector<bool> bad, FaultyMask(n, faulty));
  std::vector<int> normals;
  std::vector<int> faults;
  for (int v = 0; v < n; ++v) (bad[v] ? faults : normals).push_back(v);
  const int nf = static_cast<int>(faults.size());
  const int nn = static_cast<int>(normals.size());

  RETURN_IF_ERROR(CheckPolicyFeasible(policy, nn, nf, dim));

  GraphSchedule schedule;
  schedule.n = n;
  schedule.graphs.reserve(horizon);
  std::vector<bool> keep(n);
  for (int v = 0; v < n; ++v) keep[v] = !bad[v];
  std::vector<int> pool;
  for (int begin = 0, w = 0; begin < horizon;
       begin += options.window_len, ++w) {
    const int end = std::min(horizon, begin + options.window_len);
    bool accepted = false;
    for (int attempt = 0; attempt < options.max_retries && !accepted;
         ++attempt) {
      Stream stream(DeriveSeed(seed, "schedule", w, attempt));
      std::vector<DiGraph> window;
      for (int t = begin; t < end; ++t) {
        DiGraph g(n);
        for (int i : normals) {
          switch (policy.kind) {
            case TopologyKind::kComplete:
              for (int j = 0; j < n; ++j) {
                if (j != i) RETURN_IF_ERROR(g.AddEdge(j, i));
              }
              break;
            case TopologyKind::kRandomKIn: {
              for (int f : faults) RETURN_IF_ERROR(g.AddEdge(f, i));
              pool.clear();
              for (int j : normals) {
                if (j != i) pool.push_back(j);
              }
              for (int s = 0; s < policy.k - nf; ++s) {
                const size_t pick =
                    s + stream.UniformInt(pool.size() - s);
                std::swap(pool[s], pool[pick]);
                RETURN_IF_ERROR(g.AddEdge(pool[s], i));
              }
              break;
            }
            case TopologyKind::kOneFaulty:
              for (int j : normals) {
                if (j != i) RETURN_IF_ERROR(g.AddEdge(j, i));
              }
              if (nf > 0) {
                RETURN_IF_ERROR(
                    g.AddEdge(faults[stream.UniformInt(nf)], i));
              }
              break;
          }
        }
        window.push_back(std::move(g));
      }
      bool ok = true;
      for (const DiGraph& g : window) ok = ok && FaultConditionOk(g, faults, dim);
      if (ok) {
        ASSIGN_OR_RETURN(ok, IsJointlyReachableAmong(window, keep));
      }
      if (ok) {
        accepted = true;
        schedule.windows.push_back(begin);
        for (DiGraph& g : window) schedule.graphs.push_back(std::move(g));
      }
    }
    if (!accepted) {
      return InfeasiblePolicyError(absl::StrCat(
          "window starting at iteration ", begin, " failed the fault and "
          "reachability checks ", options.max_retries, " times"));
    }
  }
  return schedule;
}

std::string SerializeSchedule(const GraphSchedule& schedule) {
  std::string out = absl::StrCat("n ", schedule.n, "\nwindows");
  for (int w : schedule.windows) absl::StrAppend(&out, " ", w);
  out += "\n";
  for (int t = 0; t < schedule.horizon(); ++t) {
    absl::StrAppend(&out, t);
    for (const auto& [from, to] : schedule.graphs[t].Edges()) {
      absl::StrAppend(&out, " ", from, ">", to);
    }
    out += "\n";
  }
  return out;
}

absl::StatusOr<GraphSchedule> ParseSchedule(const std::string& text) {
  GraphSchedule s;
  bool have_n = false;
  bool have_windows = false;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    std::vector<absl::string_view> tok =
        absl::StrSplit(line, ' ', absl::SkipEmpty());
    if (tok.empty()) continue;
    auto bad = [&](absl::string_view why) {
      return absl::InvalidArgumentError(
          absl::StrCat("schedule line ", line_no, ": ", why));
    };
    if (tok[0] == "n") {
      if (tok.size() != 2 || !absl::SimpleAtoi(tok[1], &s.n) || s.n <= 0) {
        return bad("expected 'n <count>'");
      }
      have_n = true;
      continue;
    }
    if (tok[0] == "windows") {
      for (size_t k = 1; k < tok.size(); ++k) {
        int w;
        if (!absl::SimpleAtoi(tok[k], &w)) return bad("bad window index");
        s.windows.push_back(w);
      }
      have_windows = true;
      continue;
    }
    if (!have_n) return bad("graph line before 'n'");
    int t;
    if (!absl::SimpleAtoi(tok[0], &t) || t != s.horizon()) {
      return bad(absl::StrCat("expected iteration ", s.horizon()));
    }
    DiGraph g(s.n);
    for (size_t k = 1; k < tok.size(); ++k) {
      std::vector<absl::string_view> ends = absl::StrSplit(tok[k], '>');
      int from;
      int to;
      if (ends.size() != 2 || !absl::SimpleAtoi(ends[0], &from) ||
          !absl::SimpleAtoi(ends[1], &to)) {
        return bad(absl::StrCat("bad edge '", tok[k], "'"));
      }
      absl::Status st = g.AddEdge(from, to);
      if (!st.ok()) return bad(st.message());
    }
    s.graphs.push_back(std::move(g));
  }
  if (!have_n) return absl::InvalidArgumentError("schedule lacks 'n' line");
  if (!have_windows) {
    for (int t = 0; t < s.horizon(); ++t) s.windows.push_back(t);
  }
  RETURN_IF_ERROR(ValidateSchedule(s));
  return s;
}

uint64_t ScheduleDigest(const GraphSchedule& schedule) {
  uint64_t h = Mix64(static_cast<uint64_t>(schedule.n));
  for (int w : schedule.windows) h = Mix64(h ^ (0x100000000ULL + w));
  for (const DiGraph& g : schedule.graphs) {
    h = Mix64(h ^ 0xfeedULL);
    for (int to = 0; to < g.n(); ++to) {
      for (int from : g.in_neighbors(to)) {
        h = Mix64(h ^ (static_cast<uint64_t>(from) << 32 | to));
      }
    }
  }
  return h;
}

}  // namespace ppadrc
