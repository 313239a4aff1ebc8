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

#include "ppadrc/engine/protocol.h"

#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "ppadrc/base/status_macros.h"
#include "ppadrc/geometry/depth.h"
#include "ppadrc/geometry/polytope.h"

namespace ppadrc {
namespace {

bool HasAffinelySpanningCount(std::span<const Point> cloud, int need) {
  std::vector<const Point*> distinct;
  for (const Point& p : cloud) {
    bool fresh = true;
    for (const Point* q : distinct) {
      if (*q == p) {
        fresh = false;
        break;
      }
    }
    if (fresh) {
      distinct.push_back(&p);
      if (static_cast<int>(distinct.size()) >= need) return true;
    }
  }
  return false;
}

absl::StatusOr<RunResult> RunImpl(const SimConfig& cfg,
                                  const GraphSchedule& schedule,
                                  std::span<const Point> shifts,
                                  std::vector<std::vector<Point>>* trace) {
  RETURN_IF_ERROR(ValidateConfig(cfg));
  if (schedule.n != cfg.n || schedule.horizon() != cfg.horizon) {
    return absl::InvalidArgumentError(absl::StrCat(
        "schedule covers ", schedule.n, " agents over ", schedule.horizon(),
        " iterations; config needs ", cfg.n, " over ", cfg.horizon));
  }
  ASSIGN_OR_RETURN(StateMatrix x, MaterializeInitialStates(cfg));
  const int nn = static_cast<int>(x.size());

  RunResult result;
  result.seed = cfg.seed;
  result.schedule_digest = ScheduleDigest(schedule);
  result.gamma_trace.reserve(cfg.horizon);
  if (cfg.record.trajectory) {
    result.trajectory.reserve(cfg.horizon + 1);
    result.trajectory.push_back(x);
  }

  // Coupling factor prod_{s<t} (1 - gamma_i(s)) applied to the shifts.
  std::vector<double> factor(shifts.empty() ? 0 : nn, 1.0);
  std::vector<Point> noise_shift(shifts.empty() ? 0 : nn);
  for (int t = 0; t < cfg.horizon; ++t) {
    for (size_t r = 0; r < factor.size(); ++r) {
      noise_shift[r] = factor[r] * shifts[r];
    }
    if (trace != nullptr) {
      std::vector<Point> delta_eta(nn);
      for (int r = 0; r < nn; ++r) delta_eta[r] = -noise_shift[r];
      trace->push_back(std::move(delta_eta));
    }
    ASSIGN_OR_RETURN(StepOutput step,
                     Step(x, schedule.graphs[t], t, cfg, noise_shift));
    for (size_t r = 0; r < factor.size(); ++r) {
      factor[r] *= 1.0 - step.gamma[r];
    }
    result.degenerate_fallbacks += step.degenerate_fallbacks;
    result.resilience_violations += step.resilience_violations;
    result.gamma_trace.push_back(std::move(step.gamma));
    if (cfg.record.transmitted) {
      result.transmitted.push_back(std::move(step.transmitted));
    }
    x = std::move(step.next);
    if (cfg.record.trajectory) result.trajectory.push_back(x);
  }
  result.final_states = std::move(x);
  return result;
}

}  // namespace

Point SampleNoise(int t, const NoiseSchedule& schedule, int dim,
                  Stream& stream) {
  Point eta(dim);
  const double sd = schedule.StdDev(t);
  for (int k = 0; k < dim; ++k) {
    if (schedule.IsNoisy(k)) eta[k] = sd * stream.Normal();
  }
  return eta;
}

std::vector<Point> ByzantineMessages(const ByzantineStrategy& strategy,
                                     int sender, int t,
                                     std::span<const int> recipients, int dim,
                                     Stream& stream) {
  auto draw = [&](int recipient) {
    switch (strategy.kind) {
      case ByzantineKind::kBoxRandom: {
        Point p(dim);
        for (int k = 0; k < dim; ++k) {
          p[k] = stream.Uniform(strategy.box[k].first, strategy.box[k].second);
        }
        return p;
      }
      case ByzantineKind::kFixedPoint:
        return strategy.fixed_point;
      case ByzantineKind::kCustom:
        return strategy.custom(sender, recipient, t, stream);
    }
    return Point(dim);
  };
  std::vector<Point> out;
  out.reserve(recipients.size());
  if (recipients.empty()) return out;
  if (!strategy.per_recipient) {
    out.assign(recipients.size(), draw(recipients[0]));
    return out;
  }
  for (int r : recipients) out.push_back(draw(r));
  return out;
}

absl::StatusOr<StepOutput> Step(const StateMatrix& states, const DiGraph& g,
                                int t, const SimConfig& cfg,
                                std::span<const Point> noise_shift) {
  const std::vector<int> normals = cfg.NormalAgents();
  const int nn = static_cast<int>(normals.size());
  if (static_cast<int>(states.size()) != nn || g.n() != cfg.n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "step got ", states.size(), " states and a ", g.n(),
        "-agent graph; config has ", nn, " normal of ", cfg.n));
  }
  if (!noise_shift.empty() && static_cast<int>(noise_shift.size()) != nn) {
    return absl::InvalidArgumentError("noise shift needs one row per agent");
  }
  std::vector<int> row_of(cfg.n, -1);
  for (int r = 0; r < nn; ++r) row_of[normals[r]] = r;

  StepOutput out;
  out.next.resize(nn);
  out.transmitted.resize(nn);
  out.gamma.resize(nn);
  for (int r = 0; r < nn; ++r) {
    Stream s(DeriveSeed(cfg.seed, "noise", normals[r], t));
    Point eta = SampleNoise(t, cfg.noise, cfg.dim, s);
    if (!noise_shift.empty()) eta -= noise_shift[r];
    out.transmitted[r] = states[r] + eta;
  }

  // byz[f * nn + r]: message from faulty agent f to normal row r.
  std::vector<Point> byz(cfg.faulty.empty() ? 0 : cfg.n * nn);
  std::vector<int> recipients;
  for (int f : cfg.faulty) {
    recipients.clear();
    for (int i : normals) {
      if (g.HasEdge(f, i)) recipients.push_back(i);
    }
    Stream s(DeriveSeed(cfg.seed, "byzantine", f, t));
    const std::vector<Point> msgs =
        ByzantineMessages(cfg.byzantine, f, t, recipients, cfg.dim, s);
    for (size_t k = 0; k < recipients.size(); ++k) {
      byz[f * nn + row_of[recipients[k]]] = msgs[k];
    }
  }

  std::vector<Point> cloud;
  std::vector<Point> normal_part;
  for (int r = 0; r < nn; ++r) {
    const int i = normals[r];
    cloud.clear();
    normal_part.clear();
    for (int j : g.in_neighbors(i)) {
      if (row_of[j] >= 0) {
        cloud.push_back(out.transmitted[row_of[j]]);
        normal_part.push_back(out.transmitted[row_of[j]]);
      } else {
        cloud.push_back(byz[j * nn + r]);
      }
    }
    Point center;
    if (cloud.empty()) {
      center = states[r];
      ++out.degenerate_fallbacks;
    } else if (!HasAffinelySpanningCount(cloud, cfg.dim + 1)) {
      center = CoordinateMedian(cloud);
      ++out.degenerate_fallbacks;
    } else {
      CenterpointOptions opts;
      opts.seed = DeriveSeed(cfg.seed, "centerpoint", i, t);
      opts.search_budget = cfg.search_budget;
      auto cp = Centerpoint(cloud, cfg.dim, opts);
      if (!cp.ok()) {
        return absl::Status(cp.status().code(),
                            absl::StrCat(cp.status().message(), " [agent ", i,
                                         ", iteration ", t, "]"));
      }
      center = cp->point;
    }
    if (cfg.check_resilience && !normal_part.empty()) {
      ASSIGN_OR_RETURN(Polytope hull, ConvexHull(normal_part, cfg.dim));
      ASSIGN_OR_RETURN(bool inside, Contains(hull, center, 1e-9));
      if (!inside) ++out.resilience_violations;
    }
    double gamma = cfg.gamma.gamma_l;
    if (cfg.gamma.rule == GammaRule::kUniform) {
      Stream s(DeriveSeed(cfg.seed, "gamma", i, t));
      gamma = s.Uniform(cfg.gamma.gamma_l, cfg.gamma.gamma_m);
    }
    out.gamma[r] = gamma;
    out.next[r] = gamma * center + (1.0 - gamma) * states[r];
  }
  return out;
}

absl::StatusOr<RunResult> RunOnSchedule(const SimConfig& cfg,
                                        const GraphSchedule& schedule) {
  return RunImpl(cfg, schedule, {}, nullptr);
}

absl::StatusOr<RunResult> Run(const SimConfig& cfg) {
  RETURN_IF_ERROR(ValidateConfig(cfg));
  ASSIGN_OR_RETURN(
      GraphSchedule schedule,
      GenerateSchedule(cfg.topology, cfg.n, cfg.faulty, cfg.dim, cfg.horizon,
                       cfg.seed, cfg.schedule_options));
  return RunImpl(cfg, schedule, {}, nullptr);
}

absl::StatusOr<CoupledRuns> RunCoupled(const SimConfig& cfg,
                                       std::span<const Point> shifts) {
  RETURN_IF_ERROR(ValidateConfig(cfg));
  if (!(cfg.noise.lambda > 0)) {
    return absl::InvalidArgumentError(
        "coupled runs need noise.lambda > 0");
  }
  if (static_cast<int>(shifts.size()) != cfg.NormalCount()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need one shift per normal agent (", cfg.NormalCount(), "), got ",
        shifts.size()));
  }
  for (size_t r = 0; r < shifts.size(); ++r) {
    if (shifts[r].dim() != cfg.dim || !shifts[r].IsFinite()) {
      return absl::InvalidArgumentError(
          absl::StrCat("shift ", r, " needs ", cfg.dim, " finite coordinates"));
    }
    for (int k = 0; k < cfg.dim; ++k) {
      if (!cfg.noise.IsNoisy(k) && shifts[r][k] != 0.0) {
        return absl::InvalidArgumentError(absl::StrCat(
            "shift ", r, " moves noise-free dimension ", k,
            "; the twin's noise cannot absorb it"));
      }
    }
  }
  ASSIGN_OR_RETURN(
      GraphSchedule schedule,
      GenerateSchedule(cfg.topology, cfg.n, cfg.faulty, cfg.dim, cfg.horizon,
                       cfg.seed, cfg.schedule_options));
  SimConfig base = cfg;
  base.record.transmitted = true;
  ASSIGN_OR_RETURN(StateMatrix x0, MaterializeInitialStates(base));
  SimConfig twin = base;
  twin.initial.states = x0;
  for (size_t r = 0; r < x0.size(); ++r) twin.initial.states[r] += shifts[r];

  CoupledRuns out;
  ASSIGN_OR_RETURN(out.original, RunImpl(base, schedule, {}, nullptr));
  ASSIGN_OR_RETURN(out.shifted,
                   RunImpl(twin, schedule, shifts, &out.shift_trace));
  return out;
}

}  // namespace ppadrc
