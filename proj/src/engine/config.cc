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

#include "ppadrc/engine/config.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "ppadrc/base/status_macros.h"

namespace ppadrc {
namespace {

absl::Status FieldError(absl::string_view path, absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat(path, ": ", what));
}

absl::Status ValidateBox(absl::string_view path,
                         const std::vector<std::pair<double, double>>& box,
                         int dim) {
  if (static_cast<int>(box.size()) != dim) {
    return FieldError(path, absl::StrCat("needs ", dim, " intervals, got ",
                                         box.size()));
  }
  for (int k = 0; k < dim; ++k) {
    const auto [lo, hi] = box[k];
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      return FieldError(absl::StrCat(path, "[", k, "]"),
                        "interval must be finite with lo < hi");
    }
  }
  return absl::OkStatus();
}

}  // namespace

double NoiseSchedule::StdDev(int t) const {
  return lambda * std::pow(upsilon, t);
}

bool NoiseSchedule::IsNoisy(int k) const {
  return mask.empty() || std::find(mask.begin(), mask.end(), k) != mask.end();
}

absl::Status NoiseSchedule::Validate(int dim) const {
  if (!std::isfinite(lambda) || lambda < 0) {
    return FieldError("noise.lambda", "must be finite and >= 0");
  }
  if (!(upsilon > 0 && upsilon < 1)) {
    return FieldError("noise.upsilon", "must lie in (0, 1)");
  }
  std::set<int> seen;
  for (size_t j = 0; j < mask.size(); ++j) {
    if (mask[j] < 0 || mask[j] >= dim || !seen.insert(mask[j]).second) {
      return FieldError(absl::StrCat("noise.mask[", j, "]"),
                        absl::StrCat("dimension indices must be distinct "
                                     "and in [0, ",
                                     dim, ")"));
    }
  }
  return absl::OkStatus();
}

absl::Status GammaPolicy::Validate(double upsilon) const {
  if (!(gamma_l > 0 && gamma_l <= gamma_m && gamma_m < 1)) {
    return FieldError("gamma", "need 0 < gamma_l <= gamma_m < 1");
  }
  if (rule == GammaRule::kFixed && gamma_l != gamma_m) {
    return FieldError("gamma", "fixed rule needs gamma_l == gamma_m");
  }
  if (!(gamma_l > 1 - upsilon)) {
    return FieldError("gamma.gamma_l",
                      absl::StrCat("must exceed 1 - upsilon = ", 1 - upsilon));
  }
  return absl::OkStatus();
}

absl::Status ByzantineStrategy::Validate(int dim) const {
  switch (kind) {
    case ByzantineKind::kBoxRandom:
      return ValidateBox("byzantine.box", box, dim);
    case ByzantineKind::kFixedPoint:
      if (fixed_point.dim() != dim || !fixed_point.IsFinite()) {
        return FieldError("byzantine.point",
                          absl::StrCat("needs ", dim, " finite coordinates"));
      }
      return absl::OkStatus();
    case ByzantineKind::kCustom:
      if (!custom) {
        return FieldError("byzantine.custom",
                          absl::StrCat("no generator bound for label '",
                                       label, "'"));
      }
      return absl::OkStatus();
  }
  return absl::OkStatus();
}

std::vector<int> SimConfig::NormalAgents() const {
  std::vector<bool> bad(std::max(n, 0), false);
  for (int f : faulty) {
    if (f >= 0 && f < n) bad[f] = true;
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (!bad[v]) out.push_back(v);
  }
  return out;
}

absl::Status ValidateConfig(const SimConfig& cfg) {
  if (cfg.dim != 2 && cfg.dim != 3) return FieldError("dim", "must be 2 or 3");
  if (cfg.n <= 0) return FieldError("n", "must be positive");
  std::set<int> seen;
  for (size_t j = 0; j < cfg.faulty.size(); ++j) {
    if (cfg.faulty[j] < 0 || cfg.faulty[j] >= cfg.n ||
        !seen.insert(cfg.faulty[j]).second) {
      return FieldError(absl::StrCat("faulty[", j, "]"),
                        absl::StrCat("agent ids must be distinct and in [0, ",
                                     cfg.n, ")"));
    }
  }
  if (cfg.NormalCount() < cfg.dim + 1) {
    return FieldError("faulty", absl::StrCat("need at least ", cfg.dim + 1,
                                             " normal agents, have ",
                                             cfg.NormalCount()));
  }
  RETURN_IF_ERROR(cfg.noise.Validate(cfg.dim));
  RETURN_IF_ERROR(cfg.gamma.Validate(cfg.noise.upsilon));
  if (cfg.horizon < 0) return FieldError("horizon", "must be >= 0");
  if (cfg.topology.kind == TopologyKind::kRandomKIn &&
      (cfg.topology.k < 1 || cfg.topology.k > cfg.n - 1)) {
    return FieldError("topology.k", absl::StrCat("must lie in [1, ",
                                                 cfg.n - 1, "]"));
  }
  RETURN_IF_ERROR(CheckPolicyFeasible(cfg.topology, cfg.NormalCount(),
                                      static_cast<int>(cfg.faulty.size()),
                                      cfg.dim));
  if (cfg.schedule_options.window_len < 1) {
    return FieldError("topology.window_len", "must be >= 1");
  }
  if (cfg.schedule_options.max_retries < 1) {
    return FieldError("topology.max_retries", "must be >= 1");
  }
  if (!cfg.faulty.empty()) RETURN_IF_ERROR(cfg.byzantine.Validate(cfg.dim));
  if (cfg.search_budget < 0) {
    return FieldError("search_budget", "must be >= 0");
  }
  if (!cfg.initial.states.empty()) {
    if (static_cast<int>(cfg.initial.states.size()) != cfg.NormalCount()) {
      return FieldError("initial.states",
                        absl::StrCat("needs one row per normal agent (",
                                     cfg.NormalCount(), "), got ",
                                     cfg.initial.states.size()));
    }
    for (size_t r = 0; r < cfg.initial.states.size(); ++r) {
      const Point& p = cfg.initial.states[r];
      if (p.dim() != cfg.dim || !p.IsFinite()) {
        return FieldError(absl::StrCat("initial.states[", r, "]"),
                          absl::StrCat("needs ", cfg.dim,
                                       " finite coordinates"));
      }
    }
  } else {
    RETURN_IF_ERROR(ValidateBox("initial.box", cfg.initial.box, cfg.dim));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<Point>> MaterializeInitialStates(
    const SimConfig& cfg) {
  RETURN_IF_ERROR(ValidateConfig(cfg));
  if (!cfg.initial.states.empty()) return cfg.initial.states;
  std::vector<Point> out;
  for (int agent : cfg.NormalAgents()) {
    Stream s(DeriveSeed(cfg.initial.seed, "initial", agent, 0));
    Point p(cfg.dim);
    for (int k = 0; k < cfg.dim; ++k) {
      p[k] = s.Uniform(cfg.initial.box[k].first, cfg.initial.box[k].second);
    }
    out.push_back(p);
  }
  return out;
}

namespace {

void AppendReal(std::string& out, double v) {
  absl::StrAppendFormat(&out, " %.17g", v);
}

void AppendBox(std::string& out, absl::string_view key,
               const std::vector<std::pair<double, double>>& box) {
  absl::StrAppend(&out, " ", key);
  for (const auto& [lo, hi] : box) {
    AppendReal(out, lo);
    AppendReal(out, hi);
  }
}

}  // namespace

std::string CanonicalConfigText(const SimConfig& cfg) {
  std::string out = absl::StrCat("n ", cfg.n, " dim ", cfg.dim, " faulty");
  for (int f : cfg.faulty) absl::StrAppend(&out, " ", f);
  absl::StrAppend(&out, " noise");
  AppendReal(out, cfg.noise.lambda);
  AppendReal(out, cfg.noise.upsilon);
  absl::StrAppend(&out, " mask");
  for (int k : cfg.noise.mask) absl::StrAppend(&out, " ", k);
  absl::StrAppend(&out, " gamma ", static_cast<int>(cfg.gamma.rule));
  AppendReal(out, cfg.gamma.gamma_l);
  AppendReal(out, cfg.gamma.gamma_m);
  absl::StrAppend(&out, " horizon ", cfg.horizon, " topology ",
                  TopologyKindName(cfg.topology.kind), " ", cfg.topology.k, " ",
                  cfg.schedule_options.window_len, " ",
                  cfg.schedule_options.max_retries, " byzantine ",
                  static_cast<int>(cfg.byzantine.kind), " ",
                  cfg.byzantine.per_recipient ? 1 : 0, " ",
                  cfg.byzantine.label);
  AppendBox(out, "box", cfg.byzantine.box);
  absl::StrAppend(&out, " point");
  for (int k = 0; k < cfg.byzantine.fixed_point.dim(); ++k) {
    AppendReal(out, cfg.byzantine.fixed_point[k]);
  }
  absl::StrAppend(&out, " initial ", cfg.initial.seed);
  AppendBox(out, "box", cfg.initial.box);
  absl::StrAppend(&out, " states");
  for (const Point& p : cfg.initial.states) {
    for (int k = 0; k < p.dim(); ++k) AppendReal(out, p[k]);
  }
  absl::StrAppend(&out, " seed ", cfg.seed, " budget ", cfg.search_budget);
  return out;
}

uint64_t ConfigDigest(const SimConfig& cfg) {
  return Fnv1a64(CanonicalConfigText(cfg));
}

}  // namespace ppadrc
