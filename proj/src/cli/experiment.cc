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


#include "ppadrc/cli/experiment.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "ppadrc/base/status_macros.h"
#include "ppadrc/privacy/cgp.h"

namespace ppadrc::cli {
namespace {

using Json = nlohmann::json;

// Reads fields of one JSON object. The first problem sticks and later calls
// become no-ops, so parsing code can read straight through.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path, absl::Status* status)
      : j_(j), path_(std::move(path)), status_(status) {
    if (status_->ok() && !j_.is_object()) Fail(path_, "must be an object");
  }

  bool Has(const char* key) {
    seen_.insert(key);
    return status_->ok() && j_.is_object() && j_.contains(key);
  }

  void Real(const char* key, double* out) {
    if (!Has(key)) return;
    const Json& v = j_[key];
    if (!v.is_number()) return Fail(Path(key), "must be a number");
    *out = v.get<double>();
  }

  void Int(const char* key, int* out) {
    if (!Has(key)) return;
    const Json& v = j_[key];
    if (!v.is_number_integer()) return Fail(Path(key), "must be an integer");
    *out = v.get<int>();
  }

  void Uint64(const char* key, uint64_t* out) {
    if (!Has(key)) return;
    const Json& v = j_[key];
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v >= 0)) {
      return Fail(Path(key), "must be a non-negative integer");
    }
    *out = v.get<uint64_t>();
  }

  void Bool(const char* key, bool* out) {
    if (!Has(key)) return;
    const Json& v = j_[key];
    if (!v.is_boolean()) return Fail(Path(key), "must be true or false");
    *out = v.get<bool>();
  }

  void String(const char* key, std::string* out) {
    if (!Has(key)) return;
    const Json& v = j_[key];
    if (!v.is_string()) return Fail(Path(key), "must be a string");
    *out = v.get<std::string>();
  }

  void IntList(const char* key, std::vector<int>* out) {
    if (!Has(key)) return;
    const Json& v = j_[key];
    if (!v.is_array()) return Fail(Path(key), "must be an array");
    out->clear();
    for (size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer()) {
        return Fail(absl::StrCat(Path(key), "[", i, "]"),
                    "must be an integer");
      }
      out->push_back(v[i].get<int>());
    }
  }

  void RealList(const char* key, std::vector<double>* out) {
    if (!Has(key)) return;
    ReadReals(j_[key], Path(key), out);
  }

  void StringList(const char* key, std::vector<std::string>* out) {
    if (!Has(key)) return;
    const Json& v = j_[key];
    if (!v.is_array()) return Fail(Path(key), "must be an array");
    out->clear();
    for (size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) {
        return Fail(absl::StrCat(Path(key), "[", i, "]"), "must be a string");
      }
      out->push_back(v[i].get<std::string>());
    }
  }

  void Points(const char* key, std::vector<Point>* out) {
    if (!Has(key)) return;
    const Json& v = j_[key];
    if (!v.is_array()) return Fail(Path(key), "must be an array of points");
    out->clear();
    for (size_t i = 0; i < v.size(); ++i) {
      std::vector<double> xs;
      ReadReals(v[i], absl::StrCat(Path(key), "[", i, "]"), &xs);
      if (!status_->ok()) return;
      Point p(static_cast<int>(xs.size()));
      for (size_t k = 0; k < xs.size(); ++k) p[k] = xs[k];
      out->push_back(p);
    }
  }

  void Box(const char* key, std::vector<std::pair<double, double>>* out) {
    std::vector<Point> rows;
    Points(key, &rows);
    if (!status_->ok() || !j_.contains(key)) return;
    out->clear();
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].dim() != 2) {
        return Fail(absl::StrCat(Path(key), "[", i, "]"),
                    "must be a [low, high] pair");
      }
      out->push_back({rows[i][0], rows[i][1]});
    }
  }

  std::optional<ObjectReader> Object(const char* key) {
    if (!Has(key)) return std::nullopt;
    return ObjectReader(j_[key], Path(key), status_);
  }

  // Rejects keys that no getter asked about.
  void Finish() {
    if (!status_->ok() || !j_.is_object()) return;
    for (const auto& item : j_.items()) {
      if (!seen_.contains(item.key())) {
        return Fail(Path(item.key().c_str()), "unknown key");
      }
    }
  }

  void Fail(const std::string& path, absl::string_view what) {
    if (status_->ok()) {
      *status_ = absl::InvalidArgumentError(absl::StrCat(path, ": ", what));
    }
  }

  std::string Path(const std::string& key) const {
    return path_.empty() ? key : absl::StrCat(path_, ".", key);
  }

 private:
  void ReadReals(const Json& v, const std::string& path,
                 std::vector<double>* out) {
    if (!v.is_array()) return Fail(path, "must be an array of numbers");
    out->clear();
    for (size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        return Fail(absl::StrCat(path, "[", i, "]"), "must be a number");
      }
      out->push_back(v[i].get<double>());
    }
  }

  const Json& j_;
  std::string path_;
  absl::Status* status_;
  std::set<std::string> seen_;
};

Json PointsJson(const std::vector<Point>& pts) {
  Json out = Json::array();
  for (const Point& p : pts) {
    Json row = Json::array();
    for (int k = 0; k < p.dim(); ++k) row.push_back(p[k]);
    out.push_back(row);
  }
  return out;
}

Json BoxJson(const std::vector<std::pair<double, double>>& box) {
  Json out = Json::array();
  for (const auto& [lo, hi] : box) out.push_back(Json::array({lo, hi}));
  return out;
}

void ParseSim(ObjectReader& root, SimConfig& sim, absl::Status* status) {
  root.Int("n", &sim.n);
  root.IntList("faulty", &sim.faulty);
  root.Int("dim", &sim.dim);
  root.Int("horizon", &sim.horizon);
  root.Uint64("seed", &sim.seed);
  root.Int("search_budget", &sim.search_budget);
  root.Bool("check_resilience", &sim.check_resilience);

  if (auto noise = root.Object("noise")) {
    noise->Real("lambda", &sim.noise.lambda);
    noise->Real("upsilon", &sim.noise.upsilon);
    noise->IntList("mask", &sim.noise.mask);
    noise->Finish();
  }
  if (auto gamma = root.Object("gamma")) {
    std::string rule = "fixed";
    gamma->String("rule", &rule);
    if (rule == "fixed") {
      double value = sim.gamma.gamma_l;
      gamma->Real("value", &value);
      sim.gamma = GammaPolicy::Fixed(value);
    } else if (rule == "uniform") {
      sim.gamma.rule = GammaRule::kUniform;
      gamma->Real("low", &sim.gamma.gamma_l);
      gamma->Real("high", &sim.gamma.gamma_m);
    } else {
      gamma->Fail(gamma->Path("rule"), "must be \"fixed\" or \"uniform\"");
    }
    gamma->Finish();
  }
  if (auto topo = root.Object("topology")) {
    std::string policy = TopologyKindName(sim.topology.kind);
    topo->String("policy", &policy);
    if (status->ok()) {
      auto kind = ParseTopologyKind(policy);
      if (!kind.ok()) {
        topo->Fail(topo->Path("policy"), kind.status().message());
      } else {
        sim.topology.kind = *kind;
      }
    }
    topo->Int("k", &sim.topology.k);
    topo->Int("window_len", &sim.schedule_options.window_len);
    topo->Int("max_retries", &sim.schedule_options.max_retries);
    topo->Finish();
  }
  if (auto byz = root.Object("byzantine")) {
    std::string strategy = "box";
    byz->String("strategy", &strategy);
    if (strategy == "box") {
      sim.byzantine.kind = ByzantineKind::kBoxRandom;
      byz->Box("box", &sim.byzantine.box);
    } else if (strategy == "fixed") {
      sim.byzantine.kind = ByzantineKind::kFixedPoint;
      std::vector<double> xs;
      byz->RealList("point", &xs);
      sim.byzantine.fixed_point = Point(static_cast<int>(xs.size()));
      for (size_t k = 0; k < xs.size(); ++k) sim.byzantine.fixed_point[k] = xs[k];
    } else {
      byz->Fail(byz->Path("strategy"), "must be \"box\" or \"fixed\"");
    }
    byz->Bool("per_recipient", &sim.byzantine.per_recipient);
    byz->Finish();
  }
  if (auto init = root.Object("initial")) {
    init->Box("box", &sim.initial.box);
    init->Uint64("seed", &sim.initial.seed);
    init->Points("states", &sim.initial.states);
    init->Finish();
  }
  if (auto rec = root.Object("record")) {
    rec->Bool("trajectory", &sim.record.trajectory);
    rec->Bool("transmitted", &sim.record.transmitted);
    rec->Finish();
  }
}

}  // namespace

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(
    const std::string& text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError("config: not valid JSON");
  }
  absl::Status status;
  ExperimentConfig cfg;
  ObjectReader root(j, "", &status);
  ParseSim(root, cfg.sim, &status);
  root.Int("runs", &cfg.runs);
  if (auto an = root.Object("analysis")) {
    an->RealList("chis", &cfg.analysis.chis);
    an->Bool("variance", &cfg.analysis.variance);
    if (auto hull = an->Object("hull")) {
      hull->IntList("noisy_dims", &cfg.analysis.hull.noisy_dims);
      hull->RealList("margins", &cfg.analysis.hull.margins);
      hull->Finish();
    }
    an->Real("coverage_slack", &cfg.analysis.coverage_slack);
    an->Real("variance_slack", &cfg.analysis.variance_slack);
    an->Real("membership_slack", &cfg.analysis.membership_slack);
    an->Finish();
  }
  if (auto pr = root.Object("privacy")) {
    cfg.privacy.enabled = true;
    pr->RealList("alphas", &cfg.privacy.alphas);
    pr->Points("shifts", &cfg.privacy.shifts);
    pr->Points("paired_initials", &cfg.privacy.paired_initials);
    if (auto dp = pr->Object("dp")) {
      dp->Int("rows", &cfg.privacy.dp_rows);
      dp->Real("ell", &cfg.privacy.dp_ell);
      dp->Real("delta", &cfg.privacy.dp_delta);
      dp->Finish();
    }
    pr->Finish();
  }
  root.StringList("plots", &cfg.plots);
  root.Finish();
  RETURN_IF_ERROR(status);

  if (cfg.runs < 1) return absl::InvalidArgumentError("runs: must be >= 1");
  if (cfg.privacy.enabled) {
    // Surfaces the step-size constraint as a DomainError from the privacy
    // constant before the generic validation reports it.
    RETURN_IF_ERROR(CgpRho({cfg.sim.n, cfg.sim.noise.lambda,
                            cfg.sim.noise.upsilon, cfg.sim.gamma.gamma_l})
                        .status());
  }
  if (absl::Status s = ValidateConfig(cfg.sim); !s.ok()) {
    // Engine paths name struct fields; report the key the user wrote.
    constexpr absl::string_view kGammaL = "gamma.gamma_l";
    if (absl::StartsWith(s.message(), kGammaL)) {
      const char* key = cfg.sim.gamma.rule == GammaRule::kFixed
                            ? "gamma.value"
                            : "gamma.low";
      return absl::Status(s.code(),
                          absl::StrCat(key, s.message().substr(kGammaL.size()),
                                       " (step-size constraint of the "
                                       "protocol)"));
    }
    return s;
  }

  const AnalysisSpec& an = cfg.analysis;
  for (size_t i = 0; i < an.chis.size(); ++i) {
    if (!(an.chis[i] > 0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("analysis.chis[", i, "]: must be > 0"));
    }
  }
  for (size_t i = 0; i < an.hull.margins.size(); ++i) {
    if (!(an.hull.margins[i] >= 0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("analysis.hull.margins[", i, "]: must be >= 0"));
    }
  }
  if (!an.hull.margins.empty()) {
    if (an.hull.noisy_dims.empty()) {
      return absl::InvalidArgumentError(
          "analysis.hull.noisy_dims: required when margins are given");
    }
    std::vector<int> mask = cfg.sim.noise.mask;
    if (mask.empty()) {
      for (int k = 0; k < cfg.sim.dim; ++k) mask.push_back(k);
    }
    std::vector<int> dims = an.hull.noisy_dims;
    std::sort(mask.begin(), mask.end());
    std::sort(dims.begin(), dims.end());
    if (static_cast<int>(mask.size()) == cfg.sim.dim) {
      return absl::InvalidArgumentError(
          "noise.mask: hull membership needs at least one noise-free "
          "dimension");
    }
    if (mask != dims) {
      return absl::InvalidArgumentError(
          "analysis.hull.noisy_dims: must equal noise.mask (the hulls "
          "assume noise on exactly these dimensions)");
    }
  }
  const std::pair<const char*, double> slacks[] = {
      {"coverage_slack", an.coverage_slack},
      {"variance_slack", an.variance_slack},
      {"membership_slack", an.membership_slack}};
  for (const auto& [name, value] : slacks) {
    if (!(value >= 0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("analysis.", name, ": must be >= 0"));
    }
  }

  const PrivacySpec& pr = cfg.privacy;
  if (pr.enabled) {
    const int nn = cfg.sim.NormalCount();
    if (pr.shifts.empty() == pr.paired_initials.empty()) {
      return absl::InvalidArgumentError(
          "privacy: give exactly one of shifts or paired_initials");
    }
    const std::vector<Point>& rows =
        pr.shifts.empty() ? pr.paired_initials : pr.shifts;
    const char* key = pr.shifts.empty() ? "paired_initials" : "shifts";
    if (static_cast<int>(rows.size()) != nn) {
      return absl::InvalidArgumentError(absl::StrCat(
          "privacy.", key, ": needs one row per normal agent (", nn, ")"));
    }
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].dim() != cfg.sim.dim) {
        return absl::InvalidArgumentError(absl::StrCat(
            "privacy.", key, "[", i, "]: needs ", cfg.sim.dim,
            " coordinates"));
      }
    }
    for (size_t i = 0; i < pr.alphas.size(); ++i) {
      if (!(pr.alphas[i] > 1)) {
        return absl::InvalidArgumentError(
            absl::StrCat("privacy.alphas[", i, "]: must be > 1"));
      }
    }
    if (pr.dp_rows < 0) {
      return absl::InvalidArgumentError("privacy.dp.rows: must be >= 0");
    }
  }
  for (size_t i = 0; i < cfg.plots.size(); ++i) {
    const std::string& p = cfg.plots[i];
    if (p != "initial" && p != "finals+hulls" && p != "mahalanobis") {
      return absl::InvalidArgumentError(absl::StrCat(
          "plots[", i, "]: unknown plot '", p,
          "' (expected initial, finals+hulls or mahalanobis)"));
    }
  }
  return cfg;
}

std::string EmitExperimentConfig(const ExperimentConfig& cfg) {
  const SimConfig& s = cfg.sim;
  Json j;
  j["n"] = s.n;
  j["faulty"] = s.faulty;
  j["dim"] = s.dim;
  j["horizon"] = s.horizon;
  j["seed"] = s.seed;
  j["search_budget"] = s.search_budget;
  j["check_resilience"] = s.check_resilience;
  j["noise"] = {{"lambda", s.noise.lambda},
                {"upsilon", s.noise.upsilon},
                {"mask", s.noise.mask}};
  if (s.gamma.rule == GammaRule::kFixed) {
    j["gamma"] = {{"rule", "fixed"}, {"value", s.gamma.gamma_l}};
  } else {
    j["gamma"] = {{"rule", "uniform"},
                  {"low", s.gamma.gamma_l},
                  {"high", s.gamma.gamma_m}};
  }
  j["topology"] = {{"policy", TopologyKindName(s.topology.kind)},
                   {"k", s.topology.k},
                   {"window_len", s.schedule_options.window_len},
                   {"max_retries", s.schedule_options.max_retries}};
  Json byz = {{"per_recipient", s.byzantine.per_recipient}};
  if (s.byzantine.kind == ByzantineKind::kFixedPoint) {
    byz["strategy"] = "fixed";
    byz["point"] = PointsJson({s.byzantine.fixed_point})[0];
  } else {
    byz["strategy"] = "box";
    byz["box"] = BoxJson(s.byzantine.box);
  }
  j["byzantine"] = byz;
  Json init = {{"seed", s.initial.seed}};
  if (!s.initial.states.empty()) {
    init["states"] = PointsJson(s.initial.states);
  } else {
    init["box"] = BoxJson(s.initial.box);
  }
  j["initial"] = init;
  j["record"] = {{"trajectory", s.record.trajectory},
                 {"transmitted", s.record.transmitted}};
  j["runs"] = cfg.runs;
  const AnalysisSpec& an = cfg.analysis;
  j["analysis"] = {{"chis", an.chis},
                   {"variance", an.variance},
                   {"hull",
                    {{"noisy_dims", an.hull.noisy_dims},
                     {"margins", an.hull.margins}}},
                   {"coverage_slack", an.coverage_slack},
                   {"variance_slack", an.variance_slack},
                   {"membership_slack", an.membership_slack}};
  if (cfg.privacy.enabled) {
    const PrivacySpec& pr = cfg.privacy;
    Json p = {{"alphas", pr.alphas},
              {"dp",
               {{"rows", pr.dp_rows},
                {"ell", pr.dp_ell},
                {"delta", pr.dp_delta}}}};
    if (!pr.shifts.empty()) p["shifts"] = PointsJson(pr.shifts);
    if (!pr.paired_initials.empty()) {
      p["paired_initials"] = PointsJson(pr.paired_initials);
    }
    j["privacy"] = p;
  }
  j["plots"] = cfg.plots;
  return j.dump(2) + "\n";
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFile(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << bytes;
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace ppadrc::cli
