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


#include "ppadrc/cli/commands.h"

#include <filesystem>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "nlohmann/json.hpp"
#include "ppadrc/analysis/accuracy.h"
#include "ppadrc/analysis/ensemble.h"
#include "ppadrc/base/errors.h"
#include "ppadrc/cli/experiment.h"
#include "ppadrc/cli/plot.h"
#include "ppadrc/cli/records.h"
#include "ppadrc/engine/protocol.h"
#include "ppadrc/geometry/polytope.h"
#include "ppadrc/privacy/cgp.h"

namespace ppadrc::cli {
namespace {

using Json = nlohmann::json;

// Hull membership tolerance for the ensemble mean.
constexpr double kMeanTol = 1e-6;

struct Failure {
  int code;
  absl::Status status;
};

std::string OutPath(const CommandOptions& o, const std::string& name) {
  return (std::filesystem::path(o.out_dir) / name).string();
}

int Report(const CommandOptions& o, std::ostream& err, const Failure& f) {
  const char* stage = f.code == kExitConfigError   ? "config"
                      : f.code == kExitEngineError ? "engine"
                                                   : "check";
  Json rec = {{"error",
               {{"stage", stage},
                {"code", absl::StatusCodeToString(f.status.code())},
                {"message", std::string(f.status.message())},
                {"exit", f.code}}}};
  err << rec.dump() << "\n";
  std::error_code ec;
  std::filesystem::create_directories(o.out_dir, ec);
  if (!ec) (void)WriteFile(OutPath(o, "error.json"), DumpJson(rec));
  return f.code;
}

Json PointJson(const Point& p) {
  Json a = Json::array();
  for (int k = 0; k < p.dim(); ++k) a.push_back(p[k]);
  return a;
}

Json MatrixJson(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string Fmt(double v) { return absl::StrFormat("%.6g", v); }

std::string PointText(const Point& p) {
  std::string s = "(";
  for (int k = 0; k < p.dim(); ++k) {
    absl::StrAppend(&s, k ? ", " : "", Fmt(p[k]));
  }
  return s + ")";
}

// Loads the config, applies command-line overrides, and prepares the output
// directory.
absl::StatusOr<ExperimentConfig> Load(const CommandOptions& o) {
  if (o.config_path.empty()) {
    return absl::InvalidArgumentError("--config is required");
  }
  absl::StatusOr<std::string> text = ReadFile(o.config_path);
  if (!text.ok()) return absl::InvalidArgumentError(text.status().message());
  absl::StatusOr<ExperimentConfig> cfg = ParseExperimentConfig(*text);
  if (!cfg.ok()) {
    return absl::Status(cfg.status().code(),
                        absl::StrCat(o.config_path, ": ",
                                     cfg.status().message()));
  }
  if (o.seed) cfg->sim.seed = *o.seed;
  if (o.runs) {
    if (*o.runs < 1) return absl::InvalidArgumentError("--runs must be >= 1");
    cfg->runs = *o.runs;
  }
  std::error_code ec;
  std::filesystem::create_directories(o.out_dir, ec);
  if (ec) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot create ", o.out_dir, ": ", ec.message()));
  }
  return cfg;
}

absl::Status Save(const CommandOptions& o, const std::string& name,
                  const std::string& bytes) {
  return WriteFile(OutPath(o, name), bytes);
}

absl::StatusOr<EnsembleRecord> LoadEnsemble(const CommandOptions& o,
                                            const SimConfig& sim) {
  const std::string path =
      o.input_path.empty() ? OutPath(o, "ensemble.ndrec") : o.input_path;
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return absl::InvalidArgumentError(text.status().message());
  absl::StatusOr<EnsembleRecord> rec = ParseEnsemble(*text);
  if (!rec.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", rec.status().message()));
  }
  if (rec->config_digest != ConfigDigest(sim)) {
    return absl::InvalidArgumentError(absl::StrCat(
        path, " was produced by a different configuration (digest ",
        absl::StrFormat("%016x", rec->config_digest), ", config gives ",
        absl::StrFormat("%016x", ConfigDigest(sim)), ")"));
  }
  return rec;
}

}  // namespace

int CmdRun(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  absl::StatusOr<ExperimentConfig> cfg = Load(o);
  if (!cfg.ok()) return Report(o, err, {kExitConfigError, cfg.status()});
  const SimConfig& sim = cfg->sim;
  absl::StatusOr<RunResult> run = Run(sim);
  if (!run.ok()) return Report(o, err, {kExitEngineError, run.status()});

  RunRecord rec;
  rec.seed = run->seed;
  rec.config_digest = ConfigDigest(sim);
  rec.schedule_digest = run->schedule_digest;
  rec.dim = sim.dim;
  rec.initial = *MaterializeInitialStates(sim);
  rec.final_states = run->final_states;
  rec.degenerate_fallbacks = run->degenerate_fallbacks;
  rec.resilience_violations = run->resilience_violations;
  const std::vector<int> agents = sim.NormalAgents();
  absl::Status s = Save(o, "run.ndrec", EmitRunRecord(rec));
  if (s.ok()) s = Save(o, "config.json", EmitExperimentConfig(*cfg));
  if (s.ok() && sim.record.trajectory) {
    s = Save(o, "traj.ndrec", EmitTrace(run->trajectory, agents, "x"));
  }
  if (s.ok() && sim.record.transmitted) {
    s = Save(o, "transmitted.ndrec", EmitTrace(run->transmitted, agents, "y"));
  }
  if (!s.ok()) return Report(o, err, {kExitEngineError, s});

  out << "run seed " << rec.seed << ", " << rec.final_states.size()
      << " normal agents, T = " << sim.horizon << "\n";
  for (size_t r = 0; r < rec.final_states.size(); ++r) {
    out << "  agent " << agents[r] << "  " << PointText(rec.final_states[r])
        << "\n";
  }
  if (rec.degenerate_fallbacks > 0) {
    out << "  degenerate neighborhoods: " << rec.degenerate_fallbacks << "\n";
  }
  return kExitOk;
}

int CmdEnsemble(const CommandOptions& o, std::ostream& out,
                std::ostream& err) {
  absl::StatusOr<ExperimentConfig> cfg = Load(o);
  if (!cfg.ok()) return Report(o, err, {kExitConfigError, cfg.status()});
  const SimConfig& sim = cfg->sim;
  EnsembleOptions opts;
  opts.runs = cfg->runs;
  opts.threads = o.jobs;
  opts.master_seed = sim.seed;
  absl::StatusOr<Ensemble> e = RunEnsemble(sim, opts);
  if (!e.ok()) return Report(o, err, {kExitEngineError, e.status()});

  EnsembleRecord rec;
  rec.config_digest = e->config_digest;
  rec.master_seed = sim.seed;
  rec.dim = sim.dim;
  rec.initial = *MaterializeInitialStates(sim);
  rec.seeds = e->seeds;
  rec.finals = e->finals;
  rec.disagreement_sq = e->disagreement_sq;

  const Point mean = Centroid(e->finals);
  absl::StatusOr<Polytope> hull = ConvexHull(rec.initial, sim.dim);
  if (!hull.ok()) return Report(o, err, {kExitEngineError, hull.status()});
  const bool inside = *Contains(*hull, mean, kMeanTol);
  double mean_dis = 0.0;
  for (double v : e->disagreement_sq) mean_dis += v / e->runs();

  Json summary = {{"runs", e->runs()},
                  {"mean", PointJson(mean)},
                  {"mean_in_initial_hull", inside},
                  {"mean_in_hull_tol", kMeanTol},
                  {"distance_to_initial_hull", DistanceToPolytope(*hull, mean)},
                  {"mean_disagreement_sq", mean_dis},
                  {"degenerate_fallbacks", e->degenerate_fallbacks}};
  if (e->runs() >= 2) {
    absl::StatusOr<EnsembleMoments> m = EnsembleStats(e->finals);
    if (m.ok()) summary["covariance"] = MatrixJson(m->cov);
  } else {
    summary["notice"] = "one run: statistics beyond the mean are not computed";
  }
  absl::Status s = Save(o, "ensemble.ndrec", EmitEnsemble(rec));
  if (s.ok()) s = Save(o, "ensemble_summary.json", DumpJson(summary));
  if (s.ok()) s = Save(o, "config.json", EmitExperimentConfig(*cfg));
  if (!s.ok()) return Report(o, err, {kExitEngineError, s});

  out << "ensemble of " << e->runs() << " runs, T = " << sim.horizon << "\n"
      << "  sample mean           " << PointText(mean) << "\n"
      << "  mean in initial hull  " << (inside ? "yes" : "no")
      << " (distance " << Fmt(DistanceToPolytope(*hull, mean)) << ")\n"
      << "  mean max disagreement^2 " << Fmt(mean_dis) << "\n";
  if (e->runs() < 2) out << "  " << summary["notice"].get<std::string>() << "\n";
  return kExitOk;
}

int CmdAnalyze(const CommandOptions& o, std::ostream& out,
               std::ostream& err) {
  absl::StatusOr<ExperimentConfig> cfg = Load(o);
  if (!cfg.ok()) return Report(o, err, {kExitConfigError, cfg.status()});
  const AnalysisSpec& spec = cfg->analysis;
  if (spec.empty()) {
    out << "analysis spec is empty; nothing to do\n";
    return kExitOk;
  }
  absl::StatusOr<EnsembleRecord> ens = LoadEnsemble(o, cfg->sim);
  if (!ens.ok()) return Report(o, err, {kExitConfigError, ens.status()});
  if (ens->runs() < 2) {
    return Report(o, err,
                  {kExitConfigError,
                   absl::InvalidArgumentError(
                       "analysis needs an ensemble of at least 2 runs")});
  }
  const NoiseSchedule& noise = cfg->sim.noise;
  Json report = Json::object();
  bool pass = true;

  if (!spec.chis.empty()) {
    absl::StatusOr<CoverageReport> cov =
        MahalanobisCoverage(ens->finals, spec.chis, spec.coverage_slack);
    if (!cov.ok()) return Report(o, err, {kExitConfigError, cov.status()});
    Json rows = Json::array();
    out << "Mahalanobis coverage (d_eff = " << cov->d_eff << ", slack "
        << Fmt(cov->slack) << ")\n"
        << "     chi   empirical       floor   pass\n";
    for (const CoverageRow& r : cov->rows) {
      rows.push_back({{"chi", r.chi},
                      {"empirical", r.empirical},
                      {"floor", r.floor},
                      {"volume", r.volume},
                      {"pass", r.pass}});
      out << absl::StrFormat("%8.3g %11.4f %11.4f   %s\n", r.chi, r.empirical,
                             r.floor, r.pass ? "yes" : "NO");
    }
    report["coverage"] = {{"mean", PointJson(cov->mean)},
                          {"covariance", MatrixJson(cov->cov)},
                          {"d_eff", cov->d_eff},
                          {"det", cov->det},
                          {"slack", cov->slack},
                          {"in_sample_covariance", true},
                          {"rows", rows},
                          {"pass", cov->pass}};
    pass = pass && cov->pass;
  }
  if (spec.variance) {
    absl::StatusOr<VarianceReport> var = VarianceBoundCheck(
        ens->finals, noise.lambda, noise.upsilon, spec.variance_slack);
    if (!var.ok()) return Report(o, err, {kExitConfigError, var.status()});
    Json dims = Json::array();
    out << "Variance bound " << Fmt(var->bound) << " (slack "
        << Fmt(var->slack) << ")\n";
    for (size_t k = 0; k < var->variance.size(); ++k) {
      dims.push_back({{"dim", k},
                      {"variance", var->variance[k]},
                      {"pass", static_cast<bool>(var->pass_dim[k])}});
      out << absl::StrFormat("  dim %d  variance %.6g  %s\n", k,
                             var->variance[k],
                             var->pass_dim[k] ? "ok" : "EXCEEDS");
    }
    report["variance"] = {{"bound", var->bound},
                          {"slack", var->slack},
                          {"dims", dims},
                          {"pass", var->pass}};
    pass = pass && var->pass;
  }
  if (!spec.hull.margins.empty()) {
    Json rows = Json::array();
    out << "Hull membership (noisy dims";
    for (int k : spec.hull.noisy_dims) out << " " << k;
    out << ")\n       r     D_H(A,C)      bound   empirical       floor   pass\n";
    bool all = true;
    for (double r : spec.hull.margins) {
      const std::vector<double> margins(spec.hull.noisy_dims.size(), r);
      absl::StatusOr<HullMembershipReport> h = HullMembershipCheck(
          ens->initial, spec.hull.noisy_dims, margins, noise.lambda,
          noise.upsilon, ens->finals, spec.membership_slack);
      if (!h.ok()) return Report(o, err, {kExitConfigError, h.status()});
      rows.push_back({{"margin", r},
                      {"hausdorff_ab", h->hausdorff_ab},
                      {"hausdorff_ac", h->hausdorff_ac},
                      {"hausdorff_ad", h->hausdorff_ad},
                      {"mu", h->mu},
                      {"geometric_bound", h->geometric_bound},
                      {"geometric_ok", h->geometric_ok},
                      {"l", h->l},
                      {"floor", h->floor},
                      {"empirical", h->empirical},
                      {"pass", h->pass}});
      out << absl::StrFormat("%8.3g %12.6g %10.6g %11.4f %11.4f   %s\n", r,
                             h->hausdorff_ac, h->geometric_bound,
                             h->empirical, h->floor, h->pass ? "yes" : "NO");
      all = all && h->pass;
    }
    report["hull"] = {{"noisy_dims", spec.hull.noisy_dims},
                      {"slack", spec.membership_slack},
                      {"rows", rows},
                      {"pass", all}};
    pass = pass && all;
  }
  report["pass"] = pass;
  if (absl::Status s = Save(o, "analysis_report.json", DumpJson(report));
      !s.ok()) {
    return Report(o, err, {kExitEngineError, s});
  }
  if (!pass) {
    return Report(o, err,
                  {kExitCheckFailed,
                   absl::FailedPreconditionError(
                       "an analysis check failed; see analysis_report.json")});
  }
  return kExitOk;
}

int CmdPrivacy(const CommandOptions& o, std::ostream& out,
               std::ostream& err) {
  absl::StatusOr<ExperimentConfig> cfg = Load(o);
  if (!cfg.ok()) return Report(o, err, {kExitConfigError, cfg.status()});
  const PrivacySpec& spec = cfg->privacy;
  if (!spec.enabled) {
    return Report(o, err,
                  {kExitConfigError,
                   absl::InvalidArgumentError(
                       "privacy: section missing from the config")});
  }
  std::vector<Point> shifts = spec.shifts;
  if (shifts.empty()) {
    const std::vector<Point> x0 = *MaterializeInitialStates(cfg->sim);
    for (size_t r = 0; r < x0.size(); ++r) {
      shifts.push_back(spec.paired_initials[r] - x0[r]);
    }
  }
  AuditOptions opts;
  opts.alphas = spec.alphas;
  opts.dp_rows = spec.dp_rows;
  opts.dp_ell = spec.dp_ell;
  opts.dp_delta = spec.dp_delta;
  absl::StatusOr<PrivacyReport> rep = AuditPrivacy(cfg->sim, shifts, opts);
  if (!rep.ok()) {
    const bool config_side = IsDomainError(rep.status()) ||
                             rep.status().code() ==
                                 absl::StatusCode::kInvalidArgument;
    return Report(o, err,
                  {config_side ? kExitConfigError : kExitEngineError,
                   rep.status()});
  }
  Json divs = Json::array();
  for (const DivergenceEntry& d : rep->divergences) {
    divs.push_back({{"alpha", d.alpha},
                    {"divergence", d.value},
                    {"bound", d.bound},
                    {"pass", d.pass}});
  }
  Json dp = Json::array();
  for (const DpEntry& d : rep->dp) {
    dp.push_back({{"h", d.h}, {"epsilon", d.epsilon}});
  }
  const bool defect = rep->transmitted_gap > opts.gap_tol;
  Json j = {{"rho", rep->rho},
            {"dist", rep->dist},
            {"sum_sq_shift", rep->sum_sq},
            {"horizon", rep->horizon},
            {"transmitted_gap", rep->transmitted_gap},
            {"coupling_defect", defect},
            {"divergences", divs},
            {"dp", {{"ell", spec.dp_ell}, {"delta", spec.dp_delta}, {"rows", dp}}},
            {"pass", rep->pass}};
  if (absl::Status s = Save(o, "privacy_report.json", DumpJson(j)); !s.ok()) {
    return Report(o, err, {kExitEngineError, s});
  }
  out << "rho = " << Fmt(rep->rho) << ", dist = " << Fmt(rep->dist)
      << ", transmitted gap = " << Fmt(rep->transmitted_gap) << "\n"
      << "   alpha   divergence        bound   pass\n";
  for (const DivergenceEntry& d : rep->divergences) {
    out << absl::StrFormat("%8.3g %12.6g %12.6g   %s\n", d.alpha, d.value,
                           d.bound, d.pass ? "yes" : "NO");
  }
  out << "DP epsilon(h), ell = " << Fmt(spec.dp_ell)
      << ", delta = " << Fmt(spec.dp_delta) << ":";
  for (const DpEntry& d : rep->dp) out << " " << Fmt(d.epsilon);
  out << "\n";
  if (defect) {
    return Report(o, err,
                  {kExitEngineError,
                   absl::InternalError(absl::StrCat(
                       "coupled transmitted sequences differ by ",
                       rep->transmitted_gap, "; the coupling is broken"))});
  }
  if (!rep->pass) {
    return Report(o, err,
                  {kExitCheckFailed,
                   absl::FailedPreconditionError(
                       "a divergence exceeds its bound")});
  }
  return kExitOk;
}

int CmdPlot(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  absl::StatusOr<ExperimentConfig> cfg = Load(o);
  if (!cfg.ok()) return Report(o, err, {kExitConfigError, cfg.status()});
  const std::string path =
      o.input_path.empty() ? OutPath(o, "ensemble.ndrec") : o.input_path;
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) {
    return Report(o, err, {kExitConfigError,
                           absl::InvalidArgumentError(text.status().message())});
  }
  std::vector<std::string> kinds = cfg->plots;
  const SimConfig& sim = cfg->sim;
  std::vector<PlotFile> files;
  auto add = [&](absl::StatusOr<std::vector<PlotFile>> made) -> absl::Status {
    if (!made.ok()) return made.status();
    files.insert(files.end(), made->begin(), made->end());
    return absl::OkStatus();
  };
  absl::Status s;
  if (absl::StatusOr<RunRecord> run = ParseRunRecord(*text); run.ok()) {
    if (kinds.empty()) kinds = {"initial"};
    for (const std::string& k : kinds) {
      if (k != "initial") {
        s = absl::InvalidArgumentError(absl::StrCat(
            "plot '", k, "' needs an ensemble; a run record supports only "
            "'initial'"));
        break;
      }
      s = add(PlotInitial(run->initial, run->final_states,
                          sim.faulty.empty() ? decltype(sim.byzantine.box){}
                                             : sim.byzantine.box));
    }
  } else {
    absl::StatusOr<EnsembleRecord> ens = LoadEnsemble(o, sim);
    if (!ens.ok()) return Report(o, err, {kExitConfigError, ens.status()});
    if (kinds.empty()) kinds = {"initial", "finals+hulls", "mahalanobis"};
    const std::vector<double> chis =
        cfg->analysis.chis.empty() ? std::vector<double>{2, 3, 4, 5}
                                   : cfg->analysis.chis;
    const double margin = cfg->analysis.hull.margins.empty()
                              ? 0.0
                              : cfg->analysis.hull.margins.front();
    for (const std::string& k : kinds) {
      if (!s.ok()) break;
      if (k == "initial") {
        s = add(PlotInitial(ens->initial, {},
                            sim.faulty.empty() ? decltype(sim.byzantine.box){}
                                               : sim.byzantine.box));
      } else if (k == "finals+hulls") {
        s = add(PlotFinalsHulls(ens->initial, ens->finals,
                                cfg->analysis.hull.noisy_dims, margin));
      } else {
        s = add(PlotMahalanobis(ens->finals, chis));
      }
    }
  }
  if (!s.ok()) return Report(o, err, {kExitConfigError, s});
  for (const PlotFile& f : files) {
    if (absl::Status w = Save(o, f.name, f.svg); !w.ok()) {
      return Report(o, err, {kExitEngineError, w});
    }
    out << "wrote " << OutPath(o, f.name) << "\n";
  }
  return kExitOk;
}

}  // namespace ppadrc::cli
