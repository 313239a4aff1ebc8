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


#include "ppadrc/cli/records.h"

#include <charconv>
#include <cmath>
#include <type_traits>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "nlohmann/json.hpp"
#include "ppadrc/base/status_macros.h"

namespace ppadrc::cli {
namespace {

using Json = nlohmann::json;

std::string Hex(uint64_t v) { return absl::StrFormat("%016x", v); }

void AppendPoints(std::string& out, const StateMatrix& rows) {
  out += '[';
  bool first = true;
  for (const Point& p : rows) {
    for (int k = 0; k < p.dim(); ++k) {
      if (!first) out += ',';
      first = false;
      out += FormatReal(p[k]);
    }
  }
  out += ']';
}

absl::Status Bad(int line, absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat("line ", line, ": ", what));
}

absl::StatusOr<Json> ParseLine(const std::string& text, int line) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return Bad(line, "not a JSON object");
  return j;
}

absl::StatusOr<uint64_t> GetHex(const Json& j, const char* key, int line) {
  if (!j.contains(key) || !j[key].is_string()) {
    return Bad(line, absl::StrCat("missing hex field ", key));
  }
  const std::string s = j[key].get<std::string>();
  uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    return Bad(line, absl::StrCat("bad hex in ", key));
  }
  return v;
}

template <typename T>
absl::StatusOr<T> Get(const Json& j, const char* key, int line) {
  if (!j.contains(key)) return Bad(line, absl::StrCat("missing field ", key));
  const Json& v = j[key];
  if constexpr (std::is_same_v<T, double>) {
    if (!v.is_number()) return Bad(line, absl::StrCat(key, " not a number"));
  } else {
    if (!v.is_number_integer()) {
      return Bad(line, absl::StrCat(key, " not an integer"));
    }
  }
  return v.get<T>();
}

absl::StatusOr<StateMatrix> GetPoints(const Json& j, const char* key, int dim,
                                      int line) {
  if (!j.contains(key) || !j[key].is_array()) {
    return Bad(line, absl::StrCat("missing array ", key));
  }
  const Json& a = j[key];
  if (dim <= 0 || a.size() % dim != 0) {
    return Bad(line, absl::StrCat(key, " length ", a.size(),
                                  " is not a multiple of d = ", dim));
  }
  StateMatrix out(a.size() / dim, Point(dim));
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) return Bad(line, absl::StrCat(key, " not numeric"));
    out[i / dim][static_cast<int>(i % dim)] = a[i].get<double>();
  }
  return out;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  for (absl::string_view l : absl::StrSplit(text, '\n')) {
    if (!l.empty()) out.emplace_back(l);
  }
  return out;
}

}  // namespace

std::string FormatReal(double v) { return absl::StrFormat("%.17g", v); }

namespace {

void Dump(const Json& j, int depth, std::string& out) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& item : j.items()) {
        if (!first) out += ",\n";
        first = false;
        absl::StrAppend(&out, pad, Json(item.key()).dump(), ": ");
        Dump(item.value(), depth + 1, out);
      }
      absl::StrAppend(&out, "\n", close, "}");
      return;
    }
    case Json::value_t::array: {
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const Json& v : j) flat = flat && !v.is_structured();
      if (flat) {
        out += '[';
        for (size_t i = 0; i < j.size(); ++i) {
          if (i > 0) out += ", ";
          Dump(j[i], depth + 1, out);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        Dump(j[i], depth + 1, out);
      }
      absl::StrAppend(&out, "\n", close, "]");
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? FormatReal(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string DumpJson(const Json& j) {
  std::string out;
  Dump(j, 0, out);
  out += '\n';
  return out;
}

std::string EmitRunRecord(const RunRecord& rec) {
  std::string out = absl::StrCat(
      "{\"kind\":\"run\",\"seed\":", rec.seed, ",\"config_digest\":\"",
      Hex(rec.config_digest), "\",\"schedule_digest\":\"",
      Hex(rec.schedule_digest), "\",\"d\":", rec.dim, ",\"initial\":");
  AppendPoints(out, rec.initial);
  out += ",\"final\":";
  AppendPoints(out, rec.final_states);
  absl::StrAppend(&out, ",\"degenerate_fallbacks\":", rec.degenerate_fallbacks,
                  ",\"resilience_violations\":", rec.resilience_violations,
                  "}\n");
  return out;
}

absl::StatusOr<RunRecord> ParseRunRecord(const std::string& text) {
  const std::vector<std::string> lines = Lines(text);
  if (lines.size() != 1) return Bad(1, "run record must be a single line");
  ASSIGN_OR_RETURN(Json j, ParseLine(lines[0], 1));
  if (j.value("kind", "") != "run") return Bad(1, "kind is not \"run\"");
  RunRecord rec;
  ASSIGN_OR_RETURN(rec.seed, Get<uint64_t>(j, "seed", 1));
  ASSIGN_OR_RETURN(rec.config_digest, GetHex(j, "config_digest", 1));
  ASSIGN_OR_RETURN(rec.schedule_digest, GetHex(j, "schedule_digest", 1));
  ASSIGN_OR_RETURN(rec.dim, Get<int>(j, "d", 1));
  ASSIGN_OR_RETURN(rec.initial, GetPoints(j, "initial", rec.dim, 1));
  ASSIGN_OR_RETURN(rec.final_states, GetPoints(j, "final", rec.dim, 1));
  ASSIGN_OR_RETURN(rec.degenerate_fallbacks,
                   Get<int>(j, "degenerate_fallbacks", 1));
  ASSIGN_OR_RETURN(rec.resilience_violations,
                   Get<int>(j, "resilience_violations", 1));
  return rec;
}

std::string EmitEnsemble(const EnsembleRecord& rec) {
  std::string out = absl::StrCat(
      "{\"kind\":\"ensemble\",\"config_digest\":\"", Hex(rec.config_digest),
      "\",\"master_seed\":", rec.master_seed, ",\"d\":", rec.dim,
      ",\"runs\":", rec.runs(), ",\"initial\":");
  AppendPoints(out, rec.initial);
  out += "}\n";
  for (int r = 0; r < rec.runs(); ++r) {
    absl::StrAppend(&out, "{\"run\":", r, ",\"seed\":", rec.seeds[r],
                    ",\"final\":");
    AppendPoints(out, {rec.finals[r]});
    absl::StrAppend(&out, ",\"disagreement_sq\":",
                    FormatReal(rec.disagreement_sq[r]), "}\n");
  }
  return out;
}

absl::StatusOr<EnsembleRecord> ParseEnsemble(const std::string& text) {
  const std::vector<std::string> lines = Lines(text);
  if (lines.empty()) return Bad(1, "empty ensemble file");
  ASSIGN_OR_RETURN(Json head, ParseLine(lines[0], 1));
  if (head.value("kind", "") != "ensemble") {
    return Bad(1, "kind is not \"ensemble\"");
  }
  EnsembleRecord rec;
  ASSIGN_OR_RETURN(rec.config_digest, GetHex(head, "config_digest", 1));
  ASSIGN_OR_RETURN(rec.master_seed, Get<uint64_t>(head, "master_seed", 1));
  ASSIGN_OR_RETURN(rec.dim, Get<int>(head, "d", 1));
  ASSIGN_OR_RETURN(int runs, Get<int>(head, "runs", 1));
  ASSIGN_OR_RETURN(rec.initial, GetPoints(head, "initial", rec.dim, 1));
  if (runs != static_cast<int>(lines.size()) - 1) {
    return Bad(1, absl::StrCat("header announces ", runs, " runs, file has ",
                               lines.size() - 1));
  }
  for (int r = 0; r < runs; ++r) {
    const int line = r + 2;
    ASSIGN_OR_RETURN(Json j, ParseLine(lines[r + 1], line));
    ASSIGN_OR_RETURN(int index, Get<int>(j, "run", line));
    if (index != r) return Bad(line, "runs out of order");
    ASSIGN_OR_RETURN(uint64_t seed, Get<uint64_t>(j, "seed", line));
    ASSIGN_OR_RETURN(StateMatrix fin, GetPoints(j, "final", rec.dim, line));
    if (fin.size() != 1) return Bad(line, "final must hold one point");
    ASSIGN_OR_RETURN(double dis, Get<double>(j, "disagreement_sq", line));
    rec.seeds.push_back(seed);
    rec.finals.push_back(fin[0]);
    rec.disagreement_sq.push_back(dis);
  }
  return rec;
}

std::string EmitTrace(const std::vector<StateMatrix>& rows,
                      std::span<const int> agents, const std::string& field) {
  std::string out;
  for (size_t t = 0; t < rows.size(); ++t) {
    for (size_t r = 0; r < rows[t].size(); ++r) {
      absl::StrAppend(&out, "{\"t\":", t, ",\"agent\":", agents[r], ",\"",
                      field, "\":");
      AppendPoints(out, {rows[t][r]});
      out += "}\n";
    }
  }
  return out;
}

absl::StatusOr<std::vector<TraceEntry>> ParseTrace(const std::string& text,
                                                   const std::string& field) {
  std::vector<TraceEntry> out;
  const std::vector<std::string> lines = Lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    ASSIGN_OR_RETURN(Json j, ParseLine(lines[i], line));
    TraceEntry e;
    ASSIGN_OR_RETURN(e.t, Get<int>(j, "t", line));
    ASSIGN_OR_RETURN(e.agent, Get<int>(j, "agent", line));
    if (!j.contains(field) || !j[field].is_array()) {
      return Bad(line, absl::StrCat("missing array ", field));
    }
    ASSIGN_OR_RETURN(StateMatrix p,
                     GetPoints(j, field.c_str(),
                               static_cast<int>(j[field].size()), line));
    e.x = p[0];
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace ppadrc::cli
