// Copyright 2026 The finalstate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <vector>

#include "error.hpp"
#include "json.hpp"

namespace finalstate::output {

namespace {

using Json = nlohmann::ordered_json;
using experiments::Metric;
using experiments::TrialRecord;

Json number_or_null(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

Json config_json(const experiments::ResolvedConfig& cfg) {
  Json j;
  j["experiment"] = experiments::to_string(cfg.experiment);
  j["dim"] = cfg.dim;
  if (cfg.qubits) j["qubits"] = *cfg.qubits;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["final_state"] = experiments::to_string(cfg.final_state);
  j["interaction"] = experiments::to_string(cfg.interaction);
  if (cfg.interaction == experiments::InteractionKind::kCircuit) j["depth"] = cfg.depth;
  j["inputs_per_trial"] = cfg.inputs_per_trial;
  j["sigma_multiple"] = cfg.sigma_multiple;
  return j;
}

Json metric_json(const Metric& m) {
  Json j;
  j["count"] = m.count;
  j["mean"] = number_or_null(m.mean);
  j["stderr"] = number_or_null(m.stderr_mean);
  j["theory"] = number_or_null(m.theory);
  j["abs_dev"] = number_or_null(m.abs_dev);
  if (m.worst_dev) j["worst_dev"] = number_or_null(m.worst_dev);
  j["tolerance"] = m.tolerance;
  j["checked"] = m.checked;
  j["pass"] = m.pass;
  return j;
}

// One CSV/JSON column of the per-trial table.
struct Column {
  std::string name;
  std::function<std::optional<double>(const TrialRecord&)> get;
  bool integral = false;
};

std::vector<Column> trial_columns(const std::vector<TrialRecord>& records) {
  std::vector<Column> all = {
      {"trace_norm_sum", [](const TrialRecord& r) { return std::optional(r.trace_norm_sum); }},
      {"entropy_bits", [](const TrialRecord& r) { return std::optional(r.entropy_bits); }},
      {"purity", [](const TrialRecord& r) { return std::optional(r.purity); }},
      {"banaszek_f", [](const TrialRecord& r) { return std::optional(r.banaszek_f); }},
      {"mean_exact_f", [](const TrialRecord& r) { return r.mean_exact_f; }},
      {"typical_f", [](const TrialRecord& r) { return r.typical_f; }},
      {"classical_success",
       [](const TrialRecord& r) -> std::optional<double> {
         if (!r.classical_success) return std::nullopt;
         return *r.classical_success ? 1.0 : 0.0;
       },
       true},
      {"symbols_decoded",
       [](const TrialRecord& r) -> std::optional<double> {
         if (!r.symbols_decoded) return std::nullopt;
         return static_cast<double>(*r.symbols_decoded);
       },
       true},
      {"unitarity_defect", [](const TrialRecord& r) { return r.unitarity_defect; }},
      {"process_fidelity", [](const TrialRecord& r) { return r.process_fidelity; }},
      {"reference_entropy_bits", [](const TrialRecord& r) { return r.reference_entropy_bits; }},
      {"annihilations",
       [](const TrialRecord& r) { return std::optional(static_cast<double>(r.annihilations)); }, true},
  };
  std::vector<Column> used;
  for (auto& c : all) {
    for (const auto& r : records) {
      if (c.get(r)) {
        used.push_back(std::move(c));
        break;
      }
    }
  }
  return used;
}

Json trial_json(const TrialRecord& r, const std::vector<Column>& columns) {
  Json j;
  j["trial"] = r.index;
  for (const auto& c : columns) {
    const auto v = c.get(r);
    if (!v) continue;
    if (c.name == "classical_success") {
      j[c.name] = *v != 0.0;
    } else if (c.integral) {
      j[c.name] = static_cast<std::size_t>(*v);
    } else {
      j[c.name] = number_or_null(v);
    }
  }
  j["annihilation_flag"] = r.annihilation_flag;
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  return std::nullopt;
}

std::string render_json(const OutputDocument& doc) {
  const auto& s = doc.summary;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["experiment"] = experiments::to_string(s.config.experiment);
  j["config"] = config_json(s.config);

  Json summary;
  summary["all_pass"] = s.all_pass();
  summary["annihilations"] = s.annihilations;
  Json metrics = Json::object();
  for (const auto& m : s.metrics) metrics[m.name] = metric_json(m);
  summary["metrics"] = std::move(metrics);
  Json refs = Json::object();
  for (const auto& [name, value] : s.references) refs[name] = number_or_null(value);
  summary["reference_values"] = std::move(refs);
  j["summary"] = std::move(summary);

  if (doc.per_trial) {
    const auto columns = trial_columns(s.records);
    Json rows = Json::array();
    for (const auto& r : s.records) rows.push_back(trial_json(r, columns));
    j["per_trial"] = std::move(rows);
  }

  Json timing;
  timing["wall_seconds"] = doc.wall_seconds;
  timing["workers"] = s.config.workers;
  j["timing"] = std::move(timing);
  return j.dump(2) + "\n";
}

std::string render_csv(const OutputDocument& doc) {
  const auto& records = doc.summary.records;
  const auto columns = trial_columns(records);
  std::string out = "trial";
  for (const auto& c : columns) out += "," + c.name;
  out += "\n";

  std::vector<double> sums(columns.size(), 0.0);
  std::vector<std::size_t> counts(columns.size(), 0);
  for (const auto& r : records) {
    out += std::to_string(r.index);
    for (std::size_t k = 0; k < columns.size(); ++k) {
      out += ",";
      const auto v = columns[k].get(r);
      if (!v) continue;
      out += columns[k].integral ? std::to_string(static_cast<long long>(*v)) : format_double(*v);
      if (std::isfinite(*v)) {
        sums[k] += *v;
        ++counts[k];
      }
    }
    out += "\n";
  }

  out += "#summary";
  for (std::size_t k = 0; k < columns.size(); ++k) {
    out += ",";
    if (counts[k] > 0) out += format_double(sums[k] / static_cast<double>(counts[k]));
  }
  out += "\n";
  return out;
}

std::string render(const OutputDocument& doc, Format format) {
  return format == Format::kJson ? render_json(doc) : render_csv(doc);
}

void emit(const OutputDocument& doc, Format format, const std::string& path) {
  const std::string text = render(doc, format);
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::kIo, "failed writing to stdout");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot open output file " + path);
  file << text;
  file.flush();
  if (!file) throw Error(ErrorCode::kIo, "failed writing output file " + path);
}

}  // namespace finalstate::output
