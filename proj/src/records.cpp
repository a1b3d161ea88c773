// Copyright 2026 The cddsim Authors
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

#include "cddsim/records.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace cddsim {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string csv_header() {
  return "gate,strategy,n,tau0_s,delta_s,J_rads,beta_rads,fidelity,one_minus_F,"
         "log10_one_minus_F,floor_clamped,precision,wall_time_s,cphase_source";
}

std::string to_csv_row(const FidelityRecord& r) {
  std::string row;
  row += csv_quote(r.gate);
  row += ',';
  row += csv_quote(r.strategy);
  row += ',';
  row += std::to_string(r.n);
  row += ',';
  row += fmt_double(r.tau0_s);
  row += ',';
  row += fmt_double(r.delta_s);
  row += ',';
  row += fmt_double(r.j_rads);
  row += ',';
  row += fmt_double(r.beta_rads);
  row += ',';
  row += fmt_double(r.fidelity);
  row += ',';
  row += fmt_double(r.one_minus_f);
  row += ',';
  row += fmt_double(r.log10_one_minus_f);
  row += ',';
  row += r.floor_clamped ? '1' : '0';
  row += ',';
  row += csv_quote(r.precision);
  // wall_time_s is zeroed in artifacts: output bytes must not depend on
  // machine load.  Timings are reported on stderr instead.
  row += ",0,";
  row += csv_quote(r.cphase_source);
  return row;
}

void write_csv(std::ostream& out, const std::vector<FidelityRecord>& records,
               const std::vector<std::string>& config_comment) {
  out << "# cddsim results schema_version=" << kResultSchemaVersion << "\n";
  for (const auto& line : config_comment) out << "# " << line << "\n";
  out << csv_header() << "\n";
  for (const auto& r : records) out << to_csv_row(r) << "\n";
}

void write_json(std::ostream& out, const std::vector<FidelityRecord>& records,
                const std::vector<std::string>& config_comment) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kResultSchemaVersion;
  doc["config"] = config_comment;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json row;
    row["gate"] = r.gate;
    row["strategy"] = r.strategy;
    row["n"] = r.n;
    row["tau0_s"] = r.tau0_s;
    row["delta_s"] = r.delta_s;
    row["J_rads"] = r.j_rads;
    row["beta_rads"] = r.beta_rads;
    row["fidelity"] = r.fidelity;
    row["one_minus_F"] = r.one_minus_f;
    row["log10_one_minus_F"] = r.log10_one_minus_f;
    row["floor_clamped"] = r.floor_clamped;
    row["precision"] = r.precision;
    row["wall_time_s"] = 0.0;  // see write_csv
    row["cphase_source"] = r.cphase_source;
    rows.push_back(std::move(row));
  }
  doc["records"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

}  // namespace cddsim
