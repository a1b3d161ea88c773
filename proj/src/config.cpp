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

#include "cddsim/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cddsim/errors.hpp"

namespace cddsim {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

struct KeySpec {
  std::string section;
  std::function<void(RunConfig&, const std::string&, int, int)> apply;
};

double parse_double(const std::string& v, int line, int col) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ParseError("expected a number, got '" + v + "'", line, col);
  return x;
}

long parse_long(const std::string& v, int line, int col) {
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ParseError("expected an integer, got '" + v + "'", line, col);
  return x;
}

const std::map<std::string, KeySpec>& key_table() {
  static const std::map<std::string, KeySpec> table = {
      {"gate", {"run", [](RunConfig& c, const std::string& v, int, int) { c.gate = v; }}},
      {"strategy", {"run", [](RunConfig& c, const std::string& v, int, int) { c.strategy = v; }}},
      {"n_max", {"run", [](RunConfig& c, const std::string& v, int l, int k) { c.n_max = int(parse_long(v, l, k)); }}},
      {"precision", {"run", [](RunConfig& c, const std::string& v, int, int) { c.precision = v; }}},
      {"seed", {"run", [](RunConfig& c, const std::string& v, int l, int k) { c.seed = unsigned(parse_long(v, l, k)); }}},
      {"workers", {"run", [](RunConfig& c, const std::string& v, int l, int k) { c.workers = int(parse_long(v, l, k)); }}},
      {"J", {"model", [](RunConfig& c, const std::string& v, int l, int k) { c.j = parse_double(v, l, k); }}},
      {"beta", {"model", [](RunConfig& c, const std::string& v, int l, int k) { c.beta = parse_double(v, l, k); }}},
      {"geometry", {"model", [](RunConfig& c, const std::string& v, int, int) { c.geometry = v; }}},
      {"bath_count", {"model", [](RunConfig& c, const std::string& v, int l, int k) { c.bath_count = int(parse_long(v, l, k)); }}},
      {"blocks", {"model", [](RunConfig& c, const std::string& v, int l, int k) { c.blocks = v == "auto" ? 0 : int(parse_long(v, l, k)); }}},
      {"bath_scaling", {"model", [](RunConfig& c, const std::string& v, int l, int k) { c.bath_scaling = parse_double(v, l, k); }}},
      {"tau0", {"sequence", [](RunConfig& c, const std::string& v, int l, int k) { c.tau0 = parse_double(v, l, k); }}},
      {"delta", {"sequence", [](RunConfig& c, const std::string& v, int l, int k) { c.delta = parse_double(v, l, k); }}},
      {"cphase_sequence_file", {"sequence", [](RunConfig& c, const std::string& v, int, int) { c.cphase_sequence_file = v; }}},
      {"cphase_fallback_length", {"sequence", [](RunConfig& c, const std::string& v, int l, int k) { c.cphase_fallback_length = int(parse_long(v, l, k)); }}},
      {"J_min", {"sweep", [](RunConfig& c, const std::string& v, int l, int k) { c.j_min = parse_double(v, l, k); }}},
      {"J_max", {"sweep", [](RunConfig& c, const std::string& v, int l, int k) { c.j_max = parse_double(v, l, k); }}},
      {"J_points", {"sweep", [](RunConfig& c, const std::string& v, int l, int k) { c.j_points = int(parse_long(v, l, k)); }}},
      {"beta_min", {"sweep", [](RunConfig& c, const std::string& v, int l, int k) { c.beta_min = parse_double(v, l, k); }}},
      {"beta_max", {"sweep", [](RunConfig& c, const std::string& v, int l, int k) { c.beta_max = parse_double(v, l, k); }}},
      {"beta_points", {"sweep", [](RunConfig& c, const std::string& v, int l, int k) { c.beta_points = int(parse_long(v, l, k)); }}},
      {"budget", {"sweep", [](RunConfig& c, const std::string& v, int l, int k) { c.budget = parse_long(v, l, k); }}},
      {"level", {"sweep", [](RunConfig& c, const std::string& v, int l, int k) { c.level = int(parse_long(v, l, k)); }}},
      {"calibrate_min_bath", {"calibrate", [](RunConfig& c, const std::string& v, int l, int k) { c.calibrate_min_bath = int(parse_long(v, l, k)); }}},
      {"calibrate_max_bath", {"calibrate", [](RunConfig& c, const std::string& v, int l, int k) { c.calibrate_max_bath = int(parse_long(v, l, k)); }}},
      {"out", {"output", [](RunConfig& c, const std::string& v, int, int) { c.out = v; }}},
      {"format", {"output", [](RunConfig& c, const std::string& v, int, int) { c.format = v; }}},
  };
  return table;
}

const std::set<std::string>& section_names() {
  static const std::set<std::string> names = {"run",   "model",     "sequence",
                                              "sweep", "calibrate", "output"};
  return names;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::string section;  // empty until a header appears; keys resolve globally
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("unterminated section header", lineno,
                         int(raw.find('[')) + 1);
      section = trim(line.substr(1, line.size() - 2));
      if (!section_names().count(section))
        throw ParseError("unknown section '" + section + "'", lineno,
                         int(raw.find('[')) + 1);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", lineno, 1);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const int key_col = int(raw.find(key)) + 1;
    const auto it = key_table().find(key);
    if (it == key_table().end())
      throw ParseError("unknown key '" + key + "'", lineno, key_col);
    if (!section.empty() && it->second.section != section)
      throw ParseError("key '" + key + "' belongs to section [" +
                           it->second.section + "]",
                       lineno, key_col);
    it->second.apply(cfg, value, lineno, key_col);
  }
  validate_config(cfg);
  return cfg;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[run]\n";
  out << "gate = " << c.gate << "\n";
  out << "strategy = " << c.strategy << "\n";
  out << "n_max = " << c.n_max << "\n";
  out << "precision = " << c.precision << "\n";
  out << "seed = " << c.seed << "\n";
  out << "workers = " << c.workers << "\n";
  out << "[model]\n";
  out << "J = " << fmt_double(c.j) << "\n";
  out << "beta = " << fmt_double(c.beta) << "\n";
  out << "geometry = " << c.geometry << "\n";
  out << "bath_count = " << c.bath_count << "\n";
  out << "blocks = " << c.blocks << "\n";
  out << "bath_scaling = " << fmt_double(c.bath_scaling) << "\n";
  out << "[sequence]\n";
  out << "tau0 = " << fmt_double(c.tau0) << "\n";
  out << "delta = " << fmt_double(c.delta) << "\n";
  out << "cphase_sequence_file = " << c.cphase_sequence_file << "\n";
  out << "cphase_fallback_length = " << c.cphase_fallback_length << "\n";
  out << "[sweep]\n";
  out << "J_min = " << fmt_double(c.j_min) << "\n";
  out << "J_max = " << fmt_double(c.j_max) << "\n";
  out << "J_points = " << c.j_points << "\n";
  out << "beta_min = " << fmt_double(c.beta_min) << "\n";
  out << "beta_max = " << fmt_double(c.beta_max) << "\n";
  out << "beta_points = " << c.beta_points << "\n";
  out << "budget = " << c.budget << "\n";
  out << "level = " << c.level << "\n";
  out << "[calibrate]\n";
  out << "calibrate_min_bath = " << c.calibrate_min_bath << "\n";
  out << "calibrate_max_bath = " << c.calibrate_max_bath << "\n";
  out << "[output]\n";
  out << "out = " << c.out << "\n";
  out << "format = " << c.format << "\n";
  return out.str();
}

int resolved_blocks(const RunConfig& c) {
  if (c.blocks != 0) return c.blocks;
  return c.gate == "cphase" ? 2 : 1;
}

void validate_config(const RunConfig& c) {
  if (c.gate.empty()) throw ValidationError("gate is required");
  if (c.gate != "memory" && c.gate != "pi8" && c.gate != "hadamard" &&
      c.gate != "cphase")
    throw ValidationError("gate must be memory|pi8|hadamard|cphase, got '" +
                          c.gate + "'");
  if (c.strategy != "while" && c.strategy != "then" && c.strategy != "free")
    throw ValidationError("strategy must be while|then|free");
  if (c.n_max < 0) throw ValidationError("n_max must be >= 0");
  if (c.precision != "standard" && c.precision != "extended")
    throw ValidationError("precision must be standard|extended");
  if (c.workers < 1) throw ValidationError("workers must be >= 1");
  if (c.j < 0) throw ValidationError("J must be >= 0");
  if (c.beta < 0) throw ValidationError("beta must be >= 0");
  if (c.geometry != "linear" && c.geometry != "circular" && c.geometry != "polygonal")
    throw ValidationError("geometry must be linear|circular|polygonal");
  if (c.bath_count < 1) throw ValidationError("bath_count must be >= 1");
  if (c.blocks != 0 && c.blocks != 1 && c.blocks != 2)
    throw ValidationError("blocks must be auto (0), 1, or 2");
  const int blocks = resolved_blocks(c);
  if (c.gate == "cphase" && blocks != 2)
    throw ValidationError("cphase acts on two blocks");
  if (c.gate != "cphase" && blocks != 1)
    throw ValidationError("single-block gates require blocks = 1");
  if (4 * blocks + c.bath_count > 12)
    throw ValidationError("total qubits (4*blocks + bath_count) must be <= 12");
  if (c.bath_scaling <= 0) throw ValidationError("bath_scaling must be > 0");
  if (c.tau0 <= 0) throw ValidationError("tau0 must be > 0");
  if (c.delta < 0) throw ValidationError("delta must be >= 0");
  if (c.cphase_fallback_length < 1)
    throw ValidationError("cphase_fallback_length must be >= 1");
  if (c.j_min <= 0 || c.j_max <= 0 || c.beta_min <= 0 || c.beta_max <= 0)
    throw ValidationError("sweep ranges must be positive");
  if (c.j_min > c.j_max || c.beta_min > c.beta_max)
    throw ValidationError("sweep ranges must satisfy min <= max");
  if (c.j_points < 1 || c.beta_points < 1)
    throw ValidationError("sweep point counts must be >= 1");
  if (c.budget < 1) throw ValidationError("budget must be >= 1");
  if (c.level < -1) throw ValidationError("level must be >= 0 (or -1 for n_max)");
  if (c.calibrate_min_bath < 1 || c.calibrate_max_bath < c.calibrate_min_bath)
    throw ValidationError("calibrate bath range must satisfy 1 <= min <= max");
  if (4 + c.calibrate_max_bath > 12)
    throw ValidationError("calibrate bath range exceeds the 12-qubit budget");
  if (c.format != "csv" && c.format != "json")
    throw ValidationError("format must be csv|json");
}

namespace {

std::vector<double> log_spaced(double lo, double hi, int points) {
  std::vector<double> out;
  out.reserve(points);
  if (points == 1) {
    out.push_back(lo);
    return out;
  }
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int k = 0; k < points; ++k)
    out.push_back(std::pow(10.0, llo + (lhi - llo) * k / (points - 1)));
  return out;
}

}  // namespace

std::vector<double> sweep_j_values(const RunConfig& c) {
  return log_spaced(c.j_min, c.j_max, c.j_points);
}

std::vector<double> sweep_beta_values(const RunConfig& c) {
  return log_spaced(c.beta_min, c.beta_max, c.beta_points);
}

std::string section_of_key(const std::string& key) {
  const auto it = key_table().find(key);
  if (it == key_table().end())
    throw ValidationError("unknown config key '" + key + "'");
  return it->second.section;
}

std::vector<std::string> config_comment_lines(const RunConfig& c) {
  std::vector<std::string> lines;
  std::istringstream in(serialize_config(c));
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace cddsim
