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

#pragma once

#include <string>
#include <vector>

namespace cddsim {

// One run's full parameter set.  Frequencies are angular (rad/s): quoted
// couplings like "10 kHz" enter directly as 1e4.  Defaults mirror the
// worst-case working point (J = 10 kHz, beta = 1 MHz, tau0 = 1 ns).
struct RunConfig {
  // [run]
  std::string gate;  // memory | pi8 | hadamard | cphase (required)
  std::string strategy = "while";
  int n_max = 5;
  std::string precision = "standard";
  unsigned seed = 12345;
  int workers = 1;
  // [model]
  double j = 1e4;
  double beta = 1e6;
  std::string geometry = "linear";
  int bath_count = 2;
  int blocks = 0;  // 0 = derive from gate (cphase: 2, else 1)
  double bath_scaling = 1.0;
  // [sequence]
  double tau0 = 1e-9;
  double delta = 0.0;
  std::string cphase_sequence_file;
  int cphase_fallback_length = 42;
  // [sweep]
  double j_min = 1.0;
  double j_max = 1e6;
  int j_points = 7;
  double beta_min = 1.0;
  double beta_max = 1e6;
  int beta_points = 7;
  long budget = 100000;  // max emitted records per invocation
  int level = -1;        // contour slice; -1 = n_max
  // [calibrate]
  int calibrate_min_bath = 2;
  int calibrate_max_bath = 5;
  // [output]
  std::string out;  // empty = stdout
  std::string format = "csv";

  bool operator==(const RunConfig&) const = default;
};

// Line-oriented `key = value` document with [section] headers and '#'
// comments.  Unknown sections or keys are rejected with their location.
RunConfig parse_config(const std::string& text);

// Canonical full serialization; parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& c);

// Throws ValidationError naming the violated invariant.
void validate_config(const RunConfig& c);

int resolved_blocks(const RunConfig& c);
std::vector<double> sweep_j_values(const RunConfig& c);
std::vector<double> sweep_beta_values(const RunConfig& c);

// Section a key lives in; throws ValidationError for unknown keys.  Used by
// the CLI to splice `--set key=value` overrides into a config document.
std::string section_of_key(const std::string& key);

// Serialized config as comment lines for result files.
std::vector<std::string> config_comment_lines(const RunConfig& c);

}  // namespace cddsim
