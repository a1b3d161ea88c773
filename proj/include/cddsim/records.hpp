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

#include <iosfwd>
#include <string>
#include <vector>

namespace cddsim {

inline constexpr int kResultSchemaVersion = 1;

// One simulation outcome.  log10(1-F) is clamped at the precision backend's
// floor (64 epsilon) and flagged, because below that the subtraction 1-F is
// numerical noise.  wall_time_s is measured in memory for diagnostics but
// written as zero in output artifacts so identical configs produce
// byte-identical files.
struct FidelityRecord {
  std::string gate;
  std::string strategy;  // "while", "then", or "free"
  int n = 0;
  double tau0_s = 0;
  double delta_s = 0;
  double j_rads = 0;
  double beta_rads = 0;
  double fidelity = 0;
  double one_minus_f = 0;
  double log10_one_minus_f = 0;
  bool floor_clamped = false;
  std::string precision = "standard";
  double wall_time_s = 0;
  std::string cphase_source;
};

std::string csv_header();
std::string to_csv_row(const FidelityRecord& r);

// Full-file emitters.  `config_comment` lines (one per entry) are written
// as '#' comments after the schema banner so every row stays reproducible
// from the file alone.
void write_csv(std::ostream& out, const std::vector<FidelityRecord>& records,
               const std::vector<std::string>& config_comment);
void write_json(std::ostream& out, const std::vector<FidelityRecord>& records,
                const std::vector<std::string>& config_comment);

}  // namespace cddsim
