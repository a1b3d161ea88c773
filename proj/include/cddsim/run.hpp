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
#include <vector>

#include "cddsim/config.hpp"
#include "cddsim/engine.hpp"
#include "cddsim/records.hpp"

namespace cddsim {

// One record per concatenation level n = 0..n_max under the configured
// strategy, each followed by the unprotected baseline over T = 4^n tau0.
// Levels whose interval count cannot hold the gate's operation sequence are
// skipped with a warning on stderr.  strategy = "free" emits the baselines
// only (the two families coincide).
std::vector<FidelityRecord> run_single(const RunConfig& cfg);

// One record per (J, beta, n) cell of the log-spaced grid, J outermost,
// beta inner, n innermost; no baselines.  Cells run concurrently when
// cfg.workers > 1 with output order (and bytes) identical to serial.
std::vector<FidelityRecord> run_sweep(const RunConfig& cfg);

// Largest n* such that 1-F strictly decreases on 0..n*.  Floor-clamped
// records terminate the scan: a floor hit is not a decrease.  The records
// must cover contiguous levels n = 0..n_max of a single cell.
int turning_point(const std::vector<FidelityRecord>& cell_records);

struct ContourGrid {
  std::vector<double> j_tau0;   // column axis
  std::vector<double> beta_tau0;  // row axis
  std::vector<std::vector<double>> log10_one_minus_f;  // [beta][j]
  int n = 0;
  double delta_s = 0;
};

// Dimensionless (J tau0, beta tau0) grid of log10(1-F) at one fixed level,
// ready for external contour plotting.
ContourGrid contour_export(const std::vector<FidelityRecord>& table,
                           const RunConfig& cfg, int fixed_n);

struct TurningPointGrid {
  std::vector<double> j;
  std::vector<double> beta;
  std::vector<std::vector<int>> n_star;  // [beta][j]
};

TurningPointGrid turning_point_map(const std::vector<FidelityRecord>& table,
                                   const RunConfig& cfg);

struct CalibrationOutcome {
  CalibrationReport report;
  std::string precision;
};

CalibrationOutcome run_calibration(const RunConfig& cfg);

// Emitters for the grid products (matrix CSV with axis headers, JSON mirror).
void write_contour(std::ostream& out, const ContourGrid& grid,
                   const RunConfig& cfg, const std::string& format);
void write_turning_map(std::ostream& out, const TurningPointGrid& grid,
                       const RunConfig& cfg, const std::string& format);
void write_calibration(std::ostream& out, const CalibrationOutcome& outcome,
                       const RunConfig& cfg, const std::string& format);

}  // namespace cddsim
