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

#include "cddsim/run.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <thread>

#include "cddsim/gate_library.hpp"
#include "json.hpp"

namespace cddsim {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

GateLibraryOptions library_options(const RunConfig& cfg) {
  GateLibraryOptions opt;
  opt.cphase_sequence_file = cfg.cphase_sequence_file;
  opt.cphase_fallback_length = cfg.cphase_fallback_length;
  opt.seed = cfg.seed;
  return opt;
}

template <typename Real>
SystemModel<Real> model_for(const RunConfig& cfg, double j, double beta) {
  const Geometry g = build_geometry(geometry_kind_from_string(cfg.geometry),
                                    4 * resolved_blocks(cfg), cfg.bath_count);
  return build_model<Real>(g, Real(j), Real(beta), Real(cfg.bath_scaling));
}

template <typename Real>
std::vector<FidelityRecord> run_single_impl(const RunConfig& cfg) {
  validate_config(cfg);
  const LogicalGate<Real>& gate = get_gate<Real>(cfg.gate, library_options(cfg));
  const SystemModel<Real> model = model_for<Real>(cfg, cfg.j, cfg.beta);
  const auto amps = logical_one_amplitudes<Real>(gate.blocks);
  const Strategy strategy = strategy_from_string(cfg.strategy);

  std::vector<FidelityRecord> records;
  for (int n = 0; n <= cfg.n_max; ++n) {
    if (strategy != Strategy::free_evolution) {
      try {
        records.push_back(simulate<Real>(gate, strategy, n, Real(cfg.tau0),
                                         Real(cfg.delta), model, amps, cfg.workers));
      } catch (const TooFewIntervalsError& e) {
        std::cerr << "cddsim: skipping n=" << n << " for gate " << cfg.gate
                  << ": " << e.what() << "\n";
      }
    }
    records.push_back(simulate<Real>(gate, Strategy::free_evolution, n,
                                     Real(cfg.tau0), Real(0), model, amps,
                                     cfg.workers));
  }
  return records;
}

template <typename Real>
std::vector<FidelityRecord> run_sweep_impl(const RunConfig& cfg) {
  validate_config(cfg);
  const std::vector<double> js = sweep_j_values(cfg);
  const std::vector<double> betas = sweep_beta_values(cfg);
  const long cells = long(js.size()) * long(betas.size());
  const long total = cells * (cfg.n_max + 1);
  if (total > cfg.budget)
    throw BudgetExceededError("sweep would emit " + std::to_string(total) +
                              " records, budget is " + std::to_string(cfg.budget));
  // Synthesize gates before the parallel section so workers share them.
  const LogicalGate<Real>& gate = get_gate<Real>(cfg.gate, library_options(cfg));
  const Strategy strategy = strategy_from_string(cfg.strategy);

  std::vector<std::vector<FidelityRecord>> per_cell(cells);
  auto run_cell = [&](long cell) {
    const double j = js[cell / betas.size()];
    const double beta = betas[cell % betas.size()];
    const SystemModel<Real> model = model_for<Real>(cfg, j, beta);
    const auto amps = logical_one_amplitudes<Real>(gate.blocks);
    auto& out = per_cell[cell];
    for (int n = 0; n <= cfg.n_max; ++n) {
      try {
        out.push_back(simulate<Real>(gate, strategy, n, Real(cfg.tau0),
                                     Real(cfg.delta), model, amps));
      } catch (const TooFewIntervalsError&) {
        // Cell skipped at this level; turning-point and contour consumers
        // require contiguous levels, so flag loudly.
        std::cerr << "cddsim: sweep cell (J=" << j << ", beta=" << beta
                  << ") infeasible at n=" << n << "\n";
      }
    }
  };

  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    for (long cell = 0; cell < cells; ++cell) run_cell(cell);
  } else {
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        for (long cell = next.fetch_add(1); cell < cells; cell = next.fetch_add(1))
          run_cell(cell);
      });
    for (auto& t : pool) t.join();
  }

  std::vector<FidelityRecord> records;
  records.reserve(total);
  for (auto& cell : per_cell)
    for (auto& r : cell) records.push_back(std::move(r));
  return records;
}

template <typename Real>
CalibrationOutcome run_calibration_impl(const RunConfig& cfg) {
  validate_config(cfg);
  CalibrationOutcome outcome;
  outcome.report = calibrate_bath_scaling<Real>(
      geometry_kind_from_string(cfg.geometry), Real(cfg.j), Real(cfg.beta),
      Real(cfg.tau0), cfg.calibrate_min_bath, cfg.calibrate_max_bath);
  outcome.precision = precision_name<Real>();
  return outcome;
}

template <typename Fn>
auto dispatch_precision(const std::string& precision, Fn&& fn) {
  if (precision == "extended") return fn.template operator()<long double>();
  return fn.template operator()<double>();
}

}  // namespace

std::vector<FidelityRecord> run_single(const RunConfig& cfg) {
  return dispatch_precision(cfg.precision, [&]<typename R>() {
    return run_single_impl<R>(cfg);
  });
}

std::vector<FidelityRecord> run_sweep(const RunConfig& cfg) {
  return dispatch_precision(cfg.precision, [&]<typename R>() {
    return run_sweep_impl<R>(cfg);
  });
}

CalibrationOutcome run_calibration(const RunConfig& cfg) {
  return dispatch_precision(cfg.precision, [&]<typename R>() {
    return run_calibration_impl<R>(cfg);
  });
}

int turning_point(const std::vector<FidelityRecord>& cell_records) {
  if (cell_records.empty())
    throw IncompleteSeriesError("turning_point: empty series");
  std::vector<const FidelityRecord*> by_n(cell_records.size(), nullptr);
  for (const auto& r : cell_records) {
    if (r.n < 0 || r.n >= int(cell_records.size()) || by_n[r.n])
      throw IncompleteSeriesError("turning_point: levels must be contiguous 0..n_max");
    by_n[r.n] = &r;
  }
  int tp = 0;
  for (size_t m = 1; m < by_n.size(); ++m) {
    if (by_n[m]->floor_clamped) break;  // a floor hit is not a decrease
    if (by_n[m]->one_minus_f < by_n[m - 1]->one_minus_f)
      tp = int(m);
    else
      break;
  }
  return tp;
}

namespace {

// Cell-major regrouping of a sweep table.
std::map<std::pair<double, double>, std::vector<FidelityRecord>> group_cells(
    const std::vector<FidelityRecord>& table) {
  std::map<std::pair<double, double>, std::vector<FidelityRecord>> cells;
  for (const auto& r : table) cells[{r.j_rads, r.beta_rads}].push_back(r);
  return cells;
}

}  // namespace

ContourGrid contour_export(const std::vector<FidelityRecord>& table,
                           const RunConfig& cfg, int fixed_n) {
  const std::vector<double> js = sweep_j_values(cfg);
  const std::vector<double> betas = sweep_beta_values(cfg);
  ContourGrid grid;
  grid.n = fixed_n;
  grid.delta_s = cfg.delta;
  for (double j : js) grid.j_tau0.push_back(j * cfg.tau0);
  for (double b : betas) grid.beta_tau0.push_back(b * cfg.tau0);
  grid.log10_one_minus_f.assign(betas.size(), std::vector<double>(js.size(), 0));
  std::map<std::pair<double, double>, double> lookup;
  for (const auto& r : table)
    if (r.n == fixed_n && r.delta_s == cfg.delta)
      lookup[{r.j_rads, r.beta_rads}] = r.log10_one_minus_f;
  for (size_t bi = 0; bi < betas.size(); ++bi)
    for (size_t ji = 0; ji < js.size(); ++ji) {
      const auto it = lookup.find({js[ji], betas[bi]});
      if (it == lookup.end())
        throw IncompleteGridError(
            "contour_export: missing record for (J=" + fmt_double(js[ji]) +
            ", beta=" + fmt_double(betas[bi]) + ") at n=" + std::to_string(fixed_n));
      grid.log10_one_minus_f[bi][ji] = it->second;
    }
  return grid;
}

TurningPointGrid turning_point_map(const std::vector<FidelityRecord>& table,
                                   const RunConfig& cfg) {
  const std::vector<double> js = sweep_j_values(cfg);
  const std::vector<double> betas = sweep_beta_values(cfg);
  auto cells = group_cells(table);
  TurningPointGrid grid;
  grid.j = js;
  grid.beta = betas;
  grid.n_star.assign(betas.size(), std::vector<int>(js.size(), 0));
  for (size_t bi = 0; bi < betas.size(); ++bi)
    for (size_t ji = 0; ji < js.size(); ++ji) {
      const auto it = cells.find({js[ji], betas[bi]});
      if (it == cells.end())
        throw IncompleteGridError("turning_point_map: missing cell (J=" +
                                  fmt_double(js[ji]) + ", beta=" +
                                  fmt_double(betas[bi]) + ")");
      grid.n_star[bi][ji] = turning_point(it->second);
    }
  return grid;
}

void write_contour(std::ostream& out, const ContourGrid& grid,
                   const RunConfig& cfg, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kResultSchemaVersion;
    doc["config"] = config_comment_lines(cfg);
    doc["n"] = grid.n;
    doc["delta_s"] = grid.delta_s;
    doc["J_tau0"] = grid.j_tau0;
    doc["beta_tau0"] = grid.beta_tau0;
    doc["log10_one_minus_F"] = grid.log10_one_minus_f;
    out << doc.dump(2) << "\n";
    return;
  }
  out << "# cddsim contour schema_version=" << kResultSchemaVersion
      << " n=" << grid.n << " delta_s=" << fmt_double(grid.delta_s) << "\n";
  for (const auto& line : config_comment_lines(cfg)) out << "# " << line << "\n";
  out << "beta_tau0\\J_tau0";
  for (double v : grid.j_tau0) out << "," << fmt_double(v);
  out << "\n";
  for (size_t bi = 0; bi < grid.beta_tau0.size(); ++bi) {
    out << fmt_double(grid.beta_tau0[bi]);
    for (double v : grid.log10_one_minus_f[bi]) out << "," << fmt_double(v);
    out << "\n";
  }
}

void write_turning_map(std::ostream& out, const TurningPointGrid& grid,
                       const RunConfig& cfg, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kResultSchemaVersion;
    doc["config"] = config_comment_lines(cfg);
    doc["J_rads"] = grid.j;
    doc["beta_rads"] = grid.beta;
    doc["turning_point"] = grid.n_star;
    out << doc.dump(2) << "\n";
    return;
  }
  out << "# cddsim turning-point map schema_version=" << kResultSchemaVersion << "\n";
  for (const auto& line : config_comment_lines(cfg)) out << "# " << line << "\n";
  out << "beta_rads\\J_rads";
  for (double v : grid.j) out << "," << fmt_double(v);
  out << "\n";
  for (size_t bi = 0; bi < grid.beta.size(); ++bi) {
    out << fmt_double(grid.beta[bi]);
    for (int v : grid.n_star[bi]) out << "," << v;
    out << "\n";
  }
}

void write_calibration(std::ostream& out, const CalibrationOutcome& outcome,
                       const RunConfig& cfg, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kResultSchemaVersion;
    doc["config"] = config_comment_lines(cfg);
    doc["precision"] = outcome.precision;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& p : outcome.report.points)
      pts.push_back({{"bath_count", p.bath_count},
                     {"one_minus_F", p.one_minus_f},
                     {"floor_clamped", p.floor_clamped}});
    doc["points"] = std::move(pts);
    doc["slope"] = outcome.report.slope;
    doc["intercept"] = outcome.report.intercept;
    doc["multiplier"] = outcome.report.multiplier;
    out << doc.dump(2) << "\n";
    return;
  }
  out << "# cddsim bath-scaling calibration schema_version=" << kResultSchemaVersion
      << "\n";
  for (const auto& line : config_comment_lines(cfg)) out << "# " << line << "\n";
  out << "bath_count,one_minus_F,floor_clamped\n";
  for (const auto& p : outcome.report.points)
    out << p.bath_count << "," << fmt_double(p.one_minus_f) << ","
        << (p.floor_clamped ? 1 : 0) << "\n";
  out << "# fit: log10(1-F) = " << fmt_double(outcome.report.intercept) << " + "
      << fmt_double(outcome.report.slope) << " * N_n\n";
  out << "# multiplier = " << fmt_double(outcome.report.multiplier) << "\n";
}

}  // namespace cddsim
