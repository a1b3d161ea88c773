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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cddsim/config.hpp"
#include "cddsim/errors.hpp"
#include "cddsim/run.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitSimulationError = 3;
constexpr int kExitBudgetExceeded = 4;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
  std::string out;
  std::string format;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Config file (key = value sections)");
  cmd->add_option("--set", args.overrides,
                  "Override a config key, e.g. --set gate=pi8 (repeatable)");
  cmd->add_option("--out", args.out, "Output path (default: stdout)");
  cmd->add_option("--format", args.format, "Output format: csv or json");
}

cddsim::RunConfig load_config(const CommonArgs& args) {
  std::string text;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in)
      throw cddsim::ValidationError("cannot open config file '" + args.config_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  for (const auto& kv : args.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw cddsim::ValidationError("--set expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    text += "\n[" + cddsim::section_of_key(key) + "]\n" + key + " = " + value + "\n";
  }
  if (!args.out.empty())
    text += "\n[output]\nout = " + args.out + "\n";
  if (!args.format.empty())
    text += "\n[output]\nformat = " + args.format + "\n";
  return cddsim::parse_config(text);
}

// Everything deterministic goes to the artifact; timings go to stderr.
void emit_records(const cddsim::RunConfig& cfg,
                  const std::vector<cddsim::FidelityRecord>& records) {
  double total_wall = 0;
  for (const auto& r : records) total_wall += r.wall_time_s;
  std::cerr << "cddsim: " << records.size() << " records, " << total_wall
            << " s simulation time\n";
  const auto comment = cddsim::config_comment_lines(cfg);
  if (cfg.out.empty()) {
    if (cfg.format == "json")
      cddsim::write_json(std::cout, records, comment);
    else
      cddsim::write_csv(std::cout, records, comment);
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw cddsim::Error("cannot open output file '" + cfg.out + "'");
  if (cfg.format == "json")
    cddsim::write_json(out, records, comment);
  else
    cddsim::write_csv(out, records, comment);
}

template <typename WriteFn>
void emit_with(const cddsim::RunConfig& cfg, WriteFn&& write) {
  if (cfg.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw cddsim::Error("cannot open output file '" + cfg.out + "'");
  write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse-level simulator of concatenated dynamical decoupling for "
               "encoded exchange gates against a spin bath"};
  app.require_subcommand(1);

  CommonArgs simulate_args, sweep_args, contour_args, turning_args, calib_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Fidelity vs concatenation level, with free-evolution baselines");
  add_common(simulate, simulate_args);
  CLI::App* sweep =
      app.add_subcommand("sweep", "(J, beta) grid of fidelity records");
  add_common(sweep, sweep_args);
  CLI::App* contour = app.add_subcommand(
      "contour", "log10(1-F) grid over (J tau0, beta tau0) at a fixed level");
  add_common(contour, contour_args);
  CLI::App* turning = app.add_subcommand(
      "turning-point", "Maximum level before fidelity decreases, per grid cell");
  add_common(turning, turning_args);
  CLI::App* calibrate = app.add_subcommand(
      "calibrate-bath", "Fit 1-F vs bath size and report a J multiplier");
  add_common(calibrate, calib_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const auto cfg = load_config(simulate_args);
      emit_records(cfg, cddsim::run_single(cfg));
    } else if (sweep->parsed()) {
      const auto cfg = load_config(sweep_args);
      emit_records(cfg, cddsim::run_sweep(cfg));
    } else if (contour->parsed()) {
      const auto cfg = load_config(contour_args);
      const auto table = cddsim::run_sweep(cfg);
      const int level = cfg.level < 0 ? cfg.n_max : cfg.level;
      const auto grid = cddsim::contour_export(table, cfg, level);
      emit_with(cfg, [&](std::ostream& out) {
        cddsim::write_contour(out, grid, cfg, cfg.format);
      });
    } else if (turning->parsed()) {
      const auto cfg = load_config(turning_args);
      const auto table = cddsim::run_sweep(cfg);
      const auto grid = cddsim::turning_point_map(table, cfg);
      emit_with(cfg, [&](std::ostream& out) {
        cddsim::write_turning_map(out, grid, cfg, cfg.format);
      });
    } else if (calibrate->parsed()) {
      const auto cfg = load_config(calib_args);
      const auto outcome = cddsim::run_calibration(cfg);
      emit_with(cfg, [&](std::ostream& out) {
        cddsim::write_calibration(out, outcome, cfg, cfg.format);
      });
    }
  } catch (const cddsim::BudgetExceededError& e) {
    std::cerr << "cddsim: " << e.what() << "\n";
    return kExitBudgetExceeded;
  } catch (const cddsim::ParseError& e) {
    std::cerr << "cddsim: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const cddsim::ValidationError& e) {
    std::cerr << "cddsim: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const cddsim::SequenceFileInvalidError& e) {
    std::cerr << "cddsim: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "cddsim: " << e.what() << "\n";
    return kExitSimulationError;
  }
  return kExitOk;
}
