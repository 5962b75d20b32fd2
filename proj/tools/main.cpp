// Copyright 2026 The qcp Authors
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

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qcp/cli.hpp"

namespace {

// Every flag funnels through apply_config_entry so flags and config files
// share one parser; flags are applied after the file and therefore win.
struct FlagCapture {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string config_path;

  void add(CLI::App* cmd, const std::string& flag, const std::string& key,
           const std::string& description) {
    cmd->add_option_function<std::string>(
        flag, [this, key](const std::string& value) { entries.emplace_back(key, value); },
        description);
  }

  void add_common(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key = value config file; flags override it");
    add(cmd, "--out", "out", "output path (default <command>_report.<format>)");
    add(cmd, "--format", "format", "csv or json");
    add(cmd, "--seed", "seed", "seed for randomized inputs");
    add(cmd, "--jobs", "jobs", "worker pool size for sweep points");
    add(cmd, "--tol", "tolerance", "numerical tolerance");
  }

  void add_drive(CLI::App* cmd) {
    add(cmd, "--omega-j", "omega_j", "Rabi frequency of the first driven atom");
    add(cmd, "--omega-j1", "omega_j1", "Rabi frequency of the second driven atom");
    add(cmd, "--phase-j", "phase_j", "laser phase on the first driven atom");
    add(cmd, "--phase-j1", "phase_j1", "laser phase on the second driven atom");
    add(cmd, "--g", "g", "atom-cavity coupling");
    add(cmd, "--delta1", "delta1", "classical-field detuning");
    add(cmd, "--delta2", "delta2", "cavity detuning");
    add(cmd, "--n-atoms", "n_atoms", "number of atoms in the cavity");
    add(cmd, "--driven-first", "driven_first", "index of the first driven atom");
    add(cmd, "--fock-cutoff", "fock_cutoff", "cavity Fock-space cutoff");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed-radix qutrit toolkit: controlled-phase synthesis and cavity-QED simulation"};
  app.require_subcommand(1);

  FlagCapture capture;

  CLI::App* verify = app.add_subcommand("verify", "check the gate sequence against the target");
  capture.add_common(verify);
  capture.add(verify, "--n", "n", "qubit count (3..8)");
  capture.add(verify, "--phi", "phi", "target controlled phase");

  CLI::App* trace = app.add_subcommand("trace", "three-qubit walkthrough amplitude tables");
  capture.add_common(trace);
  capture.add(trace, "--n", "n", "must be 3");
  capture.add(trace, "--phi", "phi", "target controlled phase");
  capture.add(trace, "--alpha", "alpha", "16 comma-separated reals (re,im per coefficient)");

  CLI::App* simulate = app.add_subcommand("simulate", "evolve one pulse schedule");
  capture.add_common(simulate);
  capture.add_drive(simulate);
  capture.add(simulate, "--schedule", "schedule", "swap or phase");
  capture.add(simulate, "--level", "level", "full8, effective9 or reduced12");

  CLI::App* sweep = app.add_subcommand("sweep", "detuning-scaling convergence sweep");
  capture.add_common(sweep);
  capture.add_drive(sweep);
  capture.add(sweep, "--schedule", "schedule", "swap or phase");
  capture.add(sweep, "--scales", "scales", "comma-separated detuning multipliers");

  CLI::App* cost = app.add_subcommand("cost", "gate-count and coupling-time tables");
  capture.add_common(cost);
  capture.add(cost, "--xi", "xi", "effective Raman coupling for the timing model");
  capture.add(cost, "--n-min", "cost_n_min", "smallest qubit count");
  capture.add(cost, "--n-max", "cost_n_max", "largest qubit count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : qcp::kExitUsage;
  }

  try {
    qcp::RunConfig cfg;
    if (app.got_subcommand(verify)) cfg.command = qcp::Command::Verify;
    else if (app.got_subcommand(trace)) cfg.command = qcp::Command::Trace;
    else if (app.got_subcommand(simulate)) cfg.command = qcp::Command::Simulate;
    else if (app.got_subcommand(sweep)) cfg.command = qcp::Command::Sweep;
    else if (app.got_subcommand(cost)) cfg.command = qcp::Command::Cost;

    if (!capture.config_path.empty()) {
      const qcp::Command from_subcommand = cfg.command;
      qcp::apply_config_file(cfg, capture.config_path);
      cfg.command = from_subcommand;
    }
    for (const auto& [key, value] : capture.entries) {
      qcp::apply_config_entry(cfg, key, value);
    }
    return qcp::run_command(cfg);
  } catch (const qcp::IntegrationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return qcp::kExitNumerical;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return qcp::kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return qcp::kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return qcp::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qcp::kExitUsage;
  }
}
