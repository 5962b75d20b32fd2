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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcp/analysis.hpp"
#include "qcp/physics.hpp"
#include "qcp/report.hpp"

namespace qcp {

enum class Command { Verify, Trace, Simulate, Sweep, Cost };
enum class OutputFormat { Csv, Json };

// Exit codes shared by every command.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/**
 * Fully resolved run configuration. Accepted both as flags and as a flat
 * key = value config file; flags override the file. Identical config plus
 * seed must reproduce byte-identical output files.
 */
struct RunConfig {
  Command command = Command::Verify;
  int n = 3;
  double phi = 3.141592653589793;
  double tolerance = 1e-12;
  DriveParams drive;
  HamiltonianLevel level = HamiltonianLevel::Reduced12;
  ScheduleKind schedule = ScheduleKind::Swap;
  std::vector<double> scales = {1.0, 2.0, 4.0};
  // 16 reals (re, im per coefficient); empty means draw from the seed.
  std::vector<double> trace_alpha;
  double cost_xi = 1.0;
  int cost_n_min = 3;
  int cost_n_max = 10;
  std::string out_path;
  OutputFormat format = OutputFormat::Json;
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Applies `key = value` assignments from a flat config file on top of `cfg`.
// Unknown keys and malformed lines are usage errors.
void apply_config_file(RunConfig& cfg, const std::string& path);

// One assignment, shared by the file parser and flag handling.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

// The fully expanded configuration embedded in every output for provenance.
KeyValues resolved_config(const RunConfig& cfg);

int run_verify(const RunConfig& cfg);
int run_trace(const RunConfig& cfg);
int run_simulate(const RunConfig& cfg);
int run_sweep(const RunConfig& cfg);
int run_cost(const RunConfig& cfg);

// Dispatches on cfg.command.
int run_command(const RunConfig& cfg);

// Deterministic uniform double in [0, 1) from a 64-bit generator state.
double uniform_from_bits(std::uint64_t bits);

}  // namespace qcp
