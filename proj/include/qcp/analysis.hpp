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

#include <vector>

#include "qcp/physics.hpp"
#include "qcp/register.hpp"

namespace qcp {

/// |<a|b>|^2.
double state_fidelity(const PureState& a, const PureState& b);

enum class Scheme { ThisPaper, Ref18Style, Ref15Style };

/**
 * Gate-count and coupling-time cost model. Durations: conditional swap
 * pi/(2 xi), two-site controlled phase pi/xi, single-site operations free.
 * Ref15Style is defined only for n = 3 (one phase gate plus two swaps, the
 * second swap three times as long as the first).
 */
struct CostReport {
  Scheme scheme = Scheme::ThisPaper;
  int n = 0;
  int two_site_gate_count = 0;
  int single_site_gate_count = 0;
  double total_coupling_time = 0.0;  // units of 1/xi
};

CostReport cost_report(Scheme scheme, int n, double xi);

enum class ScheduleKind { Swap, Phase };

/**
 * Detuning-convergence sweep: for each scale s, Delta1 and Delta2 are
 * multiplied by s, the schedule duration recomputed, the full interaction-
 * picture system evolved from the stress input (|11> + |a1> + |a0>)/sqrt(3)
 * on the driven pair, and the infidelity against the ideal gate action
 * recorded. fitted_order is the least-squares slope of -log(infidelity)
 * versus log(scale), i.e. positive when infidelity decreases.
 */
struct SweepResult {
  std::vector<double> scales;
  std::vector<double> infidelities;
  double fitted_order = 0.0;
};

SweepResult detuning_scaling_sweep(const DriveParams& base, const std::vector<double>& scales,
                                   ScheduleKind kind, int jobs = 1);

// The sweep's fixed test state and ideal output, lifted onto the register
// of the requested Hamiltonian level (exposed for the CLI and tests).
PureState sweep_stress_state(const DriveParams& p, HamiltonianLevel level);
PureState sweep_ideal_state(const DriveParams& p, HamiltonianLevel level, ScheduleKind kind);

// Population of the zero-photon sector; registers without a cavity site
// report 1.
double vacuum_population(const PureState& state);

}  // namespace qcp
