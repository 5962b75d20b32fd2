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

#include "qcp/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qcp/gates.hpp"

namespace qcp {

namespace {

constexpr double kPi = std::numbers::pi;

Register level_register(const DriveParams& p, HamiltonianLevel level) {
  switch (level) {
    case HamiltonianLevel::Full8:
      return full_register(p);
    case HamiltonianLevel::Effective9:
      return effective_register(p);
    case HamiltonianLevel::Reduced12:
      return pair_register();
  }
  throw std::logic_error("level_register: unknown level");
}

// Places a two-qutrit pair state onto the level's register: driven-pair
// digits carry the pair labels, spectators sit in |0>, the cavity in vacuum.
PureState lift_pair_state(const PureState& pair, const DriveParams& p, HamiltonianLevel level) {
  if (level == HamiltonianLevel::Reduced12) return pair;
  const Register reg = level_register(p, level);
  Vector amps = Vector::Zero(reg.total_dim);
  for (int lj = 0; lj < 3; ++lj) {
    for (int lk = 0; lk < 3; ++lk) {
      const Complex a = pair.amps(lj * 3 + lk);
      if (a == Complex(0.0, 0.0)) continue;
      BasisLabel label(reg.site_count(), kLevel0);
      label[p.driven_first] = lj;
      label[p.driven_first + 1] = lk;
      amps(index_of(reg, label)) = a;
    }
  }
  return PureState{reg, std::move(amps)};
}

PureState pair_stress_state() {
  const Register pair = pair_register();
  Vector amps = Vector::Zero(9);
  const double w = 1.0 / std::sqrt(3.0);
  amps(index_of(pair, {kLevel1, kLevel1})) = w;
  amps(index_of(pair, {kLevelA, kLevel1})) = w;
  amps(index_of(pair, {kLevelA, kLevel0})) = w;
  return PureState{pair, std::move(amps)};
}

}  // namespace

double state_fidelity(const PureState& a, const PureState& b) {
  const Complex overlap = inner_product(a, b);
  return std::norm(overlap);
}

CostReport cost_report(Scheme scheme, int n, double xi) {
  if (n < 3) {
    throw std::invalid_argument("cost_report: n must be >= 3");
  }
  if (xi <= 0.0) {
    throw std::invalid_argument("cost_report: xi must be positive");
  }
  const double swap_time = kPi / (2.0 * xi);
  const double phase_time = kPi / xi;

  CostReport report;
  report.scheme = scheme;
  report.n = n;
  switch (scheme) {
    case Scheme::ThisPaper:
      report.two_site_gate_count = (2 * n - 4) + 1;
      report.single_site_gate_count = 2;
      report.total_coupling_time = (2 * n - 4) * swap_time + phase_time;
      break;
    case Scheme::Ref18Style:
      report.two_site_gate_count = 2 * n - 3;
      report.single_site_gate_count = (2 * n - 4) + 2 * (n - 2);
      report.total_coupling_time = (2 * n - 3) * phase_time;
      break;
    case Scheme::Ref15Style:
      if (n != 3) {
        throw std::invalid_argument("cost_report: Ref15Style is defined only for n = 3");
      }
      report.two_site_gate_count = 3;
      report.single_site_gate_count = 0;
      report.total_coupling_time = phase_time + swap_time + 3.0 * swap_time;
      break;
  }
  return report;
}

PureState sweep_stress_state(const DriveParams& p, HamiltonianLevel level) {
  return lift_pair_state(pair_stress_state(), p, level);
}

PureState sweep_ideal_state(const DriveParams& p, HamiltonianLevel level, ScheduleKind kind) {
  PureState pair = pair_stress_state();
  if (kind == ScheduleKind::Swap) {
    pair = apply_local_operator(pair, conditional_swap_gate(0, 1).matrix, {0, 1});
  } else {
    pair = apply_local_operator(pair, controlled_phase_gate(0, 1, conditional_phase_of(p)).matrix,
                                {0, 1});
  }
  return lift_pair_state(pair, p, level);
}

double vacuum_population(const PureState& state) {
  int cavity = -1;
  for (int s = 0; s < state.reg.site_count(); ++s) {
    if (state.reg.roles[s] == SiteRole::Cavity) cavity = s;
  }
  if (cavity < 0) return 1.0;
  double population = 0.0;
  for (std::int64_t i = 0; i < state.reg.total_dim; ++i) {
    if ((i / state.reg.strides[cavity]) % state.reg.dims[cavity] == 0) {
      population += std::norm(state.amps(i));
    }
  }
  return population;
}

SweepResult detuning_scaling_sweep(const DriveParams& base, const std::vector<double>& scales,
                                   ScheduleKind kind, int jobs) {
  if (scales.empty()) {
    throw std::invalid_argument("detuning_scaling_sweep: scale list is empty");
  }
  for (size_t i = 0; i < scales.size(); ++i) {
    if (scales[i] < 1.0) {
      throw std::invalid_argument("detuning_scaling_sweep: scales must be >= 1");
    }
    if (i > 0 && scales[i] <= scales[i - 1]) {
      throw std::invalid_argument("detuning_scaling_sweep: scales must be increasing");
    }
  }

  SweepResult result;
  result.scales = scales;
  result.infidelities.assign(scales.size(), 0.0);

  auto run_point = [&](size_t i) {
    DriveParams p = base;
    p.delta1 *= scales[i];
    p.delta2 *= scales[i];
    PulseSchedule schedule;
    if (kind == ScheduleKind::Swap) {
      schedule = swap_pulse_schedule(p, HamiltonianLevel::Full8);
    } else {
      schedule = phase_pulse_schedule(p, HamiltonianLevel::Full8).first;
    }
    PureState state = sweep_stress_state(p, HamiltonianLevel::Full8);
    state = evolve(state, full_source(p), schedule.duration);
    state = apply_corrections(state, schedule);
    result.infidelities[i] =
        1.0 - state_fidelity(state, sweep_ideal_state(p, HamiltonianLevel::Full8, kind));
  };

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(scales.size())));
  if (workers == 1) {
    for (size_t i = 0; i < scales.size(); ++i) run_point(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (size_t i = w; i < scales.size(); i += workers) run_point(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  if (scales.size() >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto count = static_cast<double>(scales.size());
    for (size_t i = 0; i < scales.size(); ++i) {
      const double x = std::log(scales[i]);
      const double y = std::log(std::max(result.infidelities[i], 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    result.fitted_order = -slope;
  }
  return result;
}

}  // namespace qcp
