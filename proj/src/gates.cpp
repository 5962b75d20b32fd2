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

#include "qcp/gates.hpp"

#include <stdexcept>

namespace qcp {

namespace {

// Two-site basis index with the first listed site most significant.
constexpr int pair_index(int level_j, int level_k) { return level_j * 3 + level_k; }

}  // namespace

GateSpec level_shift_gate(int site, ShiftDirection /*direction*/) {
  if (site < 0) {
    throw std::invalid_argument("level_shift_gate: negative site index");
  }
  Matrix m = Matrix::Zero(3, 3);
  m(kLevel0, kLevel0) = 1.0;
  m(kLevelA, kLevel1) = 1.0;
  m(kLevel1, kLevelA) = 1.0;
  return GateSpec{GateKind::LevelShift, {site}, 0.0, std::move(m)};
}

GateSpec conditional_swap_gate(int j, int k) {
  if (j == k) {
    throw std::invalid_argument("conditional_swap_gate: sites must differ");
  }
  if (j < 0 || k < 0) {
    throw std::invalid_argument("conditional_swap_gate: negative site index");
  }
  Matrix m = Matrix::Identity(9, 9);
  const int a1 = pair_index(kLevelA, kLevel1);
  const int one_a = pair_index(kLevel1, kLevelA);
  m(a1, a1) = 0.0;
  m(one_a, one_a) = 0.0;
  m(one_a, a1) = 1.0;   // |a_j 1_k> -> |1_j a_k>
  m(a1, one_a) = -1.0;  // |1_j a_k> -> -|a_j 1_k>
  return GateSpec{GateKind::ConditionalSwap, {j, k}, 0.0, std::move(m)};
}

GateSpec controlled_phase_gate(int j, int k, double phi) {
  if (j == k) {
    throw std::invalid_argument("controlled_phase_gate: sites must differ");
  }
  if (j < 0 || k < 0) {
    throw std::invalid_argument("controlled_phase_gate: negative site index");
  }
  Matrix m = Matrix::Identity(9, 9);
  const int a1 = pair_index(kLevelA, kLevel1);
  m(a1, a1) = std::polar(1.0, phi);
  return GateSpec{GateKind::ControlledPhase, {j, k}, phi, std::move(m)};
}

GateSpec qutrit_phase_gate(int site, int level, double theta) {
  if (site < 0) {
    throw std::invalid_argument("qutrit_phase_gate: negative site index");
  }
  if (level < 0 || level > 2) {
    throw std::out_of_range("qutrit_phase_gate: level must be in {0, 1, 2}");
  }
  Matrix m = Matrix::Identity(3, 3);
  m(level, level) = std::polar(1.0, theta);
  return GateSpec{GateKind::QutritPhase, {site}, theta, std::move(m)};
}

const Matrix& gate_matrix(const GateSpec& gate) { return gate.matrix; }

}  // namespace qcp
