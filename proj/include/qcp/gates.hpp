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

#include "qcp/register.hpp"

namespace qcp {

enum class GateKind { LevelShift, ConditionalSwap, ControlledPhase, QutritPhase };
enum class ShiftDirection { OneToA, AToOne };

/**
 * A named unitary acting on a listed subset of qutrit sites, with its
 * explicit dense matrix. Two-site matrices are indexed with the first
 * listed site as the most significant digit.
 */
struct GateSpec {
  GateKind kind;
  std::vector<int> sites;
  double phase = 0.0;  // ControlledPhase / QutritPhase angle
  Matrix matrix;
};

// |1> <-> |a| permutation fixing |0>. Both directions are the same
// self-inverse matrix; the direction names the use in the sequence.
GateSpec level_shift_gate(int site, ShiftDirection direction);

/**
 * Two-qutrit conditional swap on sites (j, k):
 *   |a_j 1_k> -> |1_j a_k>,   |1_j a_k> -> -|a_j 1_k>,
 * identity on the remaining seven two-site basis states. The forward
 * direction named by the subscript order carries coefficient +1.
 */
GateSpec conditional_swap_gate(int j, int k);

// Diagonal unitary multiplying only the |a_j 1_k> amplitude by e^{i phi}.
GateSpec controlled_phase_gate(int j, int k, double phi);

// Diagonal 3x3 unitary multiplying the named level's amplitude by e^{i theta}.
GateSpec qutrit_phase_gate(int site, int level, double theta);

const Matrix& gate_matrix(const GateSpec& gate);

}  // namespace qcp
