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
#include <vector>

#include "qcp/gates.hpp"
#include "qcp/register.hpp"

namespace qcp {

/**
 * The n-qubit controlled-phase construction as an ordered gate list:
 *   L_1, U_{1,2}, ..., U_{n-2,n-1}, V_{n-1,n}, U_{n-1,n-2}, ..., U_{2,1}, M_1
 * (2n-4 conditional swaps, one controlled phase, two level shifts).
 */
struct GateSequence {
  int n = 0;
  double phi = 0.0;
  std::vector<GateSpec> gates;

  int swap_count() const;
  int phase_count() const;
  int shift_count() const;
};

struct VerificationReport {
  int n = 0;
  double phi = 0.0;
  double max_elementwise_error = 0.0;
  double ancilla_leakage = 0.0;
  bool computational_subspace_ok = false;
  int swap_count = 0;
  int phase_count = 0;
  int shift_count = 0;

  bool passed() const { return computational_subspace_ok; }
};

// Builds the sequence for n >= 3 qubits; sites are 0-based (paper qubit m
// is site m-1).
GateSequence build_sequence(int n, double phi);

Register qutrit_register(int n);

PureState apply_sequence(const PureState& state, const GateSequence& seq);

// Like apply_sequence but records the state after every gate.
std::vector<PureState> apply_sequence_trace(const PureState& state, const GateSequence& seq);

/**
 * Brute-force oracle: the full 3^n x 3^n matrix product of the embedded
 * gate matrices in sequence order. Supported for n <= 8.
 */
Matrix composed_unitary(const GateSequence& seq);

/**
 * Compares composed_unitary restricted to the 2^n computational labels
 * against diag(1, ..., 1, e^{i phi}); the phase comparison is exact, with
 * no global-phase freedom. ancilla_leakage is the largest amplitude
 * reaching a label with a level-2 digit from any computational input.
 */
VerificationReport verify_against_target(int n, double phi, double tol);

/**
 * Runs the three-qubit walkthrough on explicit coefficients alpha_{xyz}
 * (x the most significant bit) and returns the five intermediate states,
 * one per gate. Coefficients must be normalized.
 */
std::vector<PureState> worked_example_trace(const std::array<Complex, 8>& alpha, double phi);

}  // namespace qcp
