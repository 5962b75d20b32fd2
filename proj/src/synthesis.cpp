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

#include "qcp/synthesis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/SparseCore>

namespace qcp {

namespace {

int count_kind(const GateSequence& seq, GateKind kind) {
  int count = 0;
  for (const auto& g : seq.gates) {
    if (g.kind == kind) ++count;
  }
  return count;
}

constexpr int kMaxDenseQubits = 8;

}  // namespace

int GateSequence::swap_count() const { return count_kind(*this, GateKind::ConditionalSwap); }
int GateSequence::phase_count() const { return count_kind(*this, GateKind::ControlledPhase); }
int GateSequence::shift_count() const { return count_kind(*this, GateKind::LevelShift); }

Register qutrit_register(int n) { return make_register(std::vector<int>(n, 3)); }

GateSequence build_sequence(int n, double phi) {
  if (n < 3) {
    throw std::invalid_argument("build_sequence: the construction requires n >= 3, got " +
                                std::to_string(n));
  }
  GateSequence seq;
  seq.n = n;
  seq.phi = phi;
  seq.gates.reserve(2 * n - 1);
  seq.gates.push_back(level_shift_gate(0, ShiftDirection::OneToA));
  for (int i = 0; i + 2 < n; ++i) {
    seq.gates.push_back(conditional_swap_gate(i, i + 1));
  }
  seq.gates.push_back(controlled_phase_gate(n - 2, n - 1, phi));
  for (int i = n - 3; i >= 0; --i) {
    seq.gates.push_back(conditional_swap_gate(i + 1, i));
  }
  seq.gates.push_back(level_shift_gate(0, ShiftDirection::AToOne));
  return seq;
}

PureState apply_sequence(const PureState& state, const GateSequence& seq) {
  PureState out = state;
  for (const auto& gate : seq.gates) {
    out = apply_local_operator(out, gate.matrix, gate.sites);
  }
  return out;
}

std::vector<PureState> apply_sequence_trace(const PureState& state, const GateSequence& seq) {
  std::vector<PureState> trace;
  trace.reserve(seq.gates.size());
  PureState current = state;
  for (const auto& gate : seq.gates) {
    current = apply_local_operator(current, gate.matrix, gate.sites);
    trace.push_back(current);
  }
  return trace;
}

namespace {

// Builds the full-space matrix of one gate by direct index mapping. This is
// deliberately a different embedding path from apply_local_operator so the
// two can check each other.
Eigen::SparseMatrix<Complex> embedded_gate(const GateSpec& gate, const Register& reg) {
  std::int64_t sub_dim = 1;
  for (int s : gate.sites) sub_dim *= reg.dims[s];
  if (gate.matrix.rows() != sub_dim) {
    throw std::invalid_argument("embedded_gate: gate does not fit the register sites");
  }

  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<size_t>(reg.total_dim) * 2);
  for (std::int64_t col = 0; col < reg.total_dim; ++col) {
    BasisLabel label = labels_of(reg, col);
    std::int64_t sub_col = 0;
    for (int s : gate.sites) sub_col = sub_col * reg.dims[s] + label[s];
    for (std::int64_t sub_row = 0; sub_row < sub_dim; ++sub_row) {
      const Complex v = gate.matrix(sub_row, sub_col);
      if (v == Complex(0.0, 0.0)) continue;
      BasisLabel out_label = label;
      std::int64_t rem = sub_row;
      for (int i = static_cast<int>(gate.sites.size()) - 1; i >= 0; --i) {
        const int s = gate.sites[i];
        out_label[s] = static_cast<int>(rem % reg.dims[s]);
        rem /= reg.dims[s];
      }
      entries.emplace_back(index_of(reg, out_label), col, v);
    }
  }
  Eigen::SparseMatrix<Complex> m(reg.total_dim, reg.total_dim);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

}  // namespace

Matrix composed_unitary(const GateSequence& seq) {
  if (seq.n > kMaxDenseQubits) {
    throw std::length_error("composed_unitary: dense product limited to n <= 8");
  }
  const Register reg = qutrit_register(seq.n);
  Matrix u = Matrix::Identity(reg.total_dim, reg.total_dim);
  for (const auto& gate : seq.gates) {
    u = embedded_gate(gate, reg) * u;
  }
  return u;
}

VerificationReport verify_against_target(int n, double phi, double tol) {
  if (tol <= 0) {
    throw std::invalid_argument("verify_against_target: tolerance must be positive");
  }
  const GateSequence seq = build_sequence(n, phi);
  const Matrix u = composed_unitary(seq);
  const Register reg = qutrit_register(n);

  // Computational labels have every digit in {0, 1}; bit i of the subspace
  // index is the level of site i, so |1...1> is the last label.
  const std::int64_t comp_dim = std::int64_t(1) << n;
  std::vector<std::int64_t> comp_index(comp_dim);
  std::vector<char> is_comp(reg.total_dim, 0);
  for (std::int64_t x = 0; x < comp_dim; ++x) {
    BasisLabel label(n);
    for (int site = 0; site < n; ++site) {
      label[site] = static_cast<int>((x >> (n - 1 - site)) & 1);
    }
    comp_index[x] = index_of(reg, label);
    is_comp[comp_index[x]] = 1;
  }

  VerificationReport report;
  report.n = n;
  report.phi = phi;
  report.swap_count = seq.swap_count();
  report.phase_count = seq.phase_count();
  report.shift_count = seq.shift_count();

  const Complex target_phase = std::polar(1.0, phi);
  for (std::int64_t col = 0; col < comp_dim; ++col) {
    for (std::int64_t row = 0; row < comp_dim; ++row) {
      Complex expected(0.0, 0.0);
      if (row == col) {
        expected = (col == comp_dim - 1) ? target_phase : Complex(1.0, 0.0);
      }
      const double err = std::abs(u(comp_index[row], comp_index[col]) - expected);
      report.max_elementwise_error = std::max(report.max_elementwise_error, err);
    }
  }
  for (std::int64_t col = 0; col < comp_dim; ++col) {
    for (std::int64_t row = 0; row < reg.total_dim; ++row) {
      if (is_comp[row]) continue;
      report.ancilla_leakage =
          std::max(report.ancilla_leakage, std::abs(u(row, comp_index[col])));
    }
  }
  report.computational_subspace_ok =
      report.max_elementwise_error <= tol && report.ancilla_leakage <= tol;
  return report;
}

std::vector<PureState> worked_example_trace(const std::array<Complex, 8>& alpha, double phi) {
  const Register reg = qutrit_register(3);
  Vector amps = Vector::Zero(reg.total_dim);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int z = 0; z < 2; ++z) {
        amps(index_of(reg, {x, y, z})) = alpha[4 * x + 2 * y + z];
      }
    }
  }
  if (std::abs(amps.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("worked_example_trace: coefficients are not normalized");
  }
  return apply_sequence_trace(PureState{reg, std::move(amps)}, build_sequence(3, phi));
}

}  // namespace qcp
