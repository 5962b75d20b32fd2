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

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace qcp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Level encoding shared by every site type. Computational levels come first
// so the 2^n computational subspace sits on contiguous-digit labels; the
// excited level |r> exists only on four-level sites.
inline constexpr int kLevel0 = 0;
inline constexpr int kLevel1 = 1;
inline constexpr int kLevelA = 2;
inline constexpr int kLevelR = 3;

enum class SiteRole { Atom, Cavity };

/**
 * Mixed-radix Hilbert-space bookkeeping for an ordered list of sites.
 *
 * Index convention is row-major: site 0 is the most significant digit,
 * matching left-to-right ket notation |l0 l1 ... l_{k-1}>.
 */
struct Register {
  std::vector<int> dims;
  std::vector<SiteRole> roles;
  std::vector<std::int64_t> strides;  // strides[i] = prod(dims[j], j > i)
  std::int64_t total_dim = 0;

  int site_count() const { return static_cast<int>(dims.size()); }
  bool same_layout(const Register& other) const {
    return dims == other.dims && roles == other.roles;
  }
};

// One level per site, each entry in [0, dims[site]).
using BasisLabel = std::vector<int>;

Register make_register(std::vector<int> dims, std::vector<SiteRole> roles = {});

std::int64_t index_of(const Register& reg, const BasisLabel& label);
BasisLabel labels_of(const Register& reg, std::int64_t index);

/// Unit-norm amplitude vector over a Register.
struct PureState {
  Register reg;
  Vector amps;

  double norm() const { return amps.norm(); }
};

PureState basis_state(const Register& reg, const BasisLabel& label);

// Wraps an explicit amplitude vector; rejects length mismatches and vectors
// that are not unit norm within 1e-9.
PureState make_state(const Register& reg, Vector amps);

/**
 * Applies (M (x) I_rest) with M embedded on the listed sites in listed order
 * (first listed site is the most significant digit of M's index space).
 * M must be square of dimension prod(dims[site] for site in sites).
 */
PureState apply_local_operator(const PureState& state, const Matrix& m,
                               const std::vector<int>& sites);

// Same embedding applied to every column of a dense matrix, in place.
void apply_local_operator_to_columns(const Register& reg, const Matrix& m,
                                     const std::vector<int>& sites,
                                     Matrix& columns);

// Multiplies amplitudes whose digit at `site` equals `level` by e^{i theta}.
PureState apply_level_phase(const PureState& state, int site, int level,
                            double theta);

/// <a|b>, conjugate-linear in the first argument.
Complex inner_product(const PureState& a, const PureState& b);

}  // namespace qcp
