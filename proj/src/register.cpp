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

#include "qcp/register.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qcp {

Register make_register(std::vector<int> dims, std::vector<SiteRole> roles) {
  if (dims.empty()) {
    throw std::invalid_argument("make_register: need at least one site");
  }
  for (int d : dims) {
    if (d < 2) {
      throw std::invalid_argument("make_register: every site dimension must be >= 2, got " +
                                  std::to_string(d));
    }
  }
  if (roles.empty()) {
    roles.assign(dims.size(), SiteRole::Atom);
  } else if (roles.size() != dims.size()) {
    throw std::invalid_argument("make_register: roles length must match dims length");
  }

  Register reg;
  reg.dims = std::move(dims);
  reg.roles = std::move(roles);
  reg.strides.assign(reg.dims.size(), 1);
  for (int i = static_cast<int>(reg.dims.size()) - 2; i >= 0; --i) {
    reg.strides[i] = reg.strides[i + 1] * reg.dims[i + 1];
  }
  reg.total_dim = reg.strides[0] * reg.dims[0];
  return reg;
}

std::int64_t index_of(const Register& reg, const BasisLabel& label) {
  if (static_cast<int>(label.size()) != reg.site_count()) {
    throw std::out_of_range("index_of: label length does not match site count");
  }
  std::int64_t index = 0;
  for (int i = 0; i < reg.site_count(); ++i) {
    if (label[i] < 0 || label[i] >= reg.dims[i]) {
      throw std::out_of_range("index_of: level " + std::to_string(label[i]) +
                              " out of range for site " + std::to_string(i));
    }
    index += label[i] * reg.strides[i];
  }
  return index;
}

BasisLabel labels_of(const Register& reg, std::int64_t index) {
  if (index < 0 || index >= reg.total_dim) {
    throw std::out_of_range("labels_of: index out of range");
  }
  BasisLabel label(reg.site_count());
  for (int i = 0; i < reg.site_count(); ++i) {
    label[i] = static_cast<int>(index / reg.strides[i]);
    index %= reg.strides[i];
  }
  return label;
}

PureState basis_state(const Register& reg, const BasisLabel& label) {
  PureState state;
  state.reg = reg;
  state.amps = Vector::Zero(reg.total_dim);
  state.amps(index_of(reg, label)) = Complex(1.0, 0.0);
  return state;
}

PureState make_state(const Register& reg, Vector amps) {
  if (amps.size() != reg.total_dim) {
    throw std::invalid_argument("make_state: amplitude length does not match register dimension");
  }
  const double n = amps.norm();
  if (std::abs(n - 1.0) > 1e-9) {
    throw std::invalid_argument("make_state: amplitudes are not normalized (norm = " +
                                std::to_string(n) + ")");
  }
  return PureState{reg, std::move(amps)};
}

namespace {

// Shared validation + precomputation for local-operator embedding: returns
// the sub-space offsets (global index contribution of each sub-index) and
// the bases of every "rest" configuration.
struct EmbeddingPlan {
  std::vector<std::int64_t> offsets;     // size = sub dimension
  std::vector<std::int64_t> rest_bases;  // size = total / sub dimension
};

EmbeddingPlan plan_embedding(const Register& reg, const Matrix& m,
                             const std::vector<int>& sites) {
  if (sites.empty()) {
    throw std::invalid_argument("apply_local_operator: empty site list");
  }
  std::int64_t sub_dim = 1;
  for (size_t i = 0; i < sites.size(); ++i) {
    const int s = sites[i];
    if (s < 0 || s >= reg.site_count()) {
      throw std::invalid_argument("apply_local_operator: site index out of range");
    }
    for (size_t j = i + 1; j < sites.size(); ++j) {
      if (sites[j] == s) {
        throw std::invalid_argument("apply_local_operator: duplicate site in list");
      }
    }
    sub_dim *= reg.dims[s];
  }
  if (m.rows() != m.cols() || m.rows() != sub_dim) {
    throw std::invalid_argument("apply_local_operator: matrix dimension " +
                                std::to_string(m.rows()) + " does not match site product " +
                                std::to_string(sub_dim));
  }

  EmbeddingPlan plan;
  plan.offsets.resize(sub_dim);
  for (std::int64_t sub = 0; sub < sub_dim; ++sub) {
    std::int64_t rem = sub;
    std::int64_t offset = 0;
    for (int i = static_cast<int>(sites.size()) - 1; i >= 0; --i) {
      const int s = sites[i];
      offset += (rem % reg.dims[s]) * reg.strides[s];
      rem /= reg.dims[s];
    }
    plan.offsets[sub] = offset;
  }

  std::vector<int> rest_sites;
  for (int i = 0; i < reg.site_count(); ++i) {
    if (std::find(sites.begin(), sites.end(), i) == sites.end()) {
      rest_sites.push_back(i);
    }
  }
  plan.rest_bases.reserve(reg.total_dim / sub_dim);
  std::vector<int> digits(rest_sites.size(), 0);
  while (true) {
    std::int64_t base = 0;
    for (size_t i = 0; i < rest_sites.size(); ++i) {
      base += digits[i] * reg.strides[rest_sites[i]];
    }
    plan.rest_bases.push_back(base);
    int pos = static_cast<int>(rest_sites.size()) - 1;
    while (pos >= 0 && ++digits[pos] == reg.dims[rest_sites[pos]]) {
      digits[pos--] = 0;
    }
    if (pos < 0) break;
  }
  return plan;
}

}  // namespace

void apply_local_operator_to_columns(const Register& reg, const Matrix& m,
                                     const std::vector<int>& sites, Matrix& columns) {
  if (columns.rows() != reg.total_dim) {
    throw std::invalid_argument("apply_local_operator: column height does not match register");
  }
  const EmbeddingPlan plan = plan_embedding(reg, m, sites);
  const auto sub_dim = static_cast<std::int64_t>(plan.offsets.size());
  Matrix gathered(sub_dim, columns.cols());
  for (std::int64_t base : plan.rest_bases) {
    for (std::int64_t sub = 0; sub < sub_dim; ++sub) {
      gathered.row(sub) = columns.row(base + plan.offsets[sub]);
    }
    Matrix transformed = m * gathered;
    for (std::int64_t sub = 0; sub < sub_dim; ++sub) {
      columns.row(base + plan.offsets[sub]) = transformed.row(sub);
    }
  }
}

PureState apply_local_operator(const PureState& state, const Matrix& m,
                               const std::vector<int>& sites) {
  PureState out = state;
  Matrix col = out.amps;
  apply_local_operator_to_columns(out.reg, m, sites, col);
  out.amps = col.col(0);
  return out;
}

PureState apply_level_phase(const PureState& state, int site, int level, double theta) {
  if (site < 0 || site >= state.reg.site_count()) {
    throw std::invalid_argument("apply_level_phase: site out of range");
  }
  if (level < 0 || level >= state.reg.dims[site]) {
    throw std::out_of_range("apply_level_phase: level out of range for site");
  }
  const Complex phase = std::polar(1.0, theta);
  PureState out = state;
  const std::int64_t stride = state.reg.strides[site];
  const std::int64_t dim = state.reg.dims[site];
  for (std::int64_t i = 0; i < state.reg.total_dim; ++i) {
    if ((i / stride) % dim == level) {
      out.amps(i) *= phase;
    }
  }
  return out;
}

Complex inner_product(const PureState& a, const PureState& b) {
  if (!a.reg.same_layout(b.reg)) {
    throw std::invalid_argument("inner_product: states live on different registers");
  }
  return (a.amps.adjoint() * b.amps)(0, 0);
}

}  // namespace qcp
