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

#include "qcp/physics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace qcp {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kImag(0.0, 1.0);

int photon_site(const Register& reg) { return reg.site_count() - 1; }

int digit_at(const Register& reg, std::int64_t index, int site) {
  return static_cast<int>((index / reg.strides[site]) % reg.dims[site]);
}

void check_register_shape(const DriveParams& p, const Register& reg, int atom_dim,
                          const char* who) {
  if (reg.site_count() != p.n_atoms + 1) {
    throw std::invalid_argument(std::string(who) + ": register must have n_atoms + 1 sites");
  }
  for (int s = 0; s < p.n_atoms; ++s) {
    if (reg.dims[s] != atom_dim || reg.roles[s] != SiteRole::Atom) {
      throw std::invalid_argument(std::string(who) + ": atom sites must have dimension " +
                                  std::to_string(atom_dim));
    }
  }
  if (reg.roles.back() != SiteRole::Cavity || reg.dims.back() != p.fock_cutoff + 1) {
    throw std::invalid_argument(std::string(who) +
                                ": last site must be the cavity with dim fock_cutoff + 1");
  }
}

}  // namespace

void validate(const DriveParams& p) {
  if (p.omega_j < 0.0 || p.omega_j1 < 0.0) {
    throw std::invalid_argument("DriveParams: Rabi frequencies must be non-negative");
  }
  if (p.g <= 0.0) {
    throw std::invalid_argument("DriveParams: atom-cavity coupling g must be positive");
  }
  if (p.delta1 == 0.0 || p.delta2 == 0.0 || p.delta2 - p.delta1 == 0.0) {
    throw std::invalid_argument(
        "DriveParams: Delta1, Delta2 and delta = Delta2 - Delta1 must all be nonzero");
  }
  if (p.n_atoms < 2) {
    throw std::invalid_argument("DriveParams: need at least two atoms");
  }
  if (p.driven_first < 0 || p.driven_first + 1 >= p.n_atoms) {
    throw std::invalid_argument("DriveParams: driven pair out of range");
  }
  if (p.fock_cutoff < 1) {
    throw std::invalid_argument("DriveParams: fock_cutoff must be >= 1");
  }
}

std::vector<std::string> regime_warnings(const DriveParams& p) {
  std::vector<std::string> warnings;
  const double ratio_floor = 10.0;
  auto check = [&](double large, double small, const std::string& what) {
    if (small > 0.0 && std::abs(large) / small < ratio_floor) {
      warnings.push_back("dispersive-regime ratio " + what + " = " +
                         std::to_string(std::abs(large) / small) + " is below 10");
    }
  };
  check(p.delta1, p.omega_j, "|Delta1|/Omega_j");
  check(p.delta1, p.omega_j1, "|Delta1|/Omega_j1");
  check(p.delta1, p.g, "|Delta1|/g");
  check(p.delta2, p.omega_j, "|Delta2|/Omega_j");
  check(p.delta2, p.omega_j1, "|Delta2|/Omega_j1");
  check(p.delta2, p.g, "|Delta2|/g");
  if (p.delta1 != 0.0 && p.delta2 != 0.0 && p.delta2 - p.delta1 != 0.0) {
    const DerivedParams d = derive_params(p);
    check(d.delta, std::abs(d.lambda_j), "|delta|/lambda_j");
    check(d.delta, std::abs(d.lambda_j1), "|delta|/lambda_j1");
    check(d.delta, p.omega_j * p.omega_j / std::abs(p.delta1), "|delta|/(Omega_j^2/Delta1)");
    check(d.delta, p.omega_j1 * p.omega_j1 / std::abs(p.delta1), "|delta|/(Omega_j1^2/Delta1)");
    check(d.delta, p.g * p.g / std::abs(p.delta2), "|delta|/(g^2/Delta2)");
  }
  return warnings;
}

DerivedParams derive_params(const DriveParams& p) {
  if (p.delta1 == 0.0 || p.delta2 == 0.0) {
    throw std::invalid_argument("derive_params: singular detuning (Delta1, Delta2 must be nonzero)");
  }
  DerivedParams d;
  d.delta = p.delta2 - p.delta1;
  if (d.delta == 0.0) {
    throw std::invalid_argument("derive_params: singular detuning (delta = Delta2 - Delta1 = 0)");
  }
  const double inv_sum = 1.0 / p.delta1 + 1.0 / p.delta2;
  d.lambda_j = 0.5 * p.omega_j * p.g * inv_sum;
  d.lambda_j1 = 0.5 * p.omega_j1 * p.g * inv_sum;
  d.xi = d.lambda_j * d.lambda_j1 / d.delta;
  d.phase_diff = p.phase_j - p.phase_j1;
  d.mu_j = p.omega_j * p.omega_j / p.delta1 - d.lambda_j * d.lambda_j / d.delta;
  d.mu_j1 = p.omega_j1 * p.omega_j1 / p.delta1 - d.lambda_j1 * d.lambda_j1 / d.delta;
  d.mu = 0.5 * (d.mu_j + d.mu_j1);
  d.epsilon = d.mu_j1 - d.mu_j;
  d.eta = std::sqrt(d.xi * d.xi + 0.25 * d.epsilon * d.epsilon);
  return d;
}

Register full_register(const DriveParams& p) {
  std::vector<int> dims(p.n_atoms, 4);
  std::vector<SiteRole> roles(p.n_atoms, SiteRole::Atom);
  dims.push_back(p.fock_cutoff + 1);
  roles.push_back(SiteRole::Cavity);
  return make_register(std::move(dims), std::move(roles));
}

Register effective_register(const DriveParams& p) {
  std::vector<int> dims(p.n_atoms, 3);
  std::vector<SiteRole> roles(p.n_atoms, SiteRole::Atom);
  dims.push_back(p.fock_cutoff + 1);
  roles.push_back(SiteRole::Cavity);
  return make_register(std::move(dims), std::move(roles));
}

Register pair_register() { return make_register({3, 3}); }

Matrix full_hamiltonian(double t, const DriveParams& p, const Register& reg) {
  check_register_shape(p, reg, 4, "full_hamiltonian");
  const int cavity = photon_site(reg);
  Matrix raw = Matrix::Zero(reg.total_dim, reg.total_dim);

  const Complex drive_phase = std::exp(kImag * p.delta1 * t);
  const Complex cavity_phase = std::exp(kImag * p.delta2 * t);
  const int j = p.driven_first;
  const double omegas[2] = {p.omega_j, p.omega_j1};
  const double phases[2] = {p.phase_j, p.phase_j1};

  for (std::int64_t col = 0; col < reg.total_dim; ++col) {
    // classical drive |r_m><a_m| on the driven pair
    for (int k = 0; k < 2; ++k) {
      const int atom = j + k;
      if (digit_at(reg, col, atom) == kLevelA) {
        const std::int64_t row = col + (kLevelR - kLevelA) * reg.strides[atom];
        raw(row, col) += drive_phase * omegas[k] * std::exp(-kImag * phases[k]);
      }
    }
    // cavity a |r_m><1_m| over all atoms
    const int n = digit_at(reg, col, cavity);
    if (n >= 1) {
      for (int atom = 0; atom < p.n_atoms; ++atom) {
        if (digit_at(reg, col, atom) == kLevel1) {
          const std::int64_t row =
              col + (kLevelR - kLevel1) * reg.strides[atom] - reg.strides[cavity];
          raw(row, col) += cavity_phase * p.g * std::sqrt(static_cast<double>(n));
        }
      }
    }
  }
  return raw + raw.adjoint();
}

Matrix effective_hamiltonian_e(double t, const DriveParams& p, const Register& reg) {
  check_register_shape(p, reg, 3, "effective_hamiltonian_e");
  const int cavity = photon_site(reg);
  Matrix h = Matrix::Zero(reg.total_dim, reg.total_dim);
  Matrix raman = Matrix::Zero(reg.total_dim, reg.total_dim);

  const double delta = p.delta2 - p.delta1;
  const double inv_sum = 1.0 / p.delta1 + 1.0 / p.delta2;
  const int j = p.driven_first;
  const double omegas[2] = {p.omega_j, p.omega_j1};
  const double phases[2] = {p.phase_j, p.phase_j1};
  const double lambdas[2] = {0.5 * p.omega_j * p.g * inv_sum, 0.5 * p.omega_j1 * p.g * inv_sum};
  const Complex raman_phase = std::exp(kImag * delta * t);

  for (std::int64_t col = 0; col < reg.total_dim; ++col) {
    const int n = digit_at(reg, col, cavity);
    // Stark shifts on |a> of the driven pair
    for (int k = 0; k < 2; ++k) {
      if (digit_at(reg, col, j + k) == kLevelA) {
        h(col, col) += -omegas[k] * omegas[k] / p.delta1;
      }
    }
    // photon-dependent shift on |1> of every atom
    for (int atom = 0; atom < p.n_atoms; ++atom) {
      if (digit_at(reg, col, atom) == kLevel1) {
        h(col, col) += -(p.g * p.g / p.delta2) * n;
      }
    }
    // Raman term -lambda_m a S_m^+ e^{i phase_m} e^{i delta t}
    if (n >= 1) {
      for (int k = 0; k < 2; ++k) {
        const int atom = j + k;
        if (digit_at(reg, col, atom) == kLevel1) {
          const std::int64_t row =
              col + (kLevelA - kLevel1) * reg.strides[atom] - reg.strides[cavity];
          raman(row, col) += -lambdas[k] * std::sqrt(static_cast<double>(n)) *
                             std::exp(kImag * phases[k]) * raman_phase;
        }
      }
    }
  }
  return h + raman + raman.adjoint();
}

Matrix photon_resolved_hamiltonian(const DriveParams& p, const Register& reg) {
  check_register_shape(p, reg, 3, "photon_resolved_hamiltonian");
  const DerivedParams d = derive_params(p);
  const int cavity = photon_site(reg);
  const int j = p.driven_first;
  const double omegas[2] = {p.omega_j, p.omega_j1};
  const double lambdas[2] = {d.lambda_j, d.lambda_j1};

  Matrix h = Matrix::Zero(reg.total_dim, reg.total_dim);
  for (std::int64_t col = 0; col < reg.total_dim; ++col) {
    const int n = digit_at(reg, col, cavity);
    for (int k = 0; k < 2; ++k) {
      const int atom = j + k;
      const int level = digit_at(reg, col, atom);
      if (level == kLevelA) {
        h(col, col) += -omegas[k] * omegas[k] / p.delta1 +
                       (lambdas[k] * lambdas[k] / d.delta) * (n + 1);
      } else if (level == kLevel1) {
        h(col, col) += -(lambdas[k] * lambdas[k] / d.delta) * n;
      }
    }
    for (int atom = 0; atom < p.n_atoms; ++atom) {
      if (digit_at(reg, col, atom) == kLevel1) {
        h(col, col) += -(p.g * p.g / p.delta2) * n;
      }
    }
    // xi e^{i phi} S_j^+ S_{j+1}^-, photon number untouched
    if (digit_at(reg, col, j) == kLevel1 && digit_at(reg, col, j + 1) == kLevelA) {
      const std::int64_t row =
          col + (kLevelA - kLevel1) * reg.strides[j] + (kLevel1 - kLevelA) * reg.strides[j + 1];
      h(row, col) += d.xi * std::exp(kImag * d.phase_diff);
      h(col, row) += d.xi * std::exp(-kImag * d.phase_diff);
    }
  }
  return h;
}

Matrix reduced_hamiltonian(const DriveParams& p) {
  const DerivedParams d = derive_params(p);
  Matrix h = Matrix::Zero(9, 9);
  for (int lj = 0; lj < 3; ++lj) {
    for (int lk = 0; lk < 3; ++lk) {
      const int idx = lj * 3 + lk;
      if (lj == kLevelA) h(idx, idx) += -d.mu_j;
      if (lk == kLevelA) h(idx, idx) += -d.mu_j1;
    }
  }
  const int a1 = kLevelA * 3 + kLevel1;
  const int one_a = kLevel1 * 3 + kLevelA;
  h(a1, one_a) = d.xi * std::exp(kImag * d.phase_diff);
  h(one_a, a1) = d.xi * std::exp(-kImag * d.phase_diff);
  return h;
}

Complex second_order_coupling(const DriveParams& p, int n_photons) {
  if (n_photons < 0) {
    throw std::invalid_argument("second_order_coupling: photon number must be >= 0");
  }
  DriveParams q = p;
  q.fock_cutoff = std::max(p.fock_cutoff, n_photons + 1);
  const Register reg = effective_register(q);
  const Matrix h = effective_hamiltonian_e(0.0, q, reg);
  const double delta = p.delta2 - p.delta1;
  const int j = p.driven_first;

  auto label_for = [&](int level_j, int level_j1, int n) {
    BasisLabel label(reg.site_count(), kLevel0);
    label[j] = level_j;
    label[j + 1] = level_j1;
    label.back() = n;
    return index_of(reg, label);
  };

  const std::int64_t target = label_for(kLevelA, kLevel1, n_photons);
  const std::int64_t start = label_for(kLevel1, kLevelA, n_photons);
  const std::int64_t via_upper = label_for(kLevel1, kLevel1, n_photons + 1);

  Complex coupling = h(target, via_upper) * h(via_upper, start) / delta;
  if (n_photons >= 1) {
    const std::int64_t via_lower = label_for(kLevelA, kLevelA, n_photons - 1);
    coupling += h(target, via_lower) * h(via_lower, start) / (-delta);
  }
  return coupling;
}

// --- propagation ---------------------------------------------------------

HamiltonianSource HamiltonianSource::constant(Matrix h) {
  HamiltonianSource s;
  s.kind_ = Kind::Constant;
  s.dim_ = h.rows();
  s.h_ = std::move(h);
  return s;
}

HamiltonianSource HamiltonianSource::rotating_frame(Eigen::VectorXd h0_diag, Matrix v) {
  if (h0_diag.size() != v.rows() || v.rows() != v.cols()) {
    throw std::invalid_argument("rotating_frame: dimension mismatch");
  }
  HamiltonianSource s;
  s.kind_ = Kind::RotatingFrame;
  s.dim_ = v.rows();
  s.h0_ = std::move(h0_diag);
  s.h_ = std::move(v);
  return s;
}

HamiltonianSource HamiltonianSource::sampled(std::function<Matrix(double)> h, double max_step,
                                             std::optional<double> period) {
  if (max_step <= 0.0) {
    throw std::invalid_argument("sampled: max_step must be positive");
  }
  HamiltonianSource s;
  s.kind_ = Kind::Sampled;
  s.sampler_ = std::move(h);
  s.dim_ = s.sampler_(0.0).rows();
  s.max_step_ = max_step;
  s.period_ = period;
  return s;
}

double recommended_max_step(const DriveParams& p) {
  const double fastest =
      std::max({std::abs(p.delta1), std::abs(p.delta2), std::abs(p.delta2 - p.delta1)});
  return (2.0 * kPi / fastest) / 50.0;
}

namespace {

Eigen::VectorXd full_frame_diagonal(const DriveParams& p, const Register& reg) {
  const double delta = p.delta2 - p.delta1;
  Eigen::VectorXd h0(reg.total_dim);
  for (std::int64_t i = 0; i < reg.total_dim; ++i) {
    int excited = 0;
    for (int atom = 0; atom < p.n_atoms; ++atom) {
      if (digit_at(reg, i, atom) == kLevelR) ++excited;
    }
    h0(i) = p.delta1 * excited - delta * digit_at(reg, i, photon_site(reg));
  }
  return h0;
}

Eigen::VectorXd cavity_frame_diagonal(const DriveParams& p, const Register& reg) {
  const double delta = p.delta2 - p.delta1;
  Eigen::VectorXd h0(reg.total_dim);
  for (std::int64_t i = 0; i < reg.total_dim; ++i) {
    h0(i) = -delta * digit_at(reg, i, photon_site(reg));
  }
  return h0;
}

std::optional<double> common_period(const DriveParams& p) {
  const double delta = std::abs(p.delta2 - p.delta1);
  if (delta == 0.0) return std::nullopt;
  const double r1 = p.delta1 / (p.delta2 - p.delta1);
  const double r2 = p.delta2 / (p.delta2 - p.delta1);
  if (std::abs(r1 - std::round(r1)) < 1e-9 && std::abs(r2 - std::round(r2)) < 1e-9) {
    return 2.0 * kPi / delta;
  }
  return std::nullopt;
}

Vector eig_exp_apply(const Matrix& h, double dt, const Vector& v) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::ArrayXcd phases = (-kImag * dt * es.eigenvalues().array()).exp();
  return es.eigenvectors() * (phases * (es.eigenvectors().adjoint() * v).array()).matrix();
}

Matrix eig_exp_matrix(const Matrix& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::ArrayXcd phases = (-kImag * dt * es.eigenvalues().array()).exp();
  return es.eigenvectors() * phases.matrix().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix unitary_power(Matrix base, std::int64_t exponent) {
  Matrix result = Matrix::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (exponent & 1) result = base * result;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

// Midpoint-sampled piecewise-constant propagation over [t0, t0 + span].
Vector step_span(const HamiltonianSource& source, Vector psi, double t0, double span,
                 double step_limit) {
  const auto n = static_cast<std::int64_t>(std::ceil(span / step_limit));
  const double h = span / static_cast<double>(n);
  for (std::int64_t k = 0; k < n; ++k) {
    const double t_mid = t0 + (static_cast<double>(k) + 0.5) * h;
    psi = eig_exp_apply(source.sample(t_mid), h, psi);
  }
  return psi;
}

Vector sampled_propagate(const HamiltonianSource& source, const Vector& psi0, double duration,
                         double step_limit) {
  if (source.period() && duration > 2.0 * *source.period()) {
    const double period = *source.period();
    const auto steps = static_cast<std::int64_t>(std::ceil(period / step_limit));
    const double h = period / static_cast<double>(steps);
    Matrix u_period = Matrix::Identity(source.dim(), source.dim());
    for (std::int64_t k = 0; k < steps; ++k) {
      const double t_mid = (static_cast<double>(k) + 0.5) * h;
      u_period = eig_exp_matrix(source.sample(t_mid), h) * u_period;
    }
    const auto full = static_cast<std::int64_t>(std::floor(duration / period));
    const double remainder = duration - static_cast<double>(full) * period;
    Vector psi = unitary_power(u_period, full) * psi0;
    if (remainder > 0.0) {
      // H is period-periodic, so the remainder can start at phase zero.
      psi = step_span(source, std::move(psi), 0.0, remainder, h);
    }
    return psi;
  }
  return step_span(source, psi0, 0.0, duration, step_limit);
}

}  // namespace

HamiltonianSource full_source(const DriveParams& p) {
  validate(p);
  const Register reg = full_register(p);
  return HamiltonianSource::rotating_frame(full_frame_diagonal(p, reg),
                                           full_hamiltonian(0.0, p, reg));
}

HamiltonianSource effective_source(const DriveParams& p) {
  validate(p);
  const Register reg = effective_register(p);
  return HamiltonianSource::rotating_frame(cavity_frame_diagonal(p, reg),
                                           effective_hamiltonian_e(0.0, p, reg));
}

HamiltonianSource full_source_sampled(const DriveParams& p) {
  validate(p);
  const Register reg = full_register(p);
  return HamiltonianSource::sampled([p, reg](double t) { return full_hamiltonian(t, p, reg); },
                                    recommended_max_step(p), common_period(p));
}

HamiltonianSource effective_source_sampled(const DriveParams& p) {
  validate(p);
  const Register reg = effective_register(p);
  return HamiltonianSource::sampled(
      [p, reg](double t) { return effective_hamiltonian_e(t, p, reg); },
      recommended_max_step(p), 2.0 * kPi / std::abs(p.delta2 - p.delta1));
}

PureState evolve(const PureState& state, const HamiltonianSource& source, double duration,
                 const EvolveOptions& options) {
  if (duration < 0.0) {
    throw std::invalid_argument("evolve: duration must be >= 0");
  }
  if (state.amps.size() != source.dim()) {
    throw std::invalid_argument("evolve: state dimension does not match Hamiltonian");
  }
  PureState out = state;
  if (duration == 0.0) return out;

  switch (source.kind()) {
    case HamiltonianSource::Kind::Constant:
      out.amps = eig_exp_apply(source.matrix(), duration, out.amps);
      return out;
    case HamiltonianSource::Kind::RotatingFrame: {
      Matrix h = source.matrix();
      h.diagonal() += source.frame_diagonal().cast<Complex>();
      Vector psi = eig_exp_apply(h, duration, out.amps);
      const Eigen::ArrayXcd frame =
          (kImag * duration * source.frame_diagonal().array()).exp();
      out.amps = (frame * psi.array()).matrix();
      return out;
    }
    case HamiltonianSource::Kind::Sampled: {
      double step = source.max_step();
      Vector coarse = sampled_propagate(source, out.amps, duration, step);
      for (int refinement = 0; refinement <= options.max_refinements; ++refinement) {
        step *= 0.5;
        Vector fine = sampled_propagate(source, out.amps, duration, step);
        if ((fine - coarse).norm() < options.refine_tol) {
          out.amps = std::move(fine);
          return out;
        }
        coarse = std::move(fine);
      }
      throw IntegrationError(
          "evolve: piecewise-constant stepping did not converge within the refinement budget");
    }
  }
  throw std::logic_error("evolve: unknown source kind");
}

// --- schedules ------------------------------------------------------------

Eigen::Matrix3cd closed_form_evolution(const DerivedParams& d, double t) {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  const Complex common = std::exp(kImag * d.mu * t);
  m(2, 2) = std::exp(kImag * d.mu_j * t);
  if (d.eta == 0.0) {
    m(0, 0) = common;
    m(1, 1) = common;
    return m;
  }
  const double c = std::cos(d.eta * t);
  const double s = std::sin(d.eta * t);
  const double eps_ratio = 0.5 * d.epsilon / d.eta;
  const double xi_ratio = d.xi / d.eta;
  m(0, 0) = common * (c - kImag * eps_ratio * s);
  m(1, 0) = common * (-kImag * xi_ratio * std::exp(-kImag * d.phase_diff) * s);
  m(1, 1) = common * (c + kImag * eps_ratio * s);
  m(0, 1) = common * (-kImag * xi_ratio * std::exp(kImag * d.phase_diff) * s);
  return m;
}

PulseSchedule swap_pulse_schedule(const DriveParams& p, HamiltonianLevel level) {
  validate(p);
  const double scale = std::max({std::abs(p.omega_j), std::abs(p.omega_j1), 1.0});
  if (std::abs(p.omega_j - p.omega_j1) > 1e-12 * scale) {
    throw std::invalid_argument(
        "swap_pulse_schedule: asymmetric drive; the swap needs omega_j == omega_j1 so that "
        "mu_j == mu_j1");
  }
  const DerivedParams d = derive_params(p);
  if (d.xi == 0.0) {
    throw std::invalid_argument("swap_pulse_schedule: xi = 0, no Raman coupling");
  }
  PulseSchedule schedule;
  schedule.level = level;
  schedule.duration = kPi / (2.0 * std::abs(d.xi));
  const double theta = -d.mu * schedule.duration;
  schedule.post_corrections = {{p.driven_first, kLevelA, theta},
                               {p.driven_first + 1, kLevelA, theta}};
  return schedule;
}

std::pair<PulseSchedule, double> phase_pulse_schedule(const DriveParams& p,
                                                      HamiltonianLevel level) {
  validate(p);
  const DerivedParams d = derive_params(p);
  if (d.eta == 0.0) {
    throw std::invalid_argument("phase_pulse_schedule: eta = 0, schedule degenerate");
  }
  PulseSchedule schedule;
  schedule.level = level;
  schedule.duration = kPi / d.eta;
  schedule.post_corrections = {{p.driven_first, kLevelA, -d.mu_j * schedule.duration}};
  return {schedule, kPi * (1.0 + 0.5 * d.epsilon / d.eta)};
}

double conditional_phase_of(const DriveParams& p) {
  const DerivedParams d = derive_params(p);
  if (d.eta == 0.0) {
    throw std::invalid_argument("conditional_phase_of: eta = 0");
  }
  return kPi * (1.0 + 0.5 * d.epsilon / d.eta);
}

double solve_rabi_for_phase(double target_phi, const DriveParams& fixed) {
  if (!(target_phi > 0.0) || !(target_phi < 2.0 * kPi)) {
    throw std::domain_error(
        "solve_rabi_for_phase: conditional phase pi(1 + eps/2eta) lies strictly inside "
        "(0, 2 pi)");
  }
  auto mismatch = [&](double omega) {
    DriveParams q = fixed;
    q.omega_j1 = omega;
    return conditional_phase_of(q) - target_phi;
  };

  const int scan_points = 2048;
  const double lo = fixed.omega_j * 1e-4;
  const double hi = fixed.omega_j * 8.0;
  double prev_omega = lo;
  double prev_value = mismatch(lo);
  if (prev_value == 0.0) return lo;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  bool found = false;
  for (int i = 1; i <= scan_points; ++i) {
    const double omega = lo + (hi - lo) * static_cast<double>(i) / scan_points;
    const double value = mismatch(omega);
    if (value == 0.0) return omega;
    if ((prev_value < 0.0) != (value < 0.0)) {
      bracket_lo = prev_omega;
      bracket_hi = omega;
      found = true;
      break;
    }
    prev_omega = omega;
    prev_value = value;
  }
  if (!found) {
    throw std::domain_error("solve_rabi_for_phase: target phase unreachable in scanned bracket");
  }

  double f_lo = mismatch(bracket_lo);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (bracket_lo + bracket_hi);
    const double f_mid = mismatch(mid);
    if (std::abs(f_mid) <= 1e-10) return mid;
    if ((f_lo < 0.0) == (f_mid < 0.0)) {
      bracket_lo = mid;
      f_lo = f_mid;
    } else {
      bracket_hi = mid;
    }
  }
  throw std::domain_error("solve_rabi_for_phase: bisection failed to reach 1e-10 in phase");
}

PureState apply_corrections(const PureState& state, const PulseSchedule& schedule) {
  PureState out = state;
  for (const auto& c : schedule.post_corrections) {
    out = apply_level_phase(out, c.site, c.level, c.theta);
  }
  return out;
}

}  // namespace qcp
