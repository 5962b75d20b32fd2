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

#include <doctest.h>

#include <numbers>

#include "qcp/analysis.hpp"
#include "qcp/gates.hpp"
#include "qcp/physics.hpp"
#include "test_helpers.hpp"

using namespace qcp;

namespace {

constexpr double kPi = std::numbers::pi;

DriveParams base_params() {
  DriveParams p;
  p.omega_j = 1.0;
  p.omega_j1 = 1.0;
  p.phase_j = 0.0;
  p.phase_j1 = kPi / 2.0;  // phase difference -pi/2: forward swap
  p.g = 1.0;
  p.delta1 = 100.0;
  p.delta2 = 110.0;
  p.n_atoms = 2;
  p.fock_cutoff = 3;
  return p;
}

double hermiticity_defect(const Matrix& h) { return testing::max_abs(h - h.adjoint()); }

PureState pair_basis(int lj, int lk) {
  return basis_state(pair_register(), {lj, lk});
}

}  // namespace

TEST_CASE("derive_params reproduces the defining formulas") {
  DriveParams p = base_params();
  const DerivedParams d = derive_params(p);

  // independent one-line calculator
  const double lambda_oracle = 0.5 * 1.0 * 1.0 * (1.0 / 100.0 + 1.0 / 110.0);
  CHECK(d.lambda_j == doctest::Approx(lambda_oracle).epsilon(1e-15));
  CHECK(d.lambda_j1 == doctest::Approx(lambda_oracle).epsilon(1e-15));
  CHECK(d.delta == doctest::Approx(10.0));
  CHECK(d.xi == doctest::Approx(lambda_oracle * lambda_oracle / 10.0).epsilon(1e-15));
  CHECK(d.mu_j ==
        doctest::Approx(0.01 - lambda_oracle * lambda_oracle / 10.0).epsilon(1e-15));

  // magnitudes quoted to five digits
  CHECK(d.lambda_j == doctest::Approx(9.5455e-3).epsilon(1e-4));
  CHECK(d.xi == doctest::Approx(9.1116e-6).epsilon(1e-4));
  CHECK(d.mu_j == doctest::Approx(9.9909e-3).epsilon(1e-4));

  CHECK(d.phase_diff == doctest::Approx(-kPi / 2.0));

  // symmetric drive: epsilon = 0 and eta = |xi|
  CHECK(d.epsilon == 0.0);
  CHECK(d.eta == doctest::Approx(std::abs(d.xi)).epsilon(1e-15));

  p.delta2 = p.delta1;
  CHECK_THROWS_AS(derive_params(p), std::invalid_argument);
}

TEST_CASE("derived-parameter invariants on random inputs") {
  auto gen = testing::rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    DriveParams p = base_params();
    p.omega_j = 0.5 + testing::uniform(gen);
    p.omega_j1 = 0.5 + testing::uniform(gen);
    p.delta1 = 50.0 + 100.0 * testing::uniform(gen);
    p.delta2 = p.delta1 + 5.0 + 20.0 * testing::uniform(gen);
    const DerivedParams d = derive_params(p);
    CHECK(d.eta >= std::abs(d.xi) - 1e-15);
    CHECK(d.eta >= 0.5 * std::abs(d.epsilon) - 1e-15);
  }
}

TEST_CASE("validate rejects inconsistent drive parameters") {
  DriveParams p = base_params();
  p.g = 0.0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = base_params();
  p.delta2 = p.delta1;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = base_params();
  p.n_atoms = 1;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = base_params();
  p.fock_cutoff = 0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = base_params();
  p.driven_first = 1;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("regime warnings trigger below ratio 10") {
  CHECK(regime_warnings(base_params()).empty());
  DriveParams p = base_params();
  p.delta1 = 5.0;
  p.delta2 = 5.5;
  CHECK(!regime_warnings(p).empty());
}

TEST_CASE("full Hamiltonian structure") {
  const DriveParams p = base_params();
  const Register reg = full_register(p);

  SUBCASE("Hermitian at arbitrary times") {
    for (double t : {0.0, 0.137, 2.71, 42.0}) {
      CHECK(hermiticity_defect(full_hamiltonian(t, p, reg)) < 1e-12);
    }
  }

  SUBCASE("drive terms vanish when Omega = 0, cavity block survives") {
    DriveParams q = p;
    q.omega_j = 0.0;
    q.omega_j1 = 0.0;
    const Matrix h = full_hamiltonian(0.0, q, reg);
    // no |a> <-> |r> element anywhere
    for (std::int64_t col = 0; col < reg.total_dim; ++col) {
      const BasisLabel label = labels_of(reg, col);
      if (label[0] == kLevelA) {
        BasisLabel up = label;
        up[0] = kLevelR;
        CHECK(std::abs(h(index_of(reg, up), col)) == 0.0);
      }
    }
    CHECK(testing::max_abs(h) > 0.0);
  }

  SUBCASE("cavity matrix element <r, n|H|1, n+1> = g sqrt(n+1) e^{i Delta2 t}") {
    const double t = 0.83;
    const Matrix h = full_hamiltonian(t, p, reg);
    for (int n = 0; n + 1 <= p.fock_cutoff; ++n) {
      const std::int64_t row = index_of(reg, {kLevelR, kLevel0, n});
      const std::int64_t col = index_of(reg, {kLevel1, kLevel0, n + 1});
      const Complex expected =
          p.g * std::sqrt(n + 1.0) * std::exp(Complex(0.0, p.delta2 * t));
      CHECK(std::abs(h(row, col) - expected) < 1e-13);
    }
  }

  SUBCASE("single-frequency time dependence is 2 pi / Delta periodic") {
    DriveParams q = p;
    q.delta1 = 100.0;
    q.delta2 = 100.0;  // delta = 0 is fine for the raw constructor
    const double period = 2.0 * kPi / 100.0;
    const Matrix h0 = full_hamiltonian(0.4, q, reg);
    const Matrix h1 = full_hamiltonian(0.4 + period, q, reg);
    CHECK(testing::max_abs(h0 - h1) < 1e-12);
  }

  SUBCASE("register shape is checked") {
    CHECK_THROWS_AS(full_hamiltonian(0.0, p, effective_register(p)), std::invalid_argument);
  }
}

TEST_CASE("effective Hamiltonian structure") {
  const DriveParams p = base_params();
  const Register reg = effective_register(p);

  SUBCASE("Hermitian at arbitrary times") {
    for (double t : {0.0, 0.61, 7.3}) {
      CHECK(hermiticity_defect(effective_hamiltonian_e(t, p, reg)) < 1e-12);
    }
  }

  SUBCASE("g = 0 leaves only the -Omega^2/Delta1 diagonal") {
    DriveParams q = p;
    q.g = 0.0;
    const Matrix h = effective_hamiltonian_e(0.0, q, reg);
    CHECK(testing::max_abs(h - Matrix(h.diagonal().asDiagonal())) == 0.0);
    const std::int64_t idx = index_of(reg, {kLevelA, kLevel0, 0});
    CHECK(h(idx, idx).real() == doctest::Approx(-0.01));
  }

  SUBCASE("Raman matrix element <a_j 1_{j+1}, n|H_e|1_j 1_{j+1}, n+1>") {
    const double t = 1.7;
    const DerivedParams d = derive_params(p);
    const Matrix h = effective_hamiltonian_e(t, p, reg);
    for (int n = 0; n + 1 <= p.fock_cutoff; ++n) {
      const std::int64_t row = index_of(reg, {kLevelA, kLevel1, n});
      const std::int64_t col = index_of(reg, {kLevel1, kLevel1, n + 1});
      const Complex expected = -d.lambda_j * std::sqrt(n + 1.0) *
                               std::exp(Complex(0.0, p.phase_j)) *
                               std::exp(Complex(0.0, d.delta * t));
      CHECK(std::abs(h(row, col) - expected) < 1e-13);
    }
  }
}

TEST_CASE("photon-resolved Hamiltonian conserves photon number and reduces to the vacuum form") {
  const DriveParams p = base_params();
  const Register reg = effective_register(p);
  const Matrix h = photon_resolved_hamiltonian(p, reg);
  CHECK(hermiticity_defect(h) < 1e-12);

  // commutes with a^dag a
  Matrix number = Matrix::Zero(reg.total_dim, reg.total_dim);
  for (std::int64_t i = 0; i < reg.total_dim; ++i) {
    number(i, i) = static_cast<double>(labels_of(reg, i).back());
  }
  CHECK(testing::max_abs(h * number - number * h) < 1e-12);

  // vacuum sector equals the reduced two-qutrit Hamiltonian
  const Matrix reduced = reduced_hamiltonian(p);
  const Register pair = pair_register();
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      const BasisLabel lr = labels_of(pair, r);
      const BasisLabel lc = labels_of(pair, c);
      const std::int64_t fr = index_of(reg, {lr[0], lr[1], 0});
      const std::int64_t fc = index_of(reg, {lc[0], lc[1], 0});
      CHECK(std::abs(h(fr, fc) - reduced(r, c)) < 1e-15);
    }
  }
}

TEST_CASE("photon number expectation is conserved under the photon-resolved Hamiltonian") {
  const DriveParams p = base_params();
  const Register reg = effective_register(p);
  const HamiltonianSource source =
      HamiltonianSource::constant(photon_resolved_hamiltonian(p, reg));
  auto gen = testing::rng(59);
  const PureState initial = testing::random_state(gen, reg);

  auto number_expectation = [&](const PureState& s) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < reg.total_dim; ++i) {
      acc += std::norm(s.amps(i)) * static_cast<double>(labels_of(reg, i).back());
    }
    return acc;
  };
  const double before = number_expectation(initial);
  for (double t : {7.0, 1234.5, 99999.0}) {
    const PureState evolved = evolve(initial, source, t);
    CHECK(number_expectation(evolved) == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("reduced Hamiltonian: coupling block and eigenvalues") {
  DriveParams p = base_params();
  p.omega_j1 = 1.3;
  p.phase_j = 0.25;
  p.phase_j1 = -0.4;
  const DerivedParams d = derive_params(p);
  const Matrix h = reduced_hamiltonian(p);
  CHECK(hermiticity_defect(h) < 1e-15);

  const Register pair = pair_register();
  const std::int64_t a1 = index_of(pair, {kLevelA, kLevel1});
  const std::int64_t one_a = index_of(pair, {kLevel1, kLevelA});
  CHECK(std::abs(h(a1, a1) - Complex(-d.mu_j, 0.0)) < 1e-15);
  CHECK(std::abs(h(one_a, one_a) - Complex(-d.mu_j1, 0.0)) < 1e-15);
  CHECK(std::abs(h(a1, one_a) - d.xi * std::exp(Complex(0.0, d.phase_diff))) < 1e-15);

  // eigenvalues of the coupling block are -mu +/- eta
  Eigen::Matrix2cd block;
  block << h(a1, a1), h(a1, one_a), h(one_a, a1), h(one_a, one_a);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-d.mu - d.eta).epsilon(1e-12));
  CHECK(es.eigenvalues()(1) == doctest::Approx(-d.mu + d.eta).epsilon(1e-12));

  SUBCASE("one drive off makes it diagonal") {
    DriveParams q = base_params();
    q.omega_j1 = 0.0;
    const Matrix diag_h = reduced_hamiltonian(q);
    CHECK(testing::max_abs(diag_h - Matrix(diag_h.diagonal().asDiagonal())) == 0.0);
  }
}

TEST_CASE("second-order coupling is photon-number independent and equals the closed form") {
  DriveParams p = base_params();
  p.omega_j1 = 0.8;
  p.phase_j = 0.3;
  p.phase_j1 = 1.1;
  const DerivedParams d = derive_params(p);
  const Complex expected =
      d.lambda_j * d.lambda_j1 / d.delta * std::exp(Complex(0.0, d.phase_diff));

  const Complex at_zero = second_order_coupling(p, 0);
  CHECK(std::abs(at_zero - expected) < 1e-12);
  for (int n = 1; n <= 3; ++n) {
    CHECK(std::abs(second_order_coupling(p, n) - at_zero) < 1e-12);
  }

  DriveParams q = base_params();
  q.phase_j = 0.7;
  q.phase_j1 = 0.7;
  const Complex real_case = second_order_coupling(q, 2);
  CHECK(std::abs(real_case.imag()) < 1e-15);
  CHECK(real_case.real() == doctest::Approx(derive_params(q).xi).epsilon(1e-12));
}

TEST_CASE("evolve basics") {
  const Register reg = make_register({3});
  const PureState s = basis_state(reg, {1});

  SUBCASE("zero duration is the identity") {
    Matrix h = Matrix::Zero(3, 3);
    h(1, 1) = 5.0;
    const PureState out = evolve(s, HamiltonianSource::constant(h), 0.0);
    CHECK((out.amps - s.amps).norm() == 0.0);
  }

  SUBCASE("constant diagonal Hamiltonian gives exact phases") {
    Matrix h = Matrix::Zero(3, 3);
    h(0, 0) = 0.5;
    h(1, 1) = -1.25;
    h(2, 2) = 2.0;
    Vector amps(3);
    amps << std::sqrt(0.5), 0.5, 0.5;
    const PureState in = make_state(reg, amps);
    const double t = 3.7;
    const PureState out = evolve(in, HamiltonianSource::constant(h), t);
    for (int k = 0; k < 3; ++k) {
      const Complex expected = amps(k) * std::exp(Complex(0.0, -h(k, k).real() * t));
      CHECK(std::abs(out.amps(k) - expected) < 1e-14);
    }
  }

  SUBCASE("negative duration is rejected") {
    CHECK_THROWS_AS(evolve(s, HamiltonianSource::constant(Matrix::Zero(3, 3)), -1.0),
                    std::invalid_argument);
  }

  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(evolve(s, HamiltonianSource::constant(Matrix::Zero(4, 4)), 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("reduced-Hamiltonian evolution matches the closed form on a parameter grid") {
  const Register pair = pair_register();
  auto gen = testing::rng(71);
  int points = 0;
  for (double ratio : {0.5, 1.0, 2.0}) {
    for (double delta2 : {105.0, 110.0, 120.0}) {
      DriveParams p = base_params();
      p.omega_j1 = ratio * p.omega_j;
      p.delta2 = delta2;
      p.phase_j1 = 0.9;  // generic phases
      const DerivedParams d = derive_params(p);
      const HamiltonianSource source = HamiltonianSource::constant(reduced_hamiltonian(p));
      for (double t : {1.0e3, kPi / d.eta, 2.5e5}) {
        ++points;
        const Eigen::Matrix3cd map = closed_form_evolution(d, t);
        // basis of the closed form: {|a1>, |1a>, |a0>}
        const std::array<BasisLabel, 3> labels = {
            BasisLabel{kLevelA, kLevel1}, BasisLabel{kLevel1, kLevelA},
            BasisLabel{kLevelA, kLevel0}};
        for (int c = 0; c < 3; ++c) {
          const PureState evolved = evolve(basis_state(pair, labels[c]), source, t);
          Vector expected = Vector::Zero(9);
          for (int r = 0; r < 3; ++r) {
            expected(index_of(pair, labels[r])) += map(r, c);
          }
          CHECK((evolved.amps - expected).norm() < 1e-9);
          CHECK(std::abs(evolved.norm() - 1.0) < 1e-12);
        }
        // a random superposition input as well
        const PureState in = testing::random_state(gen, pair);
        CHECK(std::abs(evolve(in, source, t).norm() - 1.0) < 1e-12);
      }
    }
  }
  CHECK(points == 27);
}

TEST_CASE("closed-form map special cases") {
  DriveParams p = base_params();
  const DerivedParams d = derive_params(p);

  SUBCASE("t = 0 is the identity") {
    CHECK(testing::max_abs(Matrix(closed_form_evolution(d, 0.0)) -
                           Matrix(Matrix::Identity(3, 3))) == 0.0);
  }

  SUBCASE("symmetric drive at xi t = pi/2, phase -pi/2: the swap lines") {
    const double t = kPi / (2.0 * d.xi);
    const Eigen::Matrix3cd m = closed_form_evolution(d, t);
    const Complex mu_phase = std::exp(Complex(0.0, d.mu * t));
    CHECK(std::abs(m(1, 0) - mu_phase) < 1e-12);        // |a1> -> e^{i mu t}|1a>
    CHECK(std::abs(m(0, 1) + mu_phase) < 1e-12);        // |1a> -> -e^{i mu t}|a1>
    CHECK(std::abs(m(0, 0)) < 1e-12);
    CHECK(std::abs(m(1, 1)) < 1e-12);
    CHECK(std::abs(m(2, 2) - std::exp(Complex(0.0, d.mu_j * t))) < 1e-12);
  }

  SUBCASE("eta t = pi: the conditional-phase lines") {
    DriveParams q = base_params();
    q.omega_j1 = 1.0005;  // small asymmetry: epsilon comparable to xi
    const DerivedParams dd = derive_params(q);
    const double t = kPi / dd.eta;
    const Eigen::Matrix3cd m = closed_form_evolution(dd, t);
    CHECK(std::abs(m(0, 0) - std::exp(Complex(0.0, kPi * (1.0 + dd.mu / dd.eta)))) < 1e-12);
    CHECK(std::abs(m(2, 2) - std::exp(Complex(0.0, kPi * dd.mu_j / dd.eta))) < 1e-12);
    CHECK(std::abs(m(1, 0)) < 1e-12);
    CHECK(std::abs(m(0, 1)) < 1e-12);
  }
}

TEST_CASE("swap pulse schedule realizes the conditional swap under the reduced Hamiltonian") {
  const DriveParams p = base_params();  // phase difference -pi/2
  const PulseSchedule schedule = swap_pulse_schedule(p);
  const DerivedParams d = derive_params(p);
  CHECK(schedule.duration == doctest::Approx(kPi / (2.0 * d.xi)).epsilon(1e-15));
  REQUIRE(schedule.post_corrections.size() == 2);
  CHECK(schedule.post_corrections[0].theta ==
        doctest::Approx(-kPi * d.mu / (2.0 * d.xi)).epsilon(1e-13));

  const HamiltonianSource source = HamiltonianSource::constant(reduced_hamiltonian(p));
  const Matrix ideal = conditional_swap_gate(0, 1).matrix;

  // the reachable two-site inputs before U_{j,j+1}
  const std::vector<BasisLabel> reachable = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}};
  for (const auto& label : reachable) {
    PureState out = evolve(basis_state(pair_register(), label), source, schedule.duration);
    out = apply_corrections(out, schedule);
    const Vector expected = ideal.col(index_of(pair_register(), label));
    CHECK((out.amps - expected).norm() < 1e-6);
  }

  SUBCASE("examples pinned to single states") {
    PureState a0 = evolve(basis_state(pair_register(), {kLevelA, kLevel0}), source,
                          schedule.duration);
    a0 = apply_corrections(a0, schedule);
    CHECK(std::abs(a0.amps(index_of(pair_register(), {kLevelA, kLevel0})) - 1.0) < 1e-9);

    PureState a1 = evolve(basis_state(pair_register(), {kLevelA, kLevel1}), source,
                          schedule.duration);
    a1 = apply_corrections(a1, schedule);
    CHECK(std::abs(a1.amps(index_of(pair_register(), {kLevel1, kLevelA})) - 1.0) < 1e-9);

    PureState zz = evolve(basis_state(pair_register(), {kLevel0, kLevel0}), source,
                          schedule.duration);
    zz = apply_corrections(zz, schedule);
    CHECK(std::abs(zz.amps(index_of(pair_register(), {kLevel0, kLevel0})) - 1.0) < 1e-12);
  }

  SUBCASE("asymmetric drive is rejected") {
    DriveParams q = p;
    q.omega_j1 = 1.01;
    CHECK_THROWS_AS(swap_pulse_schedule(q), std::invalid_argument);
  }

  SUBCASE("reverse direction: phase difference +pi/2 gives U_{j+1,j}") {
    DriveParams q = p;
    q.phase_j = kPi / 2.0;
    q.phase_j1 = 0.0;
    const PulseSchedule rev = swap_pulse_schedule(q);
    const HamiltonianSource rev_source = HamiltonianSource::constant(reduced_hamiltonian(q));
    // |1_j a_{j+1}> = |a_k 1_j> in (j+1, j) order: forward for the reversed subscripts
    PureState out = evolve(basis_state(pair_register(), {kLevel1, kLevelA}), rev_source,
                           rev.duration);
    out = apply_corrections(out, rev);
    CHECK(std::abs(out.amps(index_of(pair_register(), {kLevelA, kLevel1})) - 1.0) < 1e-9);
  }
}

TEST_CASE("phase pulse schedule produces pi(1 + eps/2eta) and fixes |a0>") {
  SUBCASE("symmetric drive gives exactly pi") {
    CHECK(conditional_phase_of(base_params()) == doctest::Approx(kPi));
  }

  auto run_case = [&](double omega_j1) {
    DriveParams p = base_params();
    p.omega_j1 = omega_j1;
    const auto [schedule, phase] = phase_pulse_schedule(p);
    const HamiltonianSource source = HamiltonianSource::constant(reduced_hamiltonian(p));

    PureState a1 = evolve(pair_basis(kLevelA, kLevel1), source, schedule.duration);
    a1 = apply_corrections(a1, schedule);
    const Complex amp = a1.amps(index_of(pair_register(), {kLevelA, kLevel1}));
    CHECK(std::abs(amp - std::polar(1.0, phase)) < 1e-6);

    PureState a0 = evolve(pair_basis(kLevelA, kLevel0), source, schedule.duration);
    a0 = apply_corrections(a0, schedule);
    CHECK(std::abs(a0.amps(index_of(pair_register(), {kLevelA, kLevel0})) - 1.0) < 1e-6);
    return phase;
  };

  const double p1 = run_case(1.0002);
  const double p2 = run_case(1.0008);
  CHECK(p1 > kPi);
  CHECK(p2 > p1);
  CHECK(run_case(0.9995) < kPi);

  SUBCASE("undriven pair degenerates") {
    DriveParams p = base_params();
    p.omega_j = 0.0;
    p.omega_j1 = 0.0;
    CHECK_THROWS_AS(phase_pulse_schedule(p), std::invalid_argument);
  }
}

TEST_CASE("solve_rabi_for_phase") {
  const DriveParams fixed = base_params();

  SUBCASE("target pi returns the symmetric drive") {
    const double omega = solve_rabi_for_phase(kPi, fixed);
    CHECK(omega == doctest::Approx(fixed.omega_j).epsilon(1e-10));
  }

  SUBCASE("round trip through the phase formula") {
    for (double target : {1.5 * kPi, 0.6 * kPi, 1.2 * kPi, 0.35 * kPi}) {
      const double omega = solve_rabi_for_phase(target, fixed);
      DriveParams p = fixed;
      p.omega_j1 = omega;
      CHECK(std::abs(conditional_phase_of(p) - target) <= 1e-10);
    }
  }

  SUBCASE("unreachable targets") {
    CHECK_THROWS_AS(solve_rabi_for_phase(0.0, fixed), std::domain_error);
    CHECK_THROWS_AS(solve_rabi_for_phase(2.0 * kPi, fixed), std::domain_error);
    CHECK_THROWS_AS(solve_rabi_for_phase(-1.0, fixed), std::domain_error);
  }
}

TEST_CASE("rotating-frame propagator agrees with piecewise-constant stepping") {
  DriveParams p = base_params();
  const double period = 2.0 * kPi / 10.0;

  SUBCASE("effective model over two oscillation periods") {
    const PureState initial = sweep_stress_state(p, HamiltonianLevel::Effective9);
    const PureState exact = evolve(initial, effective_source(p), 2.0 * period);
    const PureState stepped = evolve(initial, effective_source_sampled(p), 2.0 * period);
    CHECK((exact.amps - stepped.amps).norm() < 1e-7);
  }

  SUBCASE("full model over one oscillation period") {
    const PureState initial = sweep_stress_state(p, HamiltonianLevel::Full8);
    const PureState exact = evolve(initial, full_source(p), period);
    EvolveOptions opts;
    opts.refine_tol = 1e-7;
    const PureState stepped = evolve(initial, full_source_sampled(p), period, opts);
    CHECK((exact.amps - stepped.amps).norm() < 1e-6);
  }
}

TEST_CASE("sampled stepping uses the period product for long horizons") {
  DriveParams p = base_params();
  const double period = 2.0 * kPi / 10.0;
  const PureState initial = sweep_stress_state(p, HamiltonianLevel::Effective9);
  // 7.5 periods engages the one-period propagator plus a remainder
  const double duration = 7.5 * period;
  const PureState exact = evolve(initial, effective_source(p), duration);
  const PureState stepped = evolve(initial, effective_source_sampled(p), duration);
  CHECK((exact.amps - stepped.amps).norm() < 1e-6);
}

TEST_CASE("integrator reports failure when the refinement budget is exhausted") {
  const Register reg = make_register({2});
  Matrix sx = Matrix::Zero(2, 2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  const HamiltonianSource wild = HamiltonianSource::sampled(
      [sx](double t) { return Matrix(std::cos(50.0 * t) * sx); }, 1.0);
  EvolveOptions opts;
  opts.refine_tol = 1e-14;
  opts.max_refinements = 1;
  CHECK_THROWS_AS(evolve(basis_state(reg, {0}), wild, 10.0, opts), IntegrationError);
}

TEST_CASE("a rotating frame with zero diagonal is a constant Hamiltonian") {
  const DriveParams p = base_params();
  const Matrix h = reduced_hamiltonian(p);
  const HamiltonianSource constant = HamiltonianSource::constant(h);
  const HamiltonianSource framed =
      HamiltonianSource::rotating_frame(Eigen::VectorXd::Zero(9), h);
  auto gen = testing::rng(83);
  const PureState in = testing::random_state(gen, pair_register());
  for (double t : {3.0, 4.7e4}) {
    CHECK((evolve(in, constant, t).amps - evolve(in, framed, t).amps).norm() < 1e-12);
  }
}

TEST_CASE("negative delta: reversed drive-phase difference realizes the forward swap") {
  DriveParams p = base_params();
  p.delta2 = 90.0;  // delta = -10, xi < 0
  p.phase_j1 = -kPi / 2.0;  // phase difference +pi/2
  const DerivedParams d = derive_params(p);
  CHECK(d.xi < 0.0);

  const PulseSchedule schedule = swap_pulse_schedule(p);
  CHECK(schedule.duration == doctest::Approx(kPi / (2.0 * std::abs(d.xi))).epsilon(1e-15));
  const HamiltonianSource source = HamiltonianSource::constant(reduced_hamiltonian(p));

  PureState a1 = evolve(pair_basis(kLevelA, kLevel1), source, schedule.duration);
  a1 = apply_corrections(a1, schedule);
  CHECK(std::abs(a1.amps(index_of(pair_register(), {kLevel1, kLevelA})) - 1.0) < 1e-9);

  PureState a0 = evolve(pair_basis(kLevelA, kLevel0), source, schedule.duration);
  a0 = apply_corrections(a0, schedule);
  CHECK(std::abs(a0.amps(index_of(pair_register(), {kLevelA, kLevel0})) - 1.0) < 1e-9);
}

TEST_CASE("Fock cutoff 3 is converged: raising it by two moves the swap fidelity < 1e-8") {
  auto fidelity_at = [](int cutoff) {
    DriveParams p = base_params();
    p.fock_cutoff = cutoff;
    const PulseSchedule schedule = swap_pulse_schedule(p, HamiltonianLevel::Full8);
    PureState state = sweep_stress_state(p, HamiltonianLevel::Full8);
    state = evolve(state, full_source(p), schedule.duration);
    state = apply_corrections(state, schedule);
    return state_fidelity(state,
                          sweep_ideal_state(p, HamiltonianLevel::Full8, ScheduleKind::Swap));
  };
  CHECK(std::abs(fidelity_at(3) - fidelity_at(5)) < 1e-8);
}

TEST_CASE("full-model swap: norm exact, vacuum return, spectator atom inert") {
  DriveParams p = base_params();
  const PulseSchedule schedule = swap_pulse_schedule(p, HamiltonianLevel::Full8);
  PureState state = sweep_stress_state(p, HamiltonianLevel::Full8);
  state = evolve(state, full_source(p), schedule.duration);
  state = apply_corrections(state, schedule);

  CHECK(std::abs(state.norm() - 1.0) < 1e-12);
  CHECK(vacuum_population(state) > 1.0 - 1e-6);
  const double infid =
      1.0 - state_fidelity(state, sweep_ideal_state(p, HamiltonianLevel::Full8, ScheduleKind::Swap));
  CHECK(infid < 0.05);

  // effective tier tracks the reduced prediction far more closely
  PureState eff = sweep_stress_state(p, HamiltonianLevel::Effective9);
  eff = evolve(eff, effective_source(p), schedule.duration);
  eff = apply_corrections(eff, schedule);
  const double eff_infid = 1.0 - state_fidelity(
      eff, sweep_ideal_state(p, HamiltonianLevel::Effective9, ScheduleKind::Swap));
  CHECK(eff_infid < 1e-5);
  CHECK(eff_infid < infid);

  // a third atom parked in |0> does not disturb the gate
  DriveParams q = p;
  q.n_atoms = 3;
  const PulseSchedule spect_schedule = swap_pulse_schedule(q, HamiltonianLevel::Full8);
  PureState spect = sweep_stress_state(q, HamiltonianLevel::Full8);
  spect = evolve(spect, full_source(q), spect_schedule.duration);
  spect = apply_corrections(spect, spect_schedule);
  const double spect_infid = 1.0 - state_fidelity(
      spect, sweep_ideal_state(q, HamiltonianLevel::Full8, ScheduleKind::Swap));
  CHECK(spect_infid == doctest::Approx(infid).epsilon(1e-6));

  // driving the pair (1, 2) instead of (0, 1) is the same physics
  DriveParams shifted = q;
  shifted.driven_first = 1;
  const PulseSchedule shifted_schedule = swap_pulse_schedule(shifted, HamiltonianLevel::Full8);
  PureState moved = sweep_stress_state(shifted, HamiltonianLevel::Full8);
  moved = evolve(moved, full_source(shifted), shifted_schedule.duration);
  moved = apply_corrections(moved, shifted_schedule);
  const double moved_infid = 1.0 - state_fidelity(
      moved, sweep_ideal_state(shifted, HamiltonianLevel::Full8, ScheduleKind::Swap));
  CHECK(moved_infid == doctest::Approx(spect_infid).epsilon(1e-6));
}
