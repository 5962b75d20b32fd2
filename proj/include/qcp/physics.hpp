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

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcp/register.hpp"

namespace qcp {

/**
 * Physical inputs of the cavity-QED realization. Two adjacent atoms
 * (driven_first, driven_first + 1) are driven by classical fields; every
 * atom's |1> <-> |r> transition couples to the shared cavity mode.
 * Units: hbar = 1, rates in units of g.
 */
struct DriveParams {
  double omega_j = 1.0;   // Rabi frequency of the first driven atom
  double omega_j1 = 1.0;  // Rabi frequency of the second driven atom
  double phase_j = 0.0;   // laser phase on the first driven atom
  // pi/2 by default: phase difference -pi/2, the forward-swap setting
  double phase_j1 = 1.5707963267948966;
  double g = 1.0;         // atom-cavity coupling
  double delta1 = 100.0;  // classical-field detuning
  double delta2 = 110.0;  // cavity detuning
  int n_atoms = 2;
  int driven_first = 0;
  int fock_cutoff = 3;
};

void validate(const DriveParams& p);

// Dispersive-regime checks: ratios below 10 produce warnings, not errors,
// so regime breakdown can be probed deliberately.
std::vector<std::string> regime_warnings(const DriveParams& p);

/// The derived-parameter chain lambda -> xi -> mu -> (epsilon, eta).
struct DerivedParams {
  double lambda_j = 0.0;    // (Omega_j g / 2)(1/Delta1 + 1/Delta2)
  double lambda_j1 = 0.0;
  double delta = 0.0;       // Delta2 - Delta1
  double xi = 0.0;          // lambda_j lambda_{j+1} / delta
  double phase_diff = 0.0;  // phase_j - phase_{j+1}
  double mu_j = 0.0;        // Omega_j^2/Delta1 - lambda_j^2/delta
  double mu_j1 = 0.0;
  double mu = 0.0;          // (mu_j + mu_{j+1}) / 2
  double epsilon = 0.0;     // mu_{j+1} - mu_j
  double eta = 0.0;         // sqrt(xi^2 + epsilon^2/4)
};

DerivedParams derive_params(const DriveParams& p);

// n_atoms four-level sites followed by one cavity site of dim fock_cutoff+1.
Register full_register(const DriveParams& p);
// n_atoms three-level sites (|r> eliminated) followed by the cavity site.
Register effective_register(const DriveParams& p);
// The two driven qutrits alone.
Register pair_register();

/**
 * Interaction-picture Hamiltonian of the driven atoms-plus-cavity system:
 * classical-drive terms e^{i Delta1 t} Omega_m e^{-i phase_m} |r_m><a_m| on
 * the driven pair, cavity terms g a e^{i Delta2 t} |r_m><1_m| over all
 * atoms, plus Hermitian conjugates.
 */
Matrix full_hamiltonian(double t, const DriveParams& p, const Register& reg);

/**
 * Effective Hamiltonian after adiabatic elimination of |r>: Stark shifts
 * -Omega^2/Delta1 on |a> of the driven pair, Raman terms
 * -lambda_m (a S_m^+ e^{i phase_m} e^{i delta t} + h.c.), and the photon-
 * dependent shift -(g^2/Delta2) a^dag a |1_m><1_m| over all atoms.
 */
Matrix effective_hamiltonian_e(double t, const DriveParams& p, const Register& reg);

// Photon-number-resolved effective Hamiltonian (time independent; commutes
// with a^dag a). Its vacuum sector is reduced_hamiltonian.
Matrix photon_resolved_hamiltonian(const DriveParams& p, const Register& reg);

/**
 * Vacuum-sector two-qutrit Hamiltonian on the driven pair:
 *   -mu_j |a_j><a_j| - mu_{j+1} |a_{j+1}><a_{j+1}|
 *   + xi (e^{i phi} S_j^+ S_{j+1}^- + e^{-i phi} S_j^- S_{j+1}^+).
 */
Matrix reduced_hamiltonian(const DriveParams& p);

/**
 * The two-path second-order coupling of |1_j a_{j+1} n> -> |a_j 1_{j+1} n>
 * mediated by |1_j 1_{j+1} n+1> and |a_j a_{j+1} n-1>, computed from
 * explicit effective-Hamiltonian matrix elements (not from the closed
 * form). The paths interfere destructively, leaving
 * xi e^{i phi} = lambda_j lambda_{j+1} e^{i phi} / delta for every n.
 */
Complex second_order_coupling(const DriveParams& p, int n_photons);

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/**
 * A Hamiltonian handed to evolve. Three flavors:
 *  - constant H (exact eigendecomposition propagator);
 *  - rotating frame H(t) = e^{i H0 t} V e^{-i H0 t} with diagonal H0
 *    (exact two-exponential propagator, no discretization error);
 *  - sampled H(t) (piecewise-constant midpoint stepping with step
 *    refinement; an optional exact period lets long evolutions reuse the
 *    one-period propagator).
 */
class HamiltonianSource {
 public:
  enum class Kind { Constant, RotatingFrame, Sampled };

  static HamiltonianSource constant(Matrix h);
  static HamiltonianSource rotating_frame(Eigen::VectorXd h0_diag, Matrix v);
  static HamiltonianSource sampled(std::function<Matrix(double)> h, double max_step,
                                   std::optional<double> period = std::nullopt);

  Kind kind() const { return kind_; }
  const Matrix& matrix() const { return h_; }
  const Eigen::VectorXd& frame_diagonal() const { return h0_; }
  Matrix sample(double t) const { return sampler_(t); }
  double max_step() const { return max_step_; }
  std::optional<double> period() const { return period_; }
  std::int64_t dim() const { return dim_; }

 private:
  HamiltonianSource() = default;

  Kind kind_ = Kind::Constant;
  Matrix h_;
  Eigen::VectorXd h0_;
  std::function<Matrix(double)> sampler_;
  double max_step_ = 0.0;
  std::optional<double> period_;
  std::int64_t dim_ = 0;
};

// Exact propagators for the two time-dependent models, built from the
// rotating-frame identity H(t) = e^{i H0 t} H(0) e^{-i H0 t} with
// H0 = Delta1 sum_m |r_m><r_m| - delta a^dag a (full) or H0 = -delta a^dag a
// (effective).
HamiltonianSource full_source(const DriveParams& p);
HamiltonianSource effective_source(const DriveParams& p);

// The same models exposed through the generic piecewise-constant path, for
// cross-validation on short horizons.
HamiltonianSource full_source_sampled(const DriveParams& p);
HamiltonianSource effective_source_sampled(const DriveParams& p);

// (1/50) min(2 pi/|Delta1|, 2 pi/|Delta2|, 2 pi/|delta|)
double recommended_max_step(const DriveParams& p);

struct EvolveOptions {
  double refine_tol = 1e-8;  // halving the step must move the final state less than this
  int max_refinements = 6;
};

/**
 * Solves i dpsi/dt = H(t) psi over [0, duration]. Constant and rotating-
 * frame sources propagate exactly; sampled sources step with the source's
 * max_step and refine until the Richardson check passes, throwing
 * IntegrationError if max_refinements is exhausted.
 */
PureState evolve(const PureState& state, const HamiltonianSource& source, double duration,
                 const EvolveOptions& options = {});

enum class HamiltonianLevel { Full8, Effective9, Reduced12 };

struct PhaseCorrection {
  int site = 0;
  int level = 0;
  double theta = 0.0;
};

/// A timed Hamiltonian segment plus single-qutrit corrective phases.
struct PulseSchedule {
  HamiltonianLevel level = HamiltonianLevel::Reduced12;
  double duration = 0.0;
  std::vector<PhaseCorrection> post_corrections;
};

/**
 * Closed-form map after evolving the reduced Hamiltonian for time t, on
 * the ordered basis {|a_j 1_{j+1}>, |1_j a_{j+1}>, |a_j 0_{j+1}>}:
 * the 2x2 rotation e^{i mu t}[cos(eta t) -+ i (eps/2eta) sin(eta t), ...]
 * plus the free line |a_j 0_{j+1}> -> e^{i mu_j t}|a_j 0_{j+1}>.
 */
Eigen::Matrix3cd closed_form_evolution(const DerivedParams& d, double t);

/**
 * Square pulse of duration pi/(2|xi|) with corrective phases
 * -mu * duration on level |a> of both driven qutrits. With symmetric
 * drive and phase difference -pi/2 (+pi/2) it realizes the forward
 * (reverse) conditional swap. Requires omega_j == omega_j1.
 */
PulseSchedule swap_pulse_schedule(const DriveParams& p,
                                  HamiltonianLevel level = HamiltonianLevel::Reduced12);

/**
 * Square pulse of duration pi/eta with the corrective phase
 * -mu_j * duration on level |a> of the first driven qutrit. Realizes the
 * controlled phase pi(1 + epsilon/(2 eta)) on |a_j 1_{j+1}> while leaving
 * |a_j 0_{j+1}> invariant. Returns the schedule and the conditional phase.
 */
std::pair<PulseSchedule, double> phase_pulse_schedule(
    const DriveParams& p, HamiltonianLevel level = HamiltonianLevel::Reduced12);

double conditional_phase_of(const DriveParams& p);

/**
 * Inverts the conditional-phase formula for omega_j1 by bracketed
 * bisection on pi(1 + epsilon/(2 eta)) = target_phi, to 1e-10 in phase.
 * Returns the smallest positive root in the scanned bracket.
 */
double solve_rabi_for_phase(double target_phi, const DriveParams& fixed);

PureState apply_corrections(const PureState& state, const PulseSchedule& schedule);

}  // namespace qcp
