// Copyright 2026 The waylimit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WAYLIMIT_OPTIMIZER_H_
#define WAYLIMIT_OPTIMIZER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "waylimit/conservation.h"
#include "waylimit/measurement.h"
#include "waylimit/operator.h"

namespace waylimit {

// Frobenius-orthonormal basis of the hermitian operators commuting with a
// conserved quantity L_tot. For an eigenspace with orthonormal basis
// {b_1..b_d} the generators are b_i b_i†, (b_i b_j† + b_j b_i†)/√2 and
// i(b_i b_j† - b_j b_i†)/√2 for i < j, so the count is Σ_k d_k².
class CommutantBasis {
 public:
  explicit CommutantBasis(const Operator& l_tot);

  int dim() const { return dim_; }
  int size() const { return size_; }
  int num_sectors() const { return static_cast<int>(sectors_.size()); }
  const Matrix& sector_basis(int k) const { return sectors_[k].basis; }
  double sector_value(int k) const { return sectors_[k].value; }

  std::vector<Operator> generators() const;
  // Σ θ_g G_g restricted to sector k (a d_k × d_k hermitian matrix).
  Matrix sector_hamiltonian(int k, std::span<const double> theta) const;

 private:
  struct Sector {
    double value;
    Matrix basis;
    int offset;
  };
  int dim_;
  int size_;
  std::vector<Sector> sectors_;
};

CommutantBasis commutant_basis(const Operator& l_tot);

// exp(i Σ θ_g G_g), assembled sector by sector.
Operator conservative_unitary(const CommutantBasis& basis,
                              std::span<const double> theta);

// A θ with conservative_unitary(basis, θ) = u. Requires u to commute with
// the conserved quantity (PreconditionError otherwise).
std::vector<double> theta_from_unitary(const CommutantBasis& basis,
                                       const Operator& u);

// M = L2 itself: commutes with L2 and separates its eigenspaces.
Operator default_probe_observable(const Operator& l2);

// Two-valued record ±1/2 alternating along the spectrum of L2, starting
// with +1/2 at the largest eigenvalue. Commutes with L2.
Operator parity_record(const Operator& l2);

enum class NoiseObjective { kState, kSup };

struct OptimizerConfig {
  int restarts = 16;
  int max_iters = 200;
  double grad_step = 1e-5;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  NoiseObjective objective = NoiseObjective::kState;
  bool optimize_xi = false;
  // Standard deviation of the random initial θ for restarts after the first.
  double init_scale = 1.0;
  // Starting θ of the first restart; empty means θ = 0 (U = I).
  std::vector<double> initial_theta;
  // 0 = max_threads().
  int threads = 0;
};

struct NoiseProblem {
  Operator observable;        // A
  ConservationPair pair;      // L1, L2
  Operator probe_observable;  // M, must commute with L2
  Ket xi0;                    // initial probe state
  Ket psi;                    // target object state
};

// The objective as a function of x = [θ, ξ-parameters]. When ξ is
// optimized it is parametrized by 2·d_probe reals (re, im interleaved) and
// normalized.
class NoiseLandscape {
 public:
  NoiseLandscape(NoiseProblem problem, NoiseObjective objective,
                 bool optimize_xi);

  int num_parameters() const;
  int num_theta() const { return basis_.size(); }
  const CommutantBasis& basis() const { return basis_; }
  const NoiseProblem& problem() const { return problem_; }

  std::vector<double> pack(std::span<const double> theta, const Ket& xi) const;
  Ket xi_at(std::span<const double> x) const;
  Operator unitary_at(std::span<const double> x) const;
  MeasurementModel model_at(std::span<const double> x) const;

  double value(std::span<const double> x) const;
  // ε(ψ)² regardless of the configured objective.
  double state_noise_sq(std::span<const double> x) const;
  // Yanase-condition bound for the probe state encoded in x.
  double bound(std::span<const double> x) const;
  // Central differences with the given step.
  std::vector<double> gradient(std::span<const double> x, double step) const;

 private:
  double value_for(const Operator& u, const Ket& xi) const;

  NoiseProblem problem_;
  NoiseObjective objective_;
  bool optimize_xi_;
  CommutantBasis basis_;
  Matrix record_lifted_;      // I ⊗ M
  Matrix observable_lifted_;  // A ⊗ I
  double bound_numerator_;    // |⟨[A, L1]⟩_ψ|²
  double object_variance_;    // Δ²L1 in ψ
};

struct RestartResult {
  int index;
  std::uint64_t seed;
  double objective;
  int iterations;
  bool converged;
  int bound_violations;
};

struct OptimizationRun {
  std::uint64_t seed;
  std::vector<double> theta;
  Ket xi;
  std::vector<double> objective_trace;  // best restart, accepted iterates
  MeasurementModel result_model;
  ConservationPair pair;
  double objective;
  double eps_sq;       // ε(ψ)² at the result
  double bound_value;  // Yanase-condition bound at the result
  bool converged;
  // Accepted iterates, over all restarts, with ε(ψ)² below the bound.
  int bound_violations;
  std::vector<RestartResult> restarts;
};

// Quasi-Newton descent (BFGS with backtracking, finite-difference
// gradients) inside the commutant, with independent random restarts. The
// best restart wins; ties go to the lowest restart seed. Non-convergence is
// reported through `converged`, not thrown.
OptimizationRun optimize_noise(const NoiseProblem& problem,
                               const OptimizerConfig& config);

enum class ProbeFamily { kSpinLadder, kOscillator };

std::string to_string(ProbeFamily family);

struct ProbeSetup {
  Operator l2;
  Operator record;
  Ket xi;
};

// Spin-j ladder of dimension `dim`: L2 = J_z, ξ = J_x coherent state
// (Δ²J_z = j/2), record = parity_record(J_z).
ProbeSetup spin_ladder_probe(int dim);

// Two-mode oscillator truncated at n_max: L2 = m_z, ξ = |α⟩|β⟩ with
// α = β = sqrt(quanta/2), record = parity_record(m_z).
ProbeSetup oscillator_probe(double quanta, int n_max);

// Spin-1/2 object: A = S_x, L1 = S_z, ψ = α_y.
NoiseProblem spin_measurement_problem(const ProbeSetup& probe);

struct SweepRow {
  ProbeFamily family;
  double size;
  double var_mz;
  double bound;
  double achieved;   // best ε(α_y)², NaN when not computed
  double gap_ratio;  // achieved / bound
  std::uint64_t seed;
  std::string error;  // empty on success
};

// One row per size. Spin ladder sizes are probe dimensions; oscillator
// sizes are mean quanta |α|² + |β|². Failures are recorded in-row.
std::vector<SweepRow> sweep_probe_size(ProbeFamily family,
                                       const std::vector<double>& sizes,
                                       const OptimizerConfig& config);

}  // namespace waylimit

#endif  // WAYLIMIT_OPTIMIZER_H_
