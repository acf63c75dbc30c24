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

#ifndef WAYLIMIT_CONSERVATION_H_
#define WAYLIMIT_CONSERVATION_H_

#include <optional>
#include <string>
#include <vector>

#include "waylimit/measurement.h"
#include "waylimit/operator.h"

namespace waylimit {

// Additively conserved quantity: L1 on the object, L2 on the probe.
class ConservationPair {
 public:
  ConservationPair(Operator l1, Operator l2);

  const Operator& object_part() const { return l1_; }
  const Operator& probe_part() const { return l2_; }
  // L1 ⊗ I
  Operator object_lifted() const;
  // I ⊗ L2
  Operator probe_lifted() const;
  // L1 ⊗ I + I ⊗ L2
  Operator total() const;

 private:
  Operator l1_;
  Operator l2_;
};

// ‖[U, L1⊗I + I⊗L2]‖_F
double acl_residual(const MeasurementModel& model, const ConservationPair& pair);

// ‖U†L_tot U - L_tot‖_F
double invariance_residual(const MeasurementModel& model,
                           const ConservationPair& pair);

// ‖[M, L2]‖_F
double yanase_residual(const Operator& m, const Operator& l2);

// ‖[N, L_tot] - (U†[I⊗M, I⊗L2]U - [A⊗I, L1⊗I])‖_F. The identity follows
// from the conservation law, so a model violating it beyond
// tol::kConservationPrecondition raises PreconditionError.
double commutator_identity_residual(const MeasurementModel& model,
                                    const ConservationPair& pair);

struct UncertaintyPair {
  double lhs;  // (ΔN)² (ΔL_tot)²
  double rhs;  // |⟨[N, L_tot]⟩|² / 4
};

// Robertson relation for N and L_tot in ψ ⊗ ξ.
UncertaintyPair uncertainty_pair(const MeasurementModel& model,
                                 const ConservationPair& pair, const Ket& psi);

// |Δ²L_tot - Δ²(L1⊗I) - Δ²(I⊗L2)| in ψ ⊗ ξ.
double variance_additivity_residual(const ConservationPair& pair,
                                    const Ket& psi, const Ket& xi);

// |⟨U†[I⊗M, I⊗L2]U - [A⊗I, L1⊗I]⟩|² / (4Δ²L1 + 4Δ²L2) in ψ ⊗ ξ.
//
// When the denominator vanishes the result is 0 if the numerator vanishes
// too and tol::kInfinity otherwise.
double fundamental_bound(const MeasurementModel& model,
                         const ConservationPair& pair, const Ket& psi);

// |⟨[A, L1]⟩_ψ|² / (4Δ²L1 + 4Δ²L2); requires [M, L2] = 0.
double yanase_bound(const MeasurementModel& model, const ConservationPair& pair,
                    const Ket& psi);

// ⟨S_y⟩² / (4Δ²S_z + 4Δ²L2) for the spin-1/2 scenario A = S_x, L1 = S_z
// under Yanase's condition.
double spin_bound(const MeasurementModel& model, const ConservationPair& pair,
                  const Ket& psi);

// 1 / (4 + 16 v): the floor on ε(α_y)² and on the error probability for a
// probe whose conserved quantity has variance v.
double optimal_spin_bound(double var_mz);

struct BoundComparison {
  double old_bound;  // 1 / (8⟨m_z²⟩), infinite when ⟨m_z²⟩ = 0
  double new_bound;  // 1 / (2 + 8 Δ²m_z)
};

// Lower bounds on the unsuccessful-probability sum ε_Y² from the
// continuous-spectrum estimate and from the exact inequality chain.
BoundComparison bound_comparison(double var_mz, double mean_mz);

struct BoundReport {
  double eps_sq = 0.0;
  double delta_noise_sq = 0.0;
  double fundamental_bound = 0.0;
  std::optional<double> yanase_bound;
  std::optional<double> spin_bound;
  double acl_residual = 0.0;
  double invariance_residual = 0.0;
  double yanase_residual = 0.0;
  std::optional<double> commutator_identity_residual;
  double uncertainty_lhs = 0.0;
  double uncertainty_rhs = 0.0;
  double variance_additivity_residual = 0.0;

  bool conservation_holds() const;
  bool yanase_holds() const;
  // Names of the applicable inequalities that fail; empty when all hold.
  std::vector<std::string> violations() const;
};

// Everything above for one model, pair and input state. Bounds whose
// preconditions fail are left empty (yanase/spin/identity) or computed but
// not checked (fundamental bound without conservation).
BoundReport evaluate_bounds(const MeasurementModel& model,
                            const ConservationPair& pair, const Ket& psi);

}  // namespace waylimit

#endif  // WAYLIMIT_CONSERVATION_H_
