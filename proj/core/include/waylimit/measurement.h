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

#ifndef WAYLIMIT_MEASUREMENT_H_
#define WAYLIMIT_MEASUREMENT_H_

#include <vector>

#include "waylimit/operator.h"

namespace waylimit {

// Indirect measurement of an object observable A: the probe starts in xi,
// the interaction U acts on object ⊗ probe, then the probe observable M is
// read out precisely.
class MeasurementModel {
 public:
  // Validates dimensions, unitarity of U, hermiticity of A and M, and that
  // xi is normalized. Untagged operators are checked and tagged here.
  MeasurementModel(Operator a, Ket xi, Operator u, Operator m);

  int object_dim() const { return a_.dim(); }
  int probe_dim() const { return xi_.dim(); }
  int composite_dim() const { return u_.dim(); }
  const Operator& observable() const { return a_; }
  const Ket& probe_state() const { return xi_; }
  const Operator& interaction() const { return u_; }
  const Operator& probe_observable() const { return m_; }

  // ψ ⊗ ξ
  Ket initial_state(const Ket& psi) const;

 private:
  Operator a_;
  Ket xi_;
  Operator u_;
  Operator m_;
};

struct Outcome {
  double value;
  double probability;
};
using OutcomeDistribution = std::vector<Outcome>;

// U†(I ⊗ M)U
Operator heisenberg_probe(const MeasurementModel& model);

// One entry per spectral value of the recorded observable, ascending.
OutcomeDistribution outcome_distribution(const MeasurementModel& model,
                                         const Ket& psi);

// Probability that the outcome lies in the closed interval [lo, hi]; the
// interval is mapped to the spectral values of M it contains.
double interval_probability(const OutcomeDistribution& dist, double lo,
                            double hi);

// Born-rule probabilities of A in psi, one entry per spectral value of A.
OutcomeDistribution born_distribution(const Operator& a, const Ket& psi);

// Largest pointwise gap between the outcome distribution and the Born
// distribution of A. Values are matched within tol::kDegeneracy; outcomes
// that are not eigenvalues of A count with their full probability.
double bsf_deviation(const MeasurementModel& model, const Ket& psi);

// N = U†(I ⊗ M)U - A ⊗ I
Operator noise_operator(const MeasurementModel& model);

// ε(ψ) = ‖N(ψ ⊗ ξ)‖
double noise(const MeasurementModel& model, const Ket& psi);

// Object-space operator B = (I ⊗ ⟨ξ|) N² (I ⊗ |ξ⟩). ε(ψ)² = ⟨ψ|B|ψ⟩.
Operator noise_gram(const MeasurementModel& model);

// sup_ψ ε(ψ) = sqrt(λ_max(B)).
double sup_noise(const MeasurementModel& model);

// ε(ψ)² for spin-1/2 readouts; rejects A whose spectrum is not {-1/2, 1/2}.
double error_probability(const MeasurementModel& model, const Ket& psi);

}  // namespace waylimit

#endif  // WAYLIMIT_MEASUREMENT_H_
