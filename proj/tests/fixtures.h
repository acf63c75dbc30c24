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

#ifndef WAYLIMIT_TESTS_FIXTURES_H_
#define WAYLIMIT_TESTS_FIXTURES_H_

#include <vector>

#include "waylimit/conservation.h"
#include "waylimit/measurement.h"
#include "waylimit/optimizer.h"
#include "waylimit/random.h"
#include "waylimit/spin.h"

namespace waylimit::testing {

enum class Flavor { kGeneric, kSpin, kSwap };

struct Setup {
  MeasurementModel model;
  ConservationPair pair;
  Flavor flavor;
};

// Small integer spectrum so that L_tot has degenerate sectors.
inline Operator random_charge(int dim, Rng& rng) {
  std::vector<double> spectrum(dim);
  for (double& x : spectrum) x = rng.uniform_int(-1, 2);
  return random_hermitian_with_spectrum(spectrum, rng);
}

inline Operator random_conservative_unitary(const ConservationPair& pair,
                                            Rng& rng, double scale = 1.0) {
  CommutantBasis basis = commutant_basis(pair.total());
  std::vector<double> theta(basis.size());
  for (double& t : theta) t = scale * rng.normal();
  return conservative_unitary(basis, theta);
}

// Conservative model with [M, L2] = 0 unless yanase is false.
inline Setup random_setup(Rng& rng, int d1, int d2, Flavor flavor,
                          bool yanase = true) {
  if (flavor == Flavor::kSwap) {
    // U = SWAP conserves L⊗I + I⊗L; A = M makes the noise vanish.
    Operator l = random_charge(d1, rng);
    Operator a = random_commuting_hermitian(l, rng);
    ConservationPair pair(l, l);
    CommutantBasis basis = commutant_basis(pair.total());
    Operator u = conservative_unitary(
        basis, theta_from_unitary(basis, swap_gate(d1)));
    return {MeasurementModel(a, random_ket(d1, rng), u, a), pair, flavor};
  }
  const bool spin = flavor == Flavor::kSpin;
  if (spin) d1 = 2;
  Operator l1 = spin ? spin_half().z : random_charge(d1, rng);
  Operator a = spin ? spin_half().x : random_hermitian(d1, rng);
  Operator l2 = random_charge(d2, rng);
  Operator m = yanase ? random_commuting_hermitian(l2, rng)
                      : random_hermitian(d2, rng);
  ConservationPair pair(l1, l2);
  Operator u = random_conservative_unitary(pair, rng);
  return {MeasurementModel(a, random_ket(d2, rng), u, m), pair, flavor};
}

// Valid YW data on a probe of dimension d ≥ 2 with spectrum of M in [-1/2, 1/2].
inline YWModel random_yw_model(int d, Rng& rng) {
  std::vector<double> spectrum(d);
  spectrum[0] = 0.5;
  spectrum[1] = -0.5;
  for (int k = 2; k < d; ++k) spectrum[k] = rng.uniform(-0.5, 0.5);
  Operator m = random_hermitian_with_spectrum(spectrum, rng);
  SpectralDecomposition sd = spectral(m);
  const Matrix& p_minus = sd.projectors.front().matrix();
  const Matrix& p_plus = sd.projectors.back().matrix();
  auto direction = [&](const Matrix& p) {
    Vector v = p * random_ket(d, rng).amplitudes();
    return Vector(v / v.norm());
  };
  for (;;) {
    const double c_plus = rng.uniform(), c_minus = rng.uniform();
    const double s_plus = std::sqrt(1.0 - c_plus * c_plus);
    const double s_minus = std::sqrt(1.0 - c_minus * c_minus);
    Vector xi_plus = c_plus * direction(p_plus);
    Vector xi_minus = c_minus * direction(p_minus);
    Vector eta_plus = s_plus * random_ket(d, rng).amplitudes();
    // η⁻ = (κ/‖ξ⁺‖²)ξ⁺ + w with w ⊥ ξ⁺ fixes ⟨ξ⁺,η⁻⟩ = κ = -⟨η⁺,ξ⁻⟩.
    const Complex kappa = -eta_plus.dot(xi_minus);
    const double along = std::norm(kappa) / (c_plus * c_plus);
    if (along > s_minus * s_minus) continue;
    Vector w = random_ket(d, rng).amplitudes();
    w -= (xi_plus.dot(w) / (c_plus * c_plus)) * xi_plus;
    w *= std::sqrt(s_minus * s_minus - along) / w.norm();
    Vector eta_minus = (kappa / (c_plus * c_plus)) * xi_plus + w;
    return YWModel(random_ket(d, rng), Ket::unnormalized(xi_plus),
                   Ket::unnormalized(xi_minus), Ket::unnormalized(eta_plus),
                   Ket::unnormalized(eta_minus), m);
  }
}

}  // namespace waylimit::testing

#endif  // WAYLIMIT_TESTS_FIXTURES_H_
