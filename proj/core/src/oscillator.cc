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

#include "waylimit/oscillator.h"

#include <cmath>
#include <sstream>

#include "waylimit/conservation.h"
#include "waylimit/errors.h"

namespace waylimit {
namespace {

void require_cutoff(double quanta, int n_max) {
  // Slack for amplitudes given as square roots of the intended quanta.
  if (quanta > n_max / 4.0 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "Fock cutoff n_max = " << n_max << " too small for " << quanta
       << " mean quanta (need quanta <= n_max/4)";
    throw PreconditionError(os.str());
  }
}

}  // namespace

FockSpace::FockSpace(int n_max) : n_max_(n_max) {
  if (n_max < 1) throw DimensionError("Fock cutoff must be at least 1");
}

Matrix FockSpace::annihilation() const {
  const int d = mode_dim();
  Matrix a = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Operator FockSpace::number() const {
  std::vector<double> n(mode_dim());
  for (int k = 0; k < mode_dim(); ++k) n[k] = k;
  return Operator::diagonal(n);
}

Ket coherent_state(Complex amp, int n_max) {
  if (n_max < 1) throw DimensionError("Fock cutoff must be at least 1");
  require_cutoff(std::norm(amp), n_max);
  Vector v(n_max + 1);
  v(0) = std::exp(-0.5 * std::norm(amp));
  for (int n = 1; n <= n_max; ++n) {
    v(n) = v(n - 1) * amp / std::sqrt(static_cast<double>(n));
  }
  return Ket::normalize(std::move(v));
}

Ket two_mode_coherent_state(const CoherentAmplitudes& amp,
                            const FockSpace& space) {
  require_cutoff(amp.mean_quanta(), space.n_max());
  return tensor(coherent_state(amp.alpha, space.n_max()),
                coherent_state(amp.beta, space.n_max()));
}

Operator m_z_operator(const FockSpace& space) {
  const int d = space.mode_dim();
  const Complex i(0.0, 1.0);
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  // a_x a_y† |n_x, n_y⟩ = √n_x √(n_y+1) |n_x-1, n_y+1⟩; the adjoint term
  // fills the transposed entry.
  for (int nx = 1; nx < d; ++nx) {
    for (int ny = 0; ny + 1 < d; ++ny) {
      double c = std::sqrt(static_cast<double>(nx) * (ny + 1));
      int from = nx * d + ny;
      int to = (nx - 1) * d + (ny + 1);
      m(to, from) += i * c;
      m(from, to) -= i * c;
    }
  }
  return Operator::hermitian(std::move(m), "m_z");
}

Operator total_number_operator(const FockSpace& space) {
  const Operator id = Operator::identity(space.mode_dim());
  return tensor(space.number(), id) + tensor(id, space.number());
}

double oscillator_bound(const CoherentAmplitudes& amp) {
  return optimal_spin_bound(amp.mean_quanta());
}

}  // namespace waylimit
