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

#ifndef WAYLIMIT_OSCILLATOR_H_
#define WAYLIMIT_OSCILLATOR_H_

#include "waylimit/operator.h"

namespace waylimit {

// Two bosonic modes (x, y), each truncated at n_max quanta. The composite
// index is n_x * (n_max + 1) + n_y.
class FockSpace {
 public:
  explicit FockSpace(int n_max);

  int n_max() const { return n_max_; }
  int mode_dim() const { return n_max_ + 1; }
  int dim() const { return mode_dim() * mode_dim(); }

  // Single-mode annihilation operator, a|n⟩ = √n |n-1⟩.
  Matrix annihilation() const;
  Operator number() const;

 private:
  int n_max_;
};

struct CoherentAmplitudes {
  Complex alpha;
  Complex beta;

  double mean_quanta() const { return std::norm(alpha) + std::norm(beta); }
};

// Truncated coherent state e^{-|a|²/2} Σ aⁿ/√n! |n⟩, renormalized.
// Requires |amp|² ≤ n_max / 4.
Ket coherent_state(Complex amp, int n_max);

// |α⟩ ⊗ |β⟩; requires |α|² + |β|² ≤ n_max / 4.
Ket two_mode_coherent_state(const CoherentAmplitudes& amp,
                            const FockSpace& space);

// m_z = i(a_x a_y† - a_x† a_y). In the product coherent state
// ⟨m_z⟩ = 2 Im(conj(α) β) and Δ²m_z = |α|² + |β|².
Operator m_z_operator(const FockSpace& space);

// n_x + n_y
Operator total_number_operator(const FockSpace& space);

// 1 / (4 + 16(|α|² + |β|²))
double oscillator_bound(const CoherentAmplitudes& amp);

}  // namespace waylimit

#endif  // WAYLIMIT_OSCILLATOR_H_
