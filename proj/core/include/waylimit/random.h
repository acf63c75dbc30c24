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

#ifndef WAYLIMIT_RANDOM_H_
#define WAYLIMIT_RANDOM_H_

#include <cstdint>
#include <random>
#include <vector>

#include "waylimit/operator.h"

namespace waylimit {

// Seeded generator whose output sequence depends only on the seed. The
// distributions are implemented here instead of using <random>'s, whose
// algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Inclusive range.
  int uniform_int(int lo, int hi);
  double normal();
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Decorrelated seed for stream `stream` of a run seeded with `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// Haar-random normalized ket.
Ket random_ket(int dim, Rng& rng);
// GUE-distributed hermitian operator with entry scale `scale`.
Operator random_hermitian(int dim, Rng& rng, double scale = 1.0);
// Haar-random unitary.
Operator random_unitary(int dim, Rng& rng);
// V diag(spectrum) V† with Haar-random V.
Operator random_hermitian_with_spectrum(const std::vector<double>& spectrum,
                                        Rng& rng);
// Σ_k P_k H P_k for random hermitian H and the spectral projectors P_k of
// `l`; a generic element of the hermitian commutant of `l`.
Operator random_commuting_hermitian(const Operator& l, Rng& rng);

}  // namespace waylimit

#endif  // WAYLIMIT_RANDOM_H_
