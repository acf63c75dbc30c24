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

#include "waylimit/random.h"

#include <cmath>
#include <numbers>

#include "waylimit/errors.h"

namespace waylimit {

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + static_cast<int>(x % span);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

Complex Rng::complex_normal() {
  double re = normal();
  double im = normal();
  return {re, im};
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Ket random_ket(int dim, Rng& rng) {
  if (dim < 1) throw DimensionError("random_ket: dimension must be positive");
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  return Ket::normalize(std::move(v));
}

Operator random_hermitian(int dim, Rng& rng, double scale) {
  if (dim < 1) throw DimensionError("random_hermitian: dimension must be positive");
  Matrix g(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) g(r, c) = rng.complex_normal();
  }
  return Operator::hermitian(0.5 * scale * (g + g.adjoint()), "random hermitian");
}

Operator random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw DimensionError("random_unitary: dimension must be positive");
  Matrix g(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) g(r, c) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the phases of diag(R) makes Q Haar distributed.
  for (int k = 0; k < dim; ++k) {
    Complex d = r(k, k);
    double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return Operator::unitary(std::move(q), "random unitary");
}

Operator random_hermitian_with_spectrum(const std::vector<double>& spectrum,
                                        Rng& rng) {
  const int dim = static_cast<int>(spectrum.size());
  Operator v = random_unitary(dim, rng);
  Matrix d = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) d(k, k) = spectrum[k];
  return Operator::hermitian(v.matrix() * d * v.matrix().adjoint(),
                             "random hermitian");
}

Operator random_commuting_hermitian(const Operator& l, Rng& rng) {
  SpectralDecomposition sd = spectral(l);
  Operator h = random_hermitian(l.dim(), rng);
  Matrix out = Matrix::Zero(l.dim(), l.dim());
  for (const Operator& p : sd.projectors) {
    out += p.matrix() * h.matrix() * p.matrix();
  }
  return Operator::hermitian(std::move(out), "commuting hermitian");
}

}  // namespace waylimit
