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

#ifndef WAYLIMIT_OPERATOR_H_
#define WAYLIMIT_OPERATOR_H_

// Dense complex linear algebra for finite-dimensional quantum mechanics.
//
// Units: hbar = 1 everywhere. Composite spaces are ordered object ⊗ probe
// with the probe index varying fastest, i.e. basis index = i_obj * d_probe +
// i_probe. Every value type here is immutable after construction.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace waylimit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Structure : std::uint8_t {
  kNone = 0,
  kHermitian = 1 << 0,
  kUnitary = 1 << 1,
  kProjection = 1 << 2,
};

constexpr Structure operator|(Structure a, Structure b) {
  return static_cast<Structure>(static_cast<std::uint8_t>(a) |
                                static_cast<std::uint8_t>(b));
}
constexpr Structure operator&(Structure a, Structure b) {
  return static_cast<Structure>(static_cast<std::uint8_t>(a) &
                                static_cast<std::uint8_t>(b));
}
constexpr bool has(Structure set, Structure flag) {
  return (set & flag) == flag && flag != Structure::kNone;
}

// A state vector. Kets are normalized unless explicitly created with
// Ket::unnormalized (the Yanase-Wigner branch vectors are the only users).
class Ket {
 public:
  // Requires | ‖v‖ - 1 | < tol::kNorm.
  static Ket normalized(Vector amplitudes);
  // Rescales to unit norm. Throws on the zero vector.
  static Ket normalize(Vector amplitudes);
  static Ket unnormalized(Vector amplitudes);
  static Ket basis(int dim, int index);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  bool is_normalized() const { return normalized_; }
  double norm() const { return amplitudes_.norm(); }
  Complex operator[](int i) const { return amplitudes_(i); }

 private:
  Ket(Vector amplitudes, bool normalized)
      : amplitudes_(std::move(amplitudes)), normalized_(normalized) {}

  Vector amplitudes_;
  bool normalized_;
};

// Square complex matrix with validated structure tags. The named
// constructors check the tag against tol::kStructure and throw
// InvariantError (mentioning `label`) on failure.
class Operator {
 public:
  explicit Operator(Matrix m, Structure tags = Structure::kNone);

  static Operator hermitian(Matrix m, const std::string& label = "operator");
  static Operator unitary(Matrix m, const std::string& label = "operator");
  static Operator projection(Matrix m, const std::string& label = "operator");
  static Operator identity(int dim);
  static Operator zero(int dim);
  static Operator diagonal(const std::vector<double>& entries);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }
  Structure structure() const { return tags_; }
  bool is_hermitian() const { return has(tags_, Structure::kHermitian); }
  bool is_unitary() const { return has(tags_, Structure::kUnitary); }
  bool is_projection() const { return has(tags_, Structure::kProjection); }

  Operator adjoint() const;
  Vector apply(const Vector& v) const { return m_ * v; }

 private:
  Matrix m_;
  Structure tags_;
};

// Residuals used by the tag checks; exposed for tests and reports.
double frobenius_distance(const Matrix& a, const Matrix& b);
double hermiticity_residual(const Matrix& m);
double unitarity_residual(const Matrix& m);
double idempotence_residual(const Matrix& m);

// Tags survive arithmetic only where the algebra guarantees them; hermitian
// results are re-symmetrized so rounding never accumulates asymmetry.
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(double s, const Operator& a);

// U† X U; hermitian if X is.
Operator conjugate_by(const Operator& u, const Operator& x);

// Kronecker product, first factor is the slow index.
Operator tensor(const Operator& a, const Operator& b);
Ket tensor(const Ket& a, const Ket& b);

// ⟨v|X|v⟩ for any X (no tag requirement).
Complex matrix_element(const Operator& x, const Ket& v);

// ⟨v|X|v⟩ for hermitian X and normalized v.
double expectation(const Operator& x, const Ket& v);

// ⟨X²⟩ - ⟨X⟩², clamped at zero when within -tol::kVarianceClamp.
double variance(const Operator& x, const Ket& v);

Operator commutator(const Operator& x, const Operator& y);

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending, one per spectral value
  std::vector<Operator> projectors;
  // Orthonormal columns spanning each eigenspace; projector k = B_k B_k†.
  std::vector<Matrix> eigenspaces;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  Operator reconstruct() const;
};

// Eigenvalues closer than tol::kDegeneracy (chained) are merged into a
// single spectral value (their mean) with one projector.
SpectralDecomposition spectral(const Operator& x);

}  // namespace waylimit

#endif  // WAYLIMIT_OPERATOR_H_
