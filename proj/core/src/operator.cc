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

#include "waylimit/operator.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "waylimit/errors.h"
#include "waylimit/tolerances.h"

namespace waylimit {
namespace {

void require_square(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream os;
    os << "operator must be square and non-empty, got " << m.rows() << "x"
       << m.cols();
    throw DimensionError(os.str());
  }
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(os.str());
  }
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

bool is_exactly_diagonal(const Matrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r != c && m(r, c) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

}  // namespace

Ket Ket::normalized(Vector amplitudes) {
  if (amplitudes.size() < 1) throw DimensionError("ket must be non-empty");
  double n = amplitudes.norm();
  if (!(std::abs(n - 1.0) < tol::kNorm)) {
    std::ostringstream os;
    os << "ket is not normalized (norm " << n << ")";
    throw InvariantError(os.str());
  }
  return Ket(std::move(amplitudes), true);
}

Ket Ket::normalize(Vector amplitudes) {
  if (amplitudes.size() < 1) throw DimensionError("ket must be non-empty");
  double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvariantError("cannot normalize a zero or non-finite vector");
  }
  amplitudes /= n;
  return Ket(std::move(amplitudes), true);
}

Ket Ket::unnormalized(Vector amplitudes) {
  if (amplitudes.size() < 1) throw DimensionError("ket must be non-empty");
  return Ket(std::move(amplitudes), false);
}

Ket Ket::basis(int dim, int index) {
  if (dim < 1 || index < 0 || index >= dim) {
    throw DimensionError("basis index out of range");
  }
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return Ket(std::move(v), true);
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  return (a - b).norm();
}

double hermiticity_residual(const Matrix& m) {
  return frobenius_distance(m, m.adjoint());
}

double unitarity_residual(const Matrix& m) {
  return frobenius_distance(m.adjoint() * m,
                            Matrix::Identity(m.rows(), m.cols()));
}

double idempotence_residual(const Matrix& m) {
  return frobenius_distance(m * m, m);
}

Operator::Operator(Matrix m, Structure tags) : m_(std::move(m)), tags_(tags) {
  require_square(m_);
  if (!m_.allFinite()) throw InvariantError("operator has non-finite entries");
}

Operator Operator::hermitian(Matrix m, const std::string& label) {
  require_square(m);
  double r = hermiticity_residual(m);
  if (!(r < tol::kStructure)) {
    std::ostringstream os;
    os << label << ": not hermitian (residual " << r << ")";
    throw InvariantError(os.str());
  }
  return Operator(symmetrize(m), Structure::kHermitian);
}

Operator Operator::unitary(Matrix m, const std::string& label) {
  require_square(m);
  double r = unitarity_residual(m);
  if (!(r < tol::kStructure)) {
    std::ostringstream os;
    os << label << ": not unitary (residual " << r << ")";
    throw InvariantError(os.str());
  }
  return Operator(std::move(m), Structure::kUnitary);
}

Operator Operator::projection(Matrix m, const std::string& label) {
  require_square(m);
  double rh = hermiticity_residual(m);
  double rp = idempotence_residual(m);
  if (!(rh < tol::kStructure) || !(rp < tol::kStructure)) {
    std::ostringstream os;
    os << label << ": not a projection (hermiticity " << rh
       << ", idempotence " << rp << ")";
    throw InvariantError(os.str());
  }
  return Operator(symmetrize(m), Structure::kHermitian | Structure::kProjection);
}

Operator Operator::identity(int dim) {
  if (dim < 1) throw DimensionError("identity dimension must be positive");
  return Operator(Matrix::Identity(dim, dim), Structure::kHermitian |
                                                  Structure::kUnitary |
                                                  Structure::kProjection);
}

Operator Operator::zero(int dim) {
  if (dim < 1) throw DimensionError("zero operator dimension must be positive");
  return Operator(Matrix::Zero(dim, dim),
                  Structure::kHermitian | Structure::kProjection);
}

Operator Operator::diagonal(const std::vector<double>& entries) {
  if (entries.empty()) throw DimensionError("diagonal must be non-empty");
  const int n = static_cast<int>(entries.size());
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = entries[i];
  return Operator(std::move(m), Structure::kHermitian);
}

Operator Operator::adjoint() const {
  // Projections and hermitian operators are self-adjoint; unitarity is
  // preserved by adjoint.
  return Operator(m_.adjoint(), tags_);
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_dim(a.dim(), b.dim(), "operator+");
  if (a.is_hermitian() && b.is_hermitian()) {
    return Operator(symmetrize(a.matrix() + b.matrix()), Structure::kHermitian);
  }
  return Operator(a.matrix() + b.matrix());
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_dim(a.dim(), b.dim(), "operator-");
  if (a.is_hermitian() && b.is_hermitian()) {
    return Operator(symmetrize(a.matrix() - b.matrix()), Structure::kHermitian);
  }
  return Operator(a.matrix() - b.matrix());
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a.dim(), b.dim(), "operator*");
  Structure tags = (a.is_unitary() && b.is_unitary()) ? Structure::kUnitary
                                                      : Structure::kNone;
  return Operator(a.matrix() * b.matrix(), tags);
}

Operator operator*(double s, const Operator& a) {
  Structure tags = a.is_hermitian() ? Structure::kHermitian : Structure::kNone;
  return Operator(s * a.matrix(), tags);
}

Operator conjugate_by(const Operator& u, const Operator& x) {
  require_same_dim(u.dim(), x.dim(), "conjugate_by");
  Matrix m = u.matrix().adjoint() * x.matrix() * u.matrix();
  if (x.is_hermitian()) return Operator(symmetrize(m), Structure::kHermitian);
  return Operator(std::move(m));
}

Operator tensor(const Operator& a, const Operator& b) {
  const int da = a.dim();
  const int db = b.dim();
  Matrix m(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      m.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
    }
  }
  return Operator(std::move(m), a.structure() & b.structure());
}

Ket tensor(const Ket& a, const Ket& b) {
  const int da = a.dim();
  const int db = b.dim();
  Vector v(da * db);
  for (int i = 0; i < da; ++i) {
    v.segment(i * db, db) = a[i] * b.amplitudes();
  }
  if (a.is_normalized() && b.is_normalized()) return Ket::normalize(std::move(v));
  return Ket::unnormalized(std::move(v));
}

Complex matrix_element(const Operator& x, const Ket& v) {
  require_same_dim(x.dim(), v.dim(), "matrix_element");
  return v.amplitudes().dot(x.matrix() * v.amplitudes());
}

double expectation(const Operator& x, const Ket& v) {
  if (!x.is_hermitian()) {
    throw InvariantError("expectation requires a hermitian operator");
  }
  if (!v.is_normalized()) {
    throw InvariantError("expectation requires a normalized ket");
  }
  Complex e = matrix_element(x, v);
  double scale = std::max(1.0, x.matrix().norm());
  if (!(std::abs(e.imag()) < tol::kImaginaryResidue * scale)) {
    std::ostringstream os;
    os << "expectation has imaginary residue " << e.imag();
    throw InvariantError(os.str());
  }
  return e.real();
}

double variance(const Operator& x, const Ket& v) {
  double mean = expectation(x, v);
  // ⟨X²⟩ = ‖Xv‖² for hermitian X.
  double second = (x.matrix() * v.amplitudes()).squaredNorm();
  double var = second - mean * mean;
  if (var < 0.0) {
    double scale = std::max(1.0, second);
    if (var < -tol::kVarianceClamp * scale) {
      std::ostringstream os;
      os << "variance is negative beyond tolerance: " << var;
      throw InvariantError(os.str());
    }
    var = 0.0;
  }
  return var;
}

Operator commutator(const Operator& x, const Operator& y) {
  require_same_dim(x.dim(), y.dim(), "commutator");
  return Operator(x.matrix() * y.matrix() - y.matrix() * x.matrix());
}

Operator SpectralDecomposition::reconstruct() const {
  if (projectors.empty()) throw DimensionError("empty decomposition");
  const int n = projectors.front().dim();
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    m += eigenvalues[k] * projectors[k].matrix();
  }
  return Operator::hermitian(std::move(m), "reconstruction");
}

SpectralDecomposition spectral(const Operator& x) {
  if (!x.is_hermitian()) {
    throw InvariantError("spectral decomposition requires a hermitian operator");
  }
  const int n = x.dim();
  Eigen::VectorXd values(n);
  Matrix vectors(n, n);
  if (is_exactly_diagonal(x.matrix())) {
    // Keeps the computational basis inside degenerate eigenspaces, so
    // diagonal operators get canonical eigenvectors.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return x(a, a).real() < x(b, b).real();
    });
    vectors.setZero();
    for (int k = 0; k < n; ++k) {
      values(k) = x(order[k], order[k]).real();
      vectors(order[k], k) = 1.0;
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(x.matrix());
    if (solver.info() != Eigen::Success) {
      throw InvariantError("eigendecomposition failed to converge");
    }
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  }

  SpectralDecomposition out;
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && values(end) - values(end - 1) < tol::kDegeneracy) ++end;
    const int width = end - start;
    double mean = values.segment(start, width).mean();
    Matrix basis = vectors.middleCols(start, width);
    out.eigenvalues.push_back(mean);
    out.projectors.push_back(
        Operator::projection(basis * basis.adjoint(), "spectral projector"));
    out.eigenspaces.push_back(std::move(basis));
    start = end;
  }
  return out;
}

}  // namespace waylimit
