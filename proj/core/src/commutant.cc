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

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "waylimit/errors.h"
#include "waylimit/optimizer.h"
#include "waylimit/tolerances.h"

namespace waylimit {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// exp(i h) for hermitian h.
Matrix exp_i_hermitian(const Matrix& h) {
  if (h.rows() == 1) {
    Matrix out(1, 1);
    out(0, 0) = std::exp(Complex(0.0, h(0, 0).real()));
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const Eigen::VectorXd& w = solver.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, w(k)));
  }
  const Matrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace

CommutantBasis::CommutantBasis(const Operator& l_tot)
    : dim_(l_tot.dim()), size_(0) {
  SpectralDecomposition sd = spectral(l_tot);
  for (int k = 0; k < sd.size(); ++k) {
    const int d = static_cast<int>(sd.eigenspaces[k].cols());
    sectors_.push_back({sd.eigenvalues[k], sd.eigenspaces[k], size_});
    size_ += d * d;
  }
}

Matrix CommutantBasis::sector_hamiltonian(int k,
                                          std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != size_) {
    std::ostringstream os;
    os << "theta: expected " << size_ << " coefficients, got " << theta.size();
    throw DimensionError(os.str());
  }
  const Sector& s = sectors_[k];
  const int d = static_cast<int>(s.basis.cols());
  Matrix h = Matrix::Zero(d, d);
  int g = s.offset;
  for (int i = 0; i < d; ++i) h(i, i) = theta[g++];
  const Complex i_unit(0.0, 1.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Complex c = kInvSqrt2 * (theta[g] + i_unit * theta[g + 1]);
      h(i, j) = c;
      h(j, i) = std::conj(c);
      g += 2;
    }
  }
  return h;
}

std::vector<Operator> CommutantBasis::generators() const {
  std::vector<Operator> out;
  out.reserve(size_);
  const Complex i_unit(0.0, 1.0);
  for (const Sector& s : sectors_) {
    const Matrix& b = s.basis;
    const int d = static_cast<int>(b.cols());
    for (int i = 0; i < d; ++i) {
      out.push_back(Operator::hermitian(b.col(i) * b.col(i).adjoint(),
                                        "commutant generator"));
    }
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        Matrix ij = b.col(i) * b.col(j).adjoint();
        out.push_back(Operator::hermitian(kInvSqrt2 * (ij + ij.adjoint()),
                                          "commutant generator"));
        out.push_back(Operator::hermitian(
            kInvSqrt2 * i_unit * (ij - ij.adjoint()), "commutant generator"));
      }
    }
  }
  return out;
}

CommutantBasis commutant_basis(const Operator& l_tot) {
  return CommutantBasis(l_tot);
}

Operator conservative_unitary(const CommutantBasis& basis,
                              std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != basis.size()) {
    std::ostringstream os;
    os << "theta: expected " << basis.size() << " coefficients, got "
       << theta.size();
    throw DimensionError(os.str());
  }
  Matrix u = Matrix::Zero(basis.dim(), basis.dim());
  for (int k = 0; k < basis.num_sectors(); ++k) {
    const Matrix& b = basis.sector_basis(k);
    u += b * exp_i_hermitian(basis.sector_hamiltonian(k, theta)) * b.adjoint();
  }
  return Operator::unitary(std::move(u), "conservative unitary");
}

std::vector<double> theta_from_unitary(const CommutantBasis& basis,
                                       const Operator& u) {
  if (u.dim() != basis.dim()) throw DimensionError("U: dimension mismatch");
  std::vector<double> theta(basis.size());
  double leakage = 0.0;
  int g = 0;
  for (int k = 0; k < basis.num_sectors(); ++k) {
    const Matrix& b = basis.sector_basis(k);
    const int d = static_cast<int>(b.cols());
    Matrix block = b.adjoint() * u.matrix() * b;
    // A conserving U maps each sector onto itself.
    leakage += (u.matrix() * b - b * block).squaredNorm();
    // Schur form of a normal matrix is diagonal with a unitary factor.
    Eigen::ComplexSchur<Matrix> schur(block);
    const Matrix& q = schur.matrixU();
    Vector args(d);
    for (int i = 0; i < d; ++i) args(i) = std::arg(schur.matrixT()(i, i));
    Matrix h = q * args.asDiagonal() * q.adjoint();
    for (int i = 0; i < d; ++i) theta[g++] = h(i, i).real();
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        theta[g++] = std::sqrt(2.0) * h(i, j).real();
        theta[g++] = std::sqrt(2.0) * h(i, j).imag();
      }
    }
  }
  if (!(std::sqrt(leakage) < tol::kConservationPrecondition)) {
    std::ostringstream os;
    os << "U does not preserve the conserved quantity (leakage "
       << std::sqrt(leakage) << ")";
    throw PreconditionError(os.str());
  }
  return theta;
}

Operator default_probe_observable(const Operator& l2) {
  if (!l2.is_hermitian()) return Operator::hermitian(l2.matrix(), "L2");
  return l2;
}

Operator parity_record(const Operator& l2) {
  SpectralDecomposition sd = spectral(l2);
  Matrix m = Matrix::Zero(l2.dim(), l2.dim());
  double sign = 0.5;
  for (int k = sd.size() - 1; k >= 0; --k) {
    m += sign * sd.projectors[k].matrix();
    sign = -sign;
  }
  return Operator::hermitian(std::move(m), "parity record");
}

}  // namespace waylimit
