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

#include "waylimit/spin.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "waylimit/errors.h"
#include "waylimit/tolerances.h"

namespace waylimit {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Ket ket2(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return Ket::normalize(std::move(v));
}

}  // namespace

const SpinOperators& spin_half() {
  static const SpinOperators ops = [] {
    const Complex i(0.0, 1.0);
    Matrix x(2, 2), y(2, 2), z(2, 2);
    x << 0.0, 0.5, 0.5, 0.0;
    y << 0.0, -0.5 * i, 0.5 * i, 0.0;
    z << 0.5, 0.0, 0.0, -0.5;
    return SpinOperators{Operator::hermitian(x, "S_x"),
                         Operator::hermitian(y, "S_y"),
                         Operator::hermitian(z, "S_z")};
  }();
  return ops;
}

SpinBasis spin_basis(Axis axis) {
  const Complex i(0.0, 1.0);
  switch (axis) {
    case Axis::kX:
      return {axis, ket2(kInvSqrt2, kInvSqrt2), ket2(kInvSqrt2, -kInvSqrt2)};
    case Axis::kY:
      return {axis, ket2(kInvSqrt2, kInvSqrt2 * i),
              ket2(kInvSqrt2, -kInvSqrt2 * i)};
    case Axis::kZ:
      return {axis, Ket::basis(2, 0), Ket::basis(2, 1)};
  }
  throw std::logic_error("unknown axis");
}

Operator spin_ladder_z(int dim) {
  if (dim < 1) throw DimensionError("spin ladder dimension must be positive");
  const double j = 0.5 * (dim - 1);
  std::vector<double> m(dim);
  for (int k = 0; k < dim; ++k) m[k] = j - k;
  return Operator::diagonal(m);
}

Operator spin_ladder_x(int dim) {
  if (dim < 1) throw DimensionError("spin ladder dimension must be positive");
  const double j = 0.5 * (dim - 1);
  Matrix x = Matrix::Zero(dim, dim);
  // J+ |m⟩ = sqrt(j(j+1) - m(m+1)) |m+1⟩, and |m+1⟩ sits one index lower.
  for (int k = 1; k < dim; ++k) {
    double m = j - k;
    double c = 0.5 * std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    x(k - 1, k) = c;
    x(k, k - 1) = c;
  }
  return Operator::hermitian(std::move(x), "J_x");
}

Ket spin_coherent_x(int dim) {
  if (dim < 1) throw DimensionError("spin ladder dimension must be positive");
  const int n = dim - 1;
  Vector v(dim);
  for (int k = 0; k < dim; ++k) {
    double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                       std::lgamma(n - k + 1.0);
    v(k) = std::exp(0.5 * log_binom - 0.5 * n * std::log(2.0));
  }
  return Ket::normalize(std::move(v));
}

Operator swap_gate(int dim) {
  if (dim < 1) throw DimensionError("swap dimension must be positive");
  Matrix u = Matrix::Zero(dim * dim, dim * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) u(j * dim + i, i * dim + j) = 1.0;
  }
  return Operator::unitary(std::move(u), "SWAP");
}

Operator cnot_gate() {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(2, 3) = 1.0;
  u(3, 2) = 1.0;
  return Operator::unitary(std::move(u), "CNOT");
}

DemoModel swap_demo_model() {
  const SpinOperators& s = spin_half();
  return {"swap",
          "SWAP interaction recording S_x; conserves total S_z, noiseless, "
          "violates [M, L2] = 0",
          MeasurementModel(s.x, alpha(Axis::kX), swap_gate(2), s.x),
          ConservationPair(s.z, s.z)};
}

DemoModel trivial_demo_model() {
  const SpinOperators& s = spin_half();
  return {"trivial", "no interaction and a null record; noise equals S_x",
          MeasurementModel(s.x, alpha(Axis::kZ), Operator::identity(4),
                           Operator::zero(2)),
          ConservationPair(s.z, s.z)};
}

DemoModel cnot_demo_model() {
  const SpinOperators& s = spin_half();
  return {"cnot", "CNOT copy of S_z into the probe; breaks total S_z",
          MeasurementModel(s.z, alpha(Axis::kZ), cnot_gate(), s.z),
          ConservationPair(s.z, s.z)};
}

YWModel::Residuals YWModel::residuals(const Ket& xi_plus, const Ket& xi_minus,
                                      const Ket& eta_plus,
                                      const Ket& eta_minus,
                                      const Operator& m) {
  const Vector& xp = xi_plus.amplitudes();
  const Vector& xm = xi_minus.amplitudes();
  const Vector& ep = eta_plus.amplitudes();
  const Vector& em = eta_minus.amplitudes();
  Residuals r;
  r.isometry_plus = std::abs(xp.squaredNorm() + ep.squaredNorm() - 1.0);
  r.isometry_minus = std::abs(xm.squaredNorm() + em.squaredNorm() - 1.0);
  r.orthogonality = std::abs(xp.dot(em) + ep.dot(xm));
  r.eigen_plus = (m.matrix() * xp - 0.5 * xp).norm();
  r.eigen_minus = (m.matrix() * xm + 0.5 * xm).norm();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(),
                                               Eigen::EigenvaluesOnly);
  double radius = solver.eigenvalues().cwiseAbs().maxCoeff();
  r.spectrum_excess = std::max(0.0, radius - 0.5);
  return r;
}

YWModel::YWModel(Ket xi, Ket xi_plus, Ket xi_minus, Ket eta_plus,
                 Ket eta_minus, Operator m)
    : xi_(std::move(xi)),
      xi_plus_(std::move(xi_plus)),
      xi_minus_(std::move(xi_minus)),
      eta_plus_(std::move(eta_plus)),
      eta_minus_(std::move(eta_minus)),
      m_(m.is_hermitian() ? std::move(m) : Operator::hermitian(m.matrix(), "M")) {
  const int d = xi_.dim();
  for (const Ket* k : {&xi_plus_, &xi_minus_, &eta_plus_, &eta_minus_}) {
    if (k->dim() != d) throw DimensionError("YW vectors must share the probe dimension");
  }
  if (m_.dim() != d) throw DimensionError("M: probe dimension mismatch");
  if (!xi_.is_normalized()) throw InvariantError("xi: not normalized");
  Residuals r = residuals(xi_plus_, xi_minus_, eta_plus_, eta_minus_, m_);
  auto check = [](double value, const char* what) {
    if (!(value < tol::kStructure)) {
      std::ostringstream os;
      os << "YW model: " << what << " violated (residual " << value << ")";
      throw InvariantError(os.str());
    }
  };
  check(r.isometry_plus, "isometry of the alpha_x branch");
  check(r.isometry_minus, "isometry of the beta_x branch");
  check(r.orthogonality, "orthogonality of the branch images");
  check(r.eigen_plus, "M xi+ = +xi+/2");
  check(r.eigen_minus, "M xi- = -xi-/2");
  check(r.spectrum_excess, "spectrum of M within [-1/2, 1/2]");
}

double yw_eps_y(const YWModel& yw) {
  return yw.eta_plus().amplitudes().squaredNorm() +
         yw.eta_minus().amplitudes().squaredNorm();
}

double yw_error_at_alpha_y(const YWModel& yw) {
  const Matrix& m = yw.probe_observable().matrix();
  const Vector& ep = yw.eta_plus().amplitudes();
  const Vector& em = yw.eta_minus().amplitudes();
  return 0.5 * (m * ep - 0.5 * ep).squaredNorm() +
         0.5 * (m * em + 0.5 * em).squaredNorm();
}

YWBoundCheck yw_check_bound(const YWModel& yw, double var_mz) {
  BoundComparison b = bound_comparison(var_mz, 0.0);
  double eps = yw_eps_y(yw);
  return {eps, b.new_bound, eps >= b.new_bound - tol::kBound};
}

YWModel yw_sample_model() {
  const double c = std::sqrt(0.95);
  const double s = std::sqrt(0.05);
  const Vector up = alpha(Axis::kZ).amplitudes();
  const Vector down = beta(Axis::kZ).amplitudes();
  return YWModel(alpha(Axis::kX), Ket::unnormalized(c * up),
                 Ket::unnormalized(c * down), Ket::unnormalized(s * down),
                 Ket::unnormalized(-s * up), spin_half().z);
}

}  // namespace waylimit
