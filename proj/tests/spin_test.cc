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
#include <vector>

#include <gtest/gtest.h>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "fixtures.h"
#include "oracles.h"
#include "waylimit/conservation.h"
#include "waylimit/errors.h"
#include "waylimit/measurement.h"
#include "waylimit/optimizer.h"
#include "waylimit/random.h"
#include "waylimit/spin.h"

namespace waylimit {
namespace {

const SpinOperators& S() { return spin_half(); }

TEST(SpinOperators, MatchHandWrittenMatrices) {
  EXPECT_EQ(S().x.matrix(), oracle::sx());
  EXPECT_EQ(S().y.matrix(), oracle::sy());
  EXPECT_EQ(S().z.matrix(), oracle::sz());
}

TEST(SpinOperators, SpectraAreHalfIntegers) {
  for (const Operator* s : {&S().x, &S().y, &S().z}) {
    SpectralDecomposition sd = spectral(*s);
    ASSERT_EQ(sd.size(), 2);
    EXPECT_NEAR(sd.eigenvalues[0], -0.5, 1e-15);
    EXPECT_NEAR(sd.eigenvalues[1], 0.5, 1e-15);
  }
}

TEST(SpinOperators, CommutationRelations) {
  const Complex i(0.0, 1.0);
  EXPECT_LT(frobenius_distance(commutator(S().x, S().z).matrix(),
                               -i * S().y.matrix()),
            1e-12);
  EXPECT_LT(frobenius_distance(commutator(S().x, S().y).matrix(),
                               i * S().z.matrix()),
            1e-12);
  EXPECT_LT(frobenius_distance(commutator(S().y, S().z).matrix(),
                               i * S().x.matrix()),
            1e-12);
  EXPECT_LT(frobenius_distance(commutator(S().z, S().x).matrix(),
                               i * S().y.matrix()),
            1e-12);
}

TEST(SpinOperators, SquaresAreQuarterIdentity) {
  for (const Operator* s : {&S().x, &S().y, &S().z})
    EXPECT_LT(frobenius_distance((*s * *s).matrix(),
                                 0.25 * Matrix::Identity(2, 2)),
              1e-15);
}

TEST(SpinBasis, Eigenkets) {
  for (Axis axis : {Axis::kX, Axis::kY, Axis::kZ}) {
    const Operator& s =
        axis == Axis::kX ? S().x : axis == Axis::kY ? S().y : S().z;
    SpinBasis b = spin_basis(axis);
    EXPECT_LT((s.apply(b.up.amplitudes()) - 0.5 * b.up.amplitudes()).norm(),
              1e-15);
    EXPECT_LT(
        (s.apply(b.down.amplitudes()) + 0.5 * b.down.amplitudes()).norm(),
        1e-15);
    EXPECT_LT(std::abs(b.up.amplitudes().dot(b.down.amplitudes())), 1e-15);
    EXPECT_TRUE(b.up.is_normalized());
  }
}

TEST(SpinBasis, AlphaYFromXBasis) {
  const Complex i(0.0, 1.0);
  Vector lhs = 2.0 * alpha(Axis::kY).amplitudes();
  Vector rhs = (1.0 + i) * alpha(Axis::kX).amplitudes() +
               (1.0 - i) * beta(Axis::kX).amplitudes();
  EXPECT_LT((lhs - rhs).norm(), 1e-12);
}

TEST(SpinLadder, QubitLadderIsSpinHalf) {
  EXPECT_LT(frobenius_distance(spin_ladder_z(2).matrix(), oracle::sz()),
            1e-15);
  EXPECT_LT(frobenius_distance(spin_ladder_x(2).matrix(), oracle::sx()),
            1e-15);
}

TEST(SpinLadder, LadderAlgebra) {
  for (int d = 1; d <= 9; ++d) {
    Matrix jz = spin_ladder_z(d).matrix();
    Matrix jx = spin_ladder_x(d).matrix();
    // J_y from [J_z, J_x] = i J_y, then the Casimir must be j(j+1).
    Matrix jy = (jz * jx - jx * jz) / Complex(0.0, 1.0);
    const double j = 0.5 * (d - 1);
    Matrix casimir = jx * jx + jy * jy + jz * jz;
    EXPECT_LT(frobenius_distance(casimir, j * (j + 1) * Matrix::Identity(d, d)),
              1e-12)
        << "dim " << d;
    EXPECT_NEAR(jz(0, 0).real(), j, 1e-15);
  }
}

TEST(SpinLadder, CoherentStateAlongX) {
  for (int d = 1; d <= 9; ++d) {
    Ket xi = spin_coherent_x(d);
    const double j = 0.5 * (d - 1);
    EXPECT_NEAR(expectation(spin_ladder_x(d), xi), j, 1e-12);
    EXPECT_NEAR(variance(spin_ladder_z(d), xi), 0.5 * j, 1e-12);
  }
}

TEST(SwapGate, MatchesHandWrittenAndExchangesFactors) {
  EXPECT_EQ(swap_gate(2).matrix(), oracle::swap4());
  EXPECT_EQ(cnot_gate().matrix(), oracle::cnot4());
  Rng rng(51);
  Ket a = random_ket(3, rng), b = random_ket(3, rng);
  Vector swapped = swap_gate(3).apply(tensor(a, b).amplitudes());
  EXPECT_LT((swapped - tensor(b, a).amplitudes()).norm(), 1e-15);
}

TEST(SwapDemo, WitnessOfNoiselessConservativeMeasurement) {
  DemoModel demo = swap_demo_model();
  EXPECT_LT(acl_residual(demo.model, demo.pair), 1e-12);
  EXPECT_LT(sup_noise(demo.model), 1e-12);
  EXPECT_NEAR(yanase_residual(demo.model.probe_observable(),
                              demo.pair.probe_part()),
              1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_GT(yanase_residual(demo.model.probe_observable(),
                            demo.pair.probe_part()),
            0.1);
}

TEST(TrivialDemo, NoiseEqualsObservable) {
  DemoModel demo = trivial_demo_model();
  EXPECT_EQ(demo.model.interaction().matrix(), Matrix::Identity(4, 4));
  EXPECT_NEAR(sup_noise(demo.model), 0.5, 1e-15);
  EXPECT_NEAR(error_probability(demo.model, alpha(Axis::kY)), 0.25, 1e-15);
  EXPECT_LT(acl_residual(demo.model, demo.pair), 1e-15);
}

TEST(CnotDemo, PreciseButNotConservative) {
  DemoModel demo = cnot_demo_model();
  EXPECT_LT(sup_noise(demo.model), 1e-15);
  EXPECT_GT(acl_residual(demo.model, demo.pair), 0.5);
}

TEST(YWModel, RejectsInvalidData) {
  const double c = std::sqrt(0.9), s = std::sqrt(0.1);
  auto un = [](const Vector& v) { return Ket::unnormalized(v); };
  Vector up = alpha(Axis::kZ).amplitudes(), dn = beta(Axis::kZ).amplitudes();
  // Isometry broken.
  EXPECT_THROW(YWModel(alpha(Axis::kX), un(c * up), un(c * dn), un(0.5 * dn),
                       un(-s * up), S().z),
               InvariantError);
  // ξ⁺ not an M = +1/2 eigenvector.
  EXPECT_THROW(YWModel(alpha(Axis::kX), un(c * dn), un(c * dn), un(s * up),
                       un(-s * up), S().z),
               InvariantError);
  // Orthogonality broken: ⟨ξ⁺,η⁻⟩ = cs.
  EXPECT_THROW(YWModel(alpha(Axis::kX), un(c * up), un(c * dn), un(s * dn),
                       un(s * up), S().z),
               InvariantError);
  // Record outside [-1/2, 1/2].
  EXPECT_THROW(YWModel(alpha(Axis::kX), un(c * up), un(c * dn), un(s * dn),
                       un(-s * up), Operator::diagonal({0.5, -1.0})),
               InvariantError);
}

TEST(YWModel, PerfectMeasurement) {
  auto un = [](const Vector& v) { return Ket::unnormalized(v); };
  YWModel yw(alpha(Axis::kX), un(alpha(Axis::kZ).amplitudes()),
             un(beta(Axis::kZ).amplitudes()), un(Vector::Zero(2)),
             un(Vector::Zero(2)), S().z);
  EXPECT_EQ(yw_eps_y(yw), 0.0);
  EXPECT_EQ(yw_error_at_alpha_y(yw), 0.0);
}

TEST(YWModel, SampleHasGivenUnsuccessfulProbability) {
  YWModel yw = yw_sample_model();
  EXPECT_NEAR(yw.eta_plus().amplitudes().squaredNorm(), 0.05, 1e-15);
  EXPECT_NEAR(yw.eta_minus().amplitudes().squaredNorm(), 0.05, 1e-15);
  EXPECT_NEAR(yw_eps_y(yw), 0.1, 1e-15);
  YWModel::Residuals r =
      YWModel::residuals(yw.xi_plus(), yw.xi_minus(), yw.eta_plus(),
                         yw.eta_minus(), yw.probe_observable());
  EXPECT_LT(r.isometry_plus, 1e-15);
  EXPECT_LT(r.isometry_minus, 1e-15);
  EXPECT_LT(r.orthogonality, 1e-15);
}

TEST(YWModel, RecordedEigenErrorsAreNoiseFree) {
  // η± inside the matching M eigenspaces: ε_Y > 0 while ε(α_y) = 0.
  const double c = std::sqrt(0.8), s = std::sqrt(0.2);
  auto un = [](const Vector& v) { return Ket::unnormalized(v); };
  Vector up = alpha(Axis::kZ).amplitudes(), dn = beta(Axis::kZ).amplitudes();
  YWModel yw(alpha(Axis::kX), un(c * up), un(c * dn), un(s * up), un(s * dn),
             S().z);
  EXPECT_NEAR(yw_eps_y(yw), 0.4, 1e-15);
  EXPECT_NEAR(yw_error_at_alpha_y(yw), 0.0, 1e-15);
}

TEST(YWModel, ClosedFormMatchesFullUnitaryNoise) {
  Rng rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    YWModel yw = testing::random_yw_model(rng.uniform_int(2, 5), rng);
    Operator u = Operator::unitary(oracle::yw_extension(yw), "extension");
    MeasurementModel model(S().x, yw.probe_state(), u, yw.probe_observable());
    EXPECT_NEAR(std::pow(noise(model, alpha(Axis::kY)), 2),
                yw_error_at_alpha_y(yw), 1e-12);
    // ε_Y² is the unsuccessful probability computed from U directly.
    Vector out_plus =
        u.apply(tensor(alpha(Axis::kX), yw.probe_state()).amplitudes());
    Vector out_minus =
        u.apply(tensor(beta(Axis::kX), yw.probe_state()).amplitudes());
    const int d = yw.probe_dim();
    const Vector bx = beta(Axis::kX).amplitudes();
    const Vector ax = alpha(Axis::kX).amplitudes();
    double brute = (std::conj(bx(0)) * out_plus.head(d) +
                    std::conj(bx(1)) * out_plus.tail(d))
                       .squaredNorm() +
                   (std::conj(ax(0)) * out_minus.head(d) +
                    std::conj(ax(1)) * out_minus.tail(d))
                       .squaredNorm();
    EXPECT_NEAR(brute, yw_eps_y(yw), 1e-12);
  }
}

TEST(YWModel, ErrorIsAtMostHalfUnsuccessfulProbability) {
  Rng rng(53);
  for (int trial = 0; trial < 500; ++trial) {
    YWModel yw = testing::random_yw_model(rng.uniform_int(2, 8), rng);
    double eps_y = yw_eps_y(yw);
    EXPECT_GE(eps_y, 0.0);
    EXPECT_LE(eps_y, 2.0);
    EXPECT_LE(2.0 * yw_error_at_alpha_y(yw), eps_y + 1e-10);
  }
}

TEST(YWCheckBound, Substitution) {
  YWModel yw = yw_sample_model();
  YWBoundCheck zero = yw_check_bound(yw, 0.0);
  EXPECT_DOUBLE_EQ(zero.rhs, 0.5);
  EXPECT_FALSE(zero.pass);
  YWBoundCheck one = yw_check_bound(yw, 1.0);
  EXPECT_DOUBLE_EQ(one.rhs, 0.1);
  EXPECT_NEAR(one.eps_y_sq, 0.1, 1e-15);
  EXPECT_TRUE(one.pass);
  EXPECT_THROW(yw_check_bound(yw, -1.0), PreconditionError);
}

// Finds conservative interactions of YW form: U(α_x⊗ξ) has its α_x
// component in the M = +1/2 eigenspace and U(β_x⊗ξ) has its β_x component
// in the M = -1/2 eigenspace. A first pass penalizes η± so that the
// resulting ε_Y is small, a second pass drops the penalty and solves the
// eigenspace conditions to machine precision.
struct YWEmbedding {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum {
    InputsAtCompileTime = Eigen::Dynamic,
    ValuesAtCompileTime = Eigen::Dynamic
  };

  const CommutantBasis* basis;
  int d;
  Matrix p_plus, p_minus;
  double penalty = 0.0;

  int inputs() const { return basis->size() + 2 * d; }
  int values() const { return std::max(8 * d, inputs()); }

  Matrix unitary(const Eigen::VectorXd& x) const {
    std::vector<double> theta(x.data(), x.data() + basis->size());
    return conservative_unitary(*basis, theta).matrix();
  }
  Vector xi(const Eigen::VectorXd& x) const {
    Vector v(d);
    for (int i = 0; i < d; ++i)
      v(i) = Complex(x(basis->size() + 2 * i), x(basis->size() + 2 * i + 1));
    return v / v.norm();
  }
  // (⟨o|⊗I) U (i⊗ξ)
  Vector component(const Matrix& u, const Vector& xi, const Vector& in,
                   const Vector& out) const {
    Vector w = u * tensor(Ket::unnormalized(in), Ket::unnormalized(xi))
                       .amplitudes();
    return std::conj(out(0)) * w.head(d) + std::conj(out(1)) * w.tail(d);
  }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const Matrix u = unitary(x);
    const Vector v = xi(x);
    const Vector ax = alpha(Axis::kX).amplitudes();
    const Vector bx = beta(Axis::kX).amplitudes();
    Vector phi_plus = component(u, v, ax, ax);
    Vector phi_minus = component(u, v, bx, bx);
    Vector r_plus = phi_plus - p_plus * phi_plus;
    Vector r_minus = phi_minus - p_minus * phi_minus;
    Vector eta_plus = component(u, v, ax, bx);
    Vector eta_minus = component(u, v, bx, ax);
    f.setZero();
    for (int i = 0; i < d; ++i) {
      f(4 * i) = r_plus(i).real();
      f(4 * i + 1) = r_plus(i).imag();
      f(4 * i + 2) = r_minus(i).real();
      f(4 * i + 3) = r_minus(i).imag();
      f(4 * d + 4 * i) = penalty * eta_plus(i).real();
      f(4 * d + 4 * i + 1) = penalty * eta_plus(i).imag();
      f(4 * d + 4 * i + 2) = penalty * eta_minus(i).real();
      f(4 * d + 4 * i + 3) = penalty * eta_minus(i).imag();
    }
    return 0;
  }

  void minimize(Eigen::VectorXd& x) {
    Eigen::NumericalDiff<YWEmbedding> diff(*this);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<YWEmbedding>, double> lm(
        diff);
    lm.parameters.maxfev = 4000;
    lm.minimize(x);
  }
};

TEST(YWCheckBound, ConservativeEmbeddingsPass) {
  int embedded = 0;
  for (int d = 2; d <= 8; ++d) {
    ProbeSetup probe = spin_ladder_probe(d);
    ConservationPair pair(S().z, probe.l2);
    CommutantBasis basis = commutant_basis(pair.total());
    SpectralDecomposition sd = spectral(probe.record);
    YWEmbedding fn{&basis, d, sd.projectors.back().matrix(),
                   sd.projectors.front().matrix()};
    Rng rng(derive_seed(54, d));
    for (int trial = 0; trial < 4; ++trial) {
      Eigen::VectorXd x(fn.inputs());
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.normal();
      fn.penalty = 0.2;
      fn.minimize(x);
      fn.penalty = 0.0;
      fn.minimize(x);
      Eigen::VectorXd f(fn.values());
      fn(x, f);
      if (f.norm() > 1e-11) continue;

      const Matrix u = fn.unitary(x);
      const Vector v = fn.xi(x);
      const Vector ax = alpha(Axis::kX).amplitudes();
      const Vector bx = beta(Axis::kX).amplitudes();
      auto un = [](const Vector& w) { return Ket::unnormalized(w); };
      YWModel yw(Ket::normalized(v), un(fn.component(u, v, ax, ax)),
                 un(fn.component(u, v, bx, bx)),
                 un(fn.component(u, v, ax, bx)),
                 un(fn.component(u, v, bx, ax)), probe.record);
      ++embedded;

      MeasurementModel model(S().x, yw.probe_state(),
                             Operator::unitary(u, "U"), probe.record);
      EXPECT_LT(acl_residual(model, pair), 1e-10);
      const double var = variance(probe.l2, yw.probe_state());
      YWBoundCheck check = yw_check_bound(yw, var);
      EXPECT_TRUE(check.pass) << "dim " << d << " eps_y_sq " << check.eps_y_sq
                              << " rhs " << check.rhs;
      EXPECT_NEAR(std::pow(noise(model, alpha(Axis::kY)), 2),
                  yw_error_at_alpha_y(yw), 1e-10);
    }
  }
  EXPECT_GE(embedded, 20);
}

}  // namespace
}  // namespace waylimit
