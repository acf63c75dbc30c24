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

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "fixtures.h"
#include "oracles.h"
#include "waylimit/conservation.h"
#include "waylimit/errors.h"
#include "waylimit/measurement.h"
#include "waylimit/optimizer.h"
#include "waylimit/oscillator.h"
#include "waylimit/random.h"
#include "waylimit/spin.h"

namespace waylimit {
namespace {

const SpinOperators& S() { return spin_half(); }

Operator total_sz() {
  return ConservationPair(S().z, S().z).total();
}

// exp(i Σ θ_k G_k) through one dense eigendecomposition of the full
// Hamiltonian.
Matrix dense_exponential(const std::vector<Operator>& gens,
                         const std::vector<double>& theta) {
  const int n = gens.front().dim();
  Matrix h = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < gens.size(); ++k) h += theta[k] * gens[k].matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases = (Complex(0.0, 1.0) * es.eigenvalues().cast<Complex>())
                      .array()
                      .exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

OptimizerConfig quick_config(int restarts, std::uint64_t seed) {
  OptimizerConfig c;
  c.restarts = restarts;
  c.seed = seed;
  c.max_iters = 120;
  return c;
}

TEST(CommutantBasis, GeneratorCounts) {
  EXPECT_EQ(commutant_basis(total_sz()).size(), 1 + 4 + 1);
  EXPECT_EQ(commutant_basis(Operator::identity(3)).size(), 9);
  EXPECT_EQ(commutant_basis(Operator::diagonal({1, 2, 3, 4})).size(), 4);
  Rng rng(71);
  Operator l = random_hermitian_with_spectrum({0, 0, 0, 1, 1, 2}, rng);
  EXPECT_EQ(commutant_basis(l).size(), 9 + 4 + 1);
  EXPECT_EQ(commutant_basis(l).num_sectors(), 3);
}

TEST(CommutantBasis, GeneratorsCommuteAndAreOrthonormal) {
  Rng rng(72);
  for (int trial = 0; trial < 10; ++trial) {
    ConservationPair pair(testing::random_charge(rng.uniform_int(2, 3), rng),
                          testing::random_charge(rng.uniform_int(2, 4), rng));
    Operator l = pair.total();
    std::vector<Operator> gens = commutant_basis(l).generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      EXPECT_TRUE(gens[i].is_hermitian());
      EXPECT_LT(commutator(gens[i], l).matrix().norm(), 1e-11);
      for (std::size_t j = i; j < gens.size(); ++j) {
        Complex ip = (gens[i].matrix().adjoint() * gens[j].matrix()).trace();
        EXPECT_NEAR(std::abs(ip), i == j ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

TEST(ConservativeUnitary, ZeroThetaIsIdentity) {
  CommutantBasis basis = commutant_basis(total_sz());
  std::vector<double> zero(basis.size(), 0.0);
  EXPECT_LT(frobenius_distance(conservative_unitary(basis, zero).matrix(),
                               Matrix::Identity(4, 4)),
            1e-15);
}

TEST(ConservativeUnitary, ExchangeBlockGivesSwapUpToPhase) {
  CommutantBasis basis = commutant_basis(total_sz());
  // Sectors ascend in L_tot: {|11⟩}, {|01⟩, |10⟩}, {|00⟩}. The m = 0 sector
  // owns generators 1..4 with the symmetric exchange at index 3.
  ASSERT_EQ(basis.num_sectors(), 3);
  std::vector<double> theta(basis.size(), 0.0);
  const double t = M_PI / 2.0 * std::sqrt(2.0);
  theta[3] = t;
  Matrix u = conservative_unitary(basis, theta).matrix();
  // exp(i t X/√2) = cos(t/√2) I + i sin(t/√2) X on the exchange block.
  Matrix block = std::cos(t / std::sqrt(2.0)) * Matrix::Identity(2, 2) +
                 Complex(0.0, std::sin(t / std::sqrt(2.0))) *
                     (2.0 * oracle::sx());
  Matrix expected = Matrix::Identity(4, 4);
  expected.block(1, 1, 2, 2) = block;
  EXPECT_LT(frobenius_distance(u, expected), 1e-12);
  Matrix phased_swap = oracle::swap4();
  phased_swap.block(1, 1, 2, 2) *= Complex(0.0, 1.0);
  EXPECT_LT(frobenius_distance(u, phased_swap), 1e-12);
}

TEST(ConservativeUnitary, MatchesDenseExponential) {
  Rng rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    ConservationPair pair(testing::random_charge(rng.uniform_int(2, 3), rng),
                          testing::random_charge(rng.uniform_int(2, 4), rng));
    CommutantBasis basis = commutant_basis(pair.total());
    std::vector<double> theta(basis.size());
    for (double& x : theta) x = rng.normal();
    Operator u = conservative_unitary(basis, theta);
    EXPECT_LT(frobenius_distance(u.matrix(),
                                 dense_exponential(basis.generators(), theta)),
              1e-10);
    EXPECT_TRUE(u.is_unitary());
    EXPECT_LT(unitarity_residual(u.matrix()), 1e-10);
    MeasurementModel model(random_hermitian(pair.object_part().dim(), rng),
                           random_ket(pair.probe_part().dim(), rng), u,
                           random_hermitian(pair.probe_part().dim(), rng));
    EXPECT_LT(acl_residual(model, pair), 1e-10);
  }
}

TEST(ConservativeUnitary, RejectsWrongLength) {
  CommutantBasis basis = commutant_basis(total_sz());
  std::vector<double> theta(5, 0.0);
  EXPECT_THROW(conservative_unitary(basis, theta), DimensionError);
}

TEST(ThetaFromUnitary, RoundTrip) {
  Rng rng(74);
  for (int trial = 0; trial < 20; ++trial) {
    ConservationPair pair(testing::random_charge(2, rng),
                          testing::random_charge(rng.uniform_int(2, 4), rng));
    CommutantBasis basis = commutant_basis(pair.total());
    Operator u = testing::random_conservative_unitary(pair, rng, 3.0);
    std::vector<double> theta = theta_from_unitary(basis, u);
    EXPECT_LT(frobenius_distance(conservative_unitary(basis, theta).matrix(),
                                 u.matrix()),
              1e-10);
  }
  CommutantBasis basis = commutant_basis(total_sz());
  std::vector<double> theta = theta_from_unitary(basis, swap_gate(2));
  EXPECT_LT(frobenius_distance(conservative_unitary(basis, theta).matrix(),
                               oracle::swap4()),
            1e-12);
  EXPECT_THROW(theta_from_unitary(basis, cnot_gate()), PreconditionError);
}

TEST(Records, DefaultAndParity) {
  Operator jz = spin_ladder_z(4);
  EXPECT_EQ(default_probe_observable(jz).matrix(), jz.matrix());
  Operator parity = parity_record(jz);
  EXPECT_LT(frobenius_distance(parity.matrix(),
                               Operator::diagonal({0.5, -0.5, 0.5, -0.5})
                                   .matrix()),
            1e-15);
  EXPECT_LT(yanase_residual(parity, jz), 1e-15);
  EXPECT_LT(frobenius_distance(parity_record(S().z).matrix(), oracle::sz()),
            1e-15);
}

TEST(NoiseLandscape, RejectsYanaseViolation) {
  NoiseProblem p{S().x, ConservationPair(S().z, S().z), S().x, alpha(Axis::kX),
                 alpha(Axis::kY)};
  EXPECT_THROW(NoiseLandscape(p, NoiseObjective::kState, false),
               PreconditionError);
}

TEST(NoiseLandscape, ValueMatchesMeasurementModule) {
  Rng rng(75);
  NoiseProblem p = spin_measurement_problem(spin_ladder_probe(3));
  for (bool opt_xi : {false, true}) {
    NoiseLandscape state(p, NoiseObjective::kState, opt_xi);
    NoiseLandscape sup(p, NoiseObjective::kSup, opt_xi);
    EXPECT_EQ(state.num_parameters(),
              state.num_theta() + (opt_xi ? 2 * p.xi0.dim() : 0));
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> x(state.num_parameters());
      for (double& v : x) v = rng.normal();
      MeasurementModel m = state.model_at(x);
      EXPECT_NEAR(state.value(x), std::pow(noise(m, p.psi), 2), 1e-12);
      EXPECT_NEAR(sup.value(x), std::pow(sup_noise(m), 2), 1e-12);
      EXPECT_NEAR(state.bound(x), yanase_bound(m, p.pair, p.psi), 1e-12);
      EXPECT_LT(acl_residual(m, p.pair), 1e-10);
    }
  }
}

TEST(NoiseLandscape, GradientMatchesDirectionalDerivative) {
  Rng rng(76);
  NoiseProblem p = spin_measurement_problem(spin_ladder_probe(3));
  for (NoiseObjective obj : {NoiseObjective::kState, NoiseObjective::kSup}) {
    NoiseLandscape land(p, obj, true);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> x(land.num_parameters()), dir(x.size());
      for (double& v : x) v = rng.normal();
      for (double& v : dir) v = rng.normal();
      std::vector<double> g = land.gradient(x, 1e-5);
      double gd = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) gd += g[i] * dir[i];
      const double h = 1e-5;
      std::vector<double> xp = x, xm = x;
      for (std::size_t i = 0; i < x.size(); ++i) {
        xp[i] += h * dir[i];
        xm[i] -= h * dir[i];
      }
      double fd = (land.value(xp) - land.value(xm)) / (2.0 * h);
      EXPECT_NEAR(gd, fd, 1e-4 * std::max(std::abs(fd), 1e-3));
    }
  }
}

TEST(OptimizeNoise, QubitProbeNeverBeatsEighth) {
  NoiseProblem p = spin_measurement_problem(spin_ladder_probe(2));
  EXPECT_EQ(p.probe_observable.matrix(), oracle::sz());
  for (bool opt_xi : {false, true}) {
    OptimizerConfig c = quick_config(8, 5);
    c.optimize_xi = opt_xi;
    OptimizationRun run = optimize_noise(p, c);
    EXPECT_EQ(run.bound_violations, 0);
    EXPECT_GE(run.eps_sq, 0.125 - 1e-9);
    EXPECT_LE(run.eps_sq, 0.5);
    for (const RestartResult& r : run.restarts)
      EXPECT_GE(r.objective, 0.125 - 1e-9);
    EXPECT_GE(error_probability(run.result_model, p.psi),
              optimal_spin_bound(variance(p.pair.probe_part(), run.xi)) -
                  1e-9);
  }
}

TEST(OptimizeNoise, TraceIsMonotoneAndAboveBound) {
  NoiseProblem p = spin_measurement_problem(spin_ladder_probe(3));
  OptimizationRun run = optimize_noise(p, quick_config(4, 9));
  ASSERT_FALSE(run.objective_trace.empty());
  for (std::size_t i = 1; i < run.objective_trace.size(); ++i)
    EXPECT_LE(run.objective_trace[i], run.objective_trace[i - 1]);
  EXPECT_EQ(run.objective_trace.back(), run.objective);
  EXPECT_GE(run.objective, run.bound_value - 1e-9);
  EXPECT_LT(acl_residual(run.result_model, run.pair), 1e-10);
  EXPECT_EQ(run.theta.size(),
            static_cast<std::size_t>(commutant_basis(run.pair.total()).size()));
}

TEST(OptimizeNoise, CommutingObservableIsMeasuredPrecisely) {
  // A = S_z commutes with L1 = S_z, so the bound vanishes and a swap of the
  // m = 0 sector reads S_z out exactly from the probe state α_z.
  NoiseProblem p{S().z, ConservationPair(S().z, S().z), S().z,
                 alpha(Axis::kZ), alpha(Axis::kY)};
  OptimizationRun run = optimize_noise(p, quick_config(8, 3));
  EXPECT_EQ(run.bound_value, 0.0);
  EXPECT_LT(run.eps_sq, 1e-8);
}

TEST(OptimizeNoise, NoIterationsKeepsIdentity) {
  NoiseProblem p = spin_measurement_problem(spin_ladder_probe(2));
  OptimizerConfig c = quick_config(1, 0);
  c.max_iters = 0;
  OptimizationRun run = optimize_noise(p, c);
  MeasurementModel idle(p.observable, p.xi0, Operator::identity(4),
                        p.probe_observable);
  EXPECT_NEAR(run.objective, std::pow(noise(idle, p.psi), 2), 1e-15);
  EXPECT_LT(frobenius_distance(run.result_model.interaction().matrix(),
                               Matrix::Identity(4, 4)),
            1e-15);
}

TEST(OptimizeNoise, SupObjectiveFromSwapReachesZero) {
  NoiseProblem p{S().z, ConservationPair(S().z, S().z), S().z,
                 alpha(Axis::kX), alpha(Axis::kY)};
  CommutantBasis basis = commutant_basis(p.pair.total());
  OptimizerConfig c = quick_config(1, 0);
  c.objective = NoiseObjective::kSup;
  c.initial_theta = theta_from_unitary(basis, swap_gate(2));
  OptimizationRun run = optimize_noise(p, c);
  EXPECT_LT(run.objective, 1e-10);
  EXPECT_LT(sup_noise(run.result_model), 1e-5);
}

TEST(OptimizeNoise, RejectsBadConfig) {
  NoiseProblem p = spin_measurement_problem(spin_ladder_probe(2));
  OptimizerConfig c = quick_config(1, 0);
  c.initial_theta = {1.0, 2.0};
  EXPECT_THROW(optimize_noise(p, c), DimensionError);
  c = quick_config(0, 0);
  EXPECT_THROW(optimize_noise(p, c), std::invalid_argument);
}

TEST(OptimizeNoise, DeterministicAcrossRunsAndThreads) {
  NoiseProblem p = spin_measurement_problem(spin_ladder_probe(3));
  OptimizerConfig c = quick_config(6, 42);
  c.optimize_xi = true;
  c.threads = 1;
  OptimizationRun a = optimize_noise(p, c);
  OptimizationRun b = optimize_noise(p, c);
  c.threads = 4;
  OptimizationRun t = optimize_noise(p, c);
  EXPECT_EQ(a.objective_trace, b.objective_trace);
  EXPECT_EQ(a.objective_trace, t.objective_trace);
  EXPECT_EQ(a.theta, t.theta);
  c.seed = 43;
  OptimizationRun other = optimize_noise(p, c);
  EXPECT_NE(a.restarts[1].seed, other.restarts[1].seed);
}

TEST(OptimizeNoise, WinnerIsLowestObjectiveThenLowestSeed) {
  NoiseProblem p = spin_measurement_problem(spin_ladder_probe(2));
  OptimizationRun run = optimize_noise(p, quick_config(8, 11));
  const RestartResult* best = &run.restarts.front();
  for (const RestartResult& r : run.restarts) {
    if (r.objective < best->objective ||
        (r.objective == best->objective && r.seed < best->seed))
      best = &r;
  }
  EXPECT_EQ(run.objective, best->objective);
  EXPECT_EQ(run.objective_trace.back(), best->objective);
}

TEST(OptimizeNoise, SpinLadderModelsRespectErrorBound) {
  for (int d = 2; d <= 5; ++d) {
    NoiseProblem p = spin_measurement_problem(spin_ladder_probe(d));
    OptimizerConfig c = quick_config(3, static_cast<std::uint64_t>(d));
    c.optimize_xi = d % 2 == 0;
    OptimizationRun run = optimize_noise(p, c);
    EXPECT_EQ(run.bound_violations, 0);
    double v = variance(p.pair.probe_part(), run.xi);
    EXPECT_GE(error_probability(run.result_model, p.psi),
              optimal_spin_bound(v) - 1e-9)
        << "dim " << d;
  }
}

TEST(Sweep, QubitRow) {
  std::vector<SweepRow> rows =
      sweep_probe_size(ProbeFamily::kSpinLadder, {2}, quick_config(4, 1));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].error.empty()) << rows[0].error;
  EXPECT_DOUBLE_EQ(rows[0].var_mz, 0.25);
  EXPECT_DOUBLE_EQ(rows[0].bound, 0.125);
  EXPECT_GE(rows[0].achieved, rows[0].bound - 1e-9);
  EXPECT_DOUBLE_EQ(rows[0].gap_ratio, rows[0].achieved / rows[0].bound);
}

TEST(Sweep, SpinLadderBoundDecreasesAndIsRespected) {
  std::vector<SweepRow> rows = sweep_probe_size(
      ProbeFamily::kSpinLadder, {2, 3, 4, 5}, quick_config(3, 2));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_TRUE(rows[i].error.empty()) << rows[i].error;
    EXPECT_GE(rows[i].achieved, rows[i].bound - 1e-9);
    if (i > 0) {
      EXPECT_GT(rows[i].var_mz, rows[i - 1].var_mz);
      EXPECT_LT(rows[i].bound, rows[i - 1].bound);
    }
  }
}

TEST(Sweep, OscillatorBounds) {
  std::vector<SweepRow> rows =
      sweep_probe_size(ProbeFamily::kOscillator, {0, 1, 10}, quick_config(1, 7));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_DOUBLE_EQ(rows[0].bound, 0.25);
  EXPECT_DOUBLE_EQ(rows[1].bound, 0.05);
  EXPECT_DOUBLE_EQ(rows[2].bound, 1.0 / 164.0);
  for (const SweepRow& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_NEAR(r.var_mz, r.size, 1e-6);
    EXPECT_TRUE(std::isnan(r.achieved));
    EXPECT_EQ(r.seed, 7u);
  }
}

TEST(Sweep, FailuresStayInRow) {
  std::vector<SweepRow> rows = sweep_probe_size(
      ProbeFamily::kOscillator, {-1.0, 1e4, 1.0}, quick_config(1, 0));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_FALSE(rows[1].error.empty());
  EXPECT_NEAR(rows[1].bound, 1.0 / 160004.0, 1e-18);
  EXPECT_TRUE(rows[2].error.empty());
  std::vector<SweepRow> spin =
      sweep_probe_size(ProbeFamily::kSpinLadder, {1.5}, quick_config(1, 0));
  EXPECT_FALSE(spin[0].error.empty());
}

}  // namespace
}  // namespace waylimit
