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

#include "waylimit/optimizer.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "waylimit/errors.h"
#include "waylimit/parallel.h"
#include "waylimit/random.h"
#include "waylimit/tolerances.h"

namespace waylimit {
namespace {

using RealVector = Eigen::VectorXd;

double ratio_with_sentinel(double numerator, double denominator) {
  if (denominator < tol::kDenominator) {
    return numerator < tol::kDenominator ? 0.0 : tol::kInfinity;
  }
  return numerator / denominator;
}

// I ⊗ |ξ⟩
Matrix probe_embedding(int object_dim, const Ket& xi) {
  const int dp = xi.dim();
  Matrix e = Matrix::Zero(object_dim * dp, object_dim);
  for (int i = 0; i < object_dim; ++i) e.block(i * dp, i, dp, 1) = xi.amplitudes();
  return e;
}

struct RestartOutcome {
  std::vector<double> x;
  std::vector<double> trace;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  int bound_violations = 0;
};

RestartOutcome descend(const NoiseLandscape& landscape, std::vector<double> x0,
                       const OptimizerConfig& config) {
  const int n = static_cast<int>(x0.size());
  RestartOutcome out;
  out.x = std::move(x0);
  double f = landscape.value(out.x);
  out.trace.push_back(f);

  auto audit = [&](std::span<const double> x, double objective) {
    double eps = config.objective == NoiseObjective::kState
                     ? objective
                     : landscape.state_noise_sq(x);
    if (eps < landscape.bound(x) - tol::kBound) ++out.bound_violations;
  };
  audit(out.x, f);

  if (config.max_iters <= 0 || n == 0) {
    out.objective = f;
    out.converged = n == 0;
    return out;
  }

  auto as_vec = [](const std::vector<double>& v) {
    return Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size()));
  };
  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(n, n);
  RealVector g = as_vec(landscape.gradient(out.x, config.grad_step));

  for (int it = 0; it < config.max_iters; ++it) {
    if (g.norm() < config.tol) {
      out.converged = true;
      break;
    }
    RealVector d = -inv_hessian * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      inv_hessian.setIdentity();
      d = -g;
      slope = -g.squaredNorm();
    }
    std::vector<double> trial(n);
    double f_trial = f;
    bool accepted = false;
    for (double t = 1.0; t >= 1e-14; t *= 0.5) {
      for (int i = 0; i < n; ++i) trial[i] = out.x[i] + t * d(i);
      f_trial = landscape.value(trial);
      if (f_trial <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // no descent left at working precision

    RealVector g_new = as_vec(landscape.gradient(trial, config.grad_step));
    RealVector s = as_vec(trial) - as_vec(out.x);
    RealVector y = g_new - g;
    double sy = s.dot(y);
    if (sy > 1e-14) {
      double rho = 1.0 / sy;
      Eigen::MatrixXd left =
          Eigen::MatrixXd::Identity(n, n) - rho * s * y.transpose();
      inv_hessian = left * inv_hessian * left.transpose() +
                    rho * s * s.transpose();
    }
    double improvement = f - f_trial;
    out.x = std::move(trial);
    f = f_trial;
    g = std::move(g_new);
    out.trace.push_back(f);
    ++out.iterations;
    audit(out.x, f);
    if (improvement <= config.tol * std::max(1.0, std::abs(f))) {
      out.converged = true;
      break;
    }
  }
  out.objective = f;
  return out;
}

}  // namespace

NoiseLandscape::NoiseLandscape(NoiseProblem problem, NoiseObjective objective,
                               bool optimize_xi)
    : problem_(std::move(problem)),
      objective_(objective),
      optimize_xi_(optimize_xi),
      basis_(problem_.pair.total()) {
  const int dobj = problem_.observable.dim();
  const int dprobe = problem_.xi0.dim();
  if (problem_.pair.object_part().dim() != dobj ||
      problem_.pair.probe_part().dim() != dprobe ||
      problem_.probe_observable.dim() != dprobe || problem_.psi.dim() != dobj) {
    throw DimensionError("noise problem: inconsistent dimensions");
  }
  if (!problem_.observable.is_hermitian() ||
      !problem_.probe_observable.is_hermitian()) {
    throw InvariantError("noise problem: A and M must be hermitian");
  }
  if (!problem_.psi.is_normalized() || !problem_.xi0.is_normalized()) {
    throw InvariantError("noise problem: psi and xi must be normalized");
  }
  double y = yanase_residual(problem_.probe_observable, problem_.pair.probe_part());
  if (!(y < tol::kYanase)) {
    std::ostringstream os;
    os << "optimizer requires [M, L2] = 0 (residual " << y << ")";
    throw PreconditionError(os.str());
  }
  record_lifted_ =
      tensor(Operator::identity(dobj), problem_.probe_observable).matrix();
  observable_lifted_ =
      tensor(problem_.observable, Operator::identity(dprobe)).matrix();
  bound_numerator_ = std::norm(matrix_element(
      commutator(problem_.observable, problem_.pair.object_part()),
      problem_.psi));
  object_variance_ = variance(problem_.pair.object_part(), problem_.psi);
}

int NoiseLandscape::num_parameters() const {
  return basis_.size() + (optimize_xi_ ? 2 * problem_.xi0.dim() : 0);
}

std::vector<double> NoiseLandscape::pack(std::span<const double> theta,
                                         const Ket& xi) const {
  if (static_cast<int>(theta.size()) != basis_.size()) {
    throw DimensionError("theta: wrong number of coefficients");
  }
  std::vector<double> x(theta.begin(), theta.end());
  if (optimize_xi_) {
    for (int i = 0; i < xi.dim(); ++i) {
      x.push_back(xi[i].real());
      x.push_back(xi[i].imag());
    }
  }
  return x;
}

Ket NoiseLandscape::xi_at(std::span<const double> x) const {
  if (!optimize_xi_) return problem_.xi0;
  const int k = basis_.size();
  const int dp = problem_.xi0.dim();
  Vector v(dp);
  for (int i = 0; i < dp; ++i) v(i) = Complex(x[k + 2 * i], x[k + 2 * i + 1]);
  return Ket::normalize(std::move(v));
}

Operator NoiseLandscape::unitary_at(std::span<const double> x) const {
  return conservative_unitary(basis_, x.first(basis_.size()));
}

MeasurementModel NoiseLandscape::model_at(std::span<const double> x) const {
  return MeasurementModel(problem_.observable, xi_at(x), unitary_at(x),
                          problem_.probe_observable);
}

double NoiseLandscape::value_for(const Operator& u, const Ket& xi) const {
  const Matrix& um = u.matrix();
  if (objective_ == NoiseObjective::kState) {
    Vector v = tensor(problem_.psi, xi).amplitudes();
    // ‖N v‖ = ‖U N v‖ = ‖(I⊗M) U v - U (A⊗I) v‖
    return (record_lifted_ * (um * v) - um * (observable_lifted_ * v))
        .squaredNorm();
  }
  Matrix e = probe_embedding(problem_.observable.dim(), xi);
  Matrix k = record_lifted_ * (um * e) - um * (observable_lifted_ * e);
  Matrix b = k.adjoint() * k;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(b, Eigen::EigenvaluesOnly);
  return std::max(0.0, solver.eigenvalues().maxCoeff());
}

double NoiseLandscape::value(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != num_parameters()) {
    throw DimensionError("optimizer parameters: wrong length");
  }
  return value_for(unitary_at(x), xi_at(x));
}

double NoiseLandscape::state_noise_sq(std::span<const double> x) const {
  Operator u = unitary_at(x);
  Ket xi = xi_at(x);
  Vector v = tensor(problem_.psi, xi).amplitudes();
  const Matrix& um = u.matrix();
  return (record_lifted_ * (um * v) - um * (observable_lifted_ * v))
      .squaredNorm();
}

double NoiseLandscape::bound(std::span<const double> x) const {
  double probe_variance = variance(problem_.pair.probe_part(), xi_at(x));
  return ratio_with_sentinel(bound_numerator_,
                             4.0 * object_variance_ + 4.0 * probe_variance);
}

std::vector<double> NoiseLandscape::gradient(std::span<const double> x,
                                             double step) const {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = probe[i];
    probe[i] = saved + step;
    double up = value(probe);
    probe[i] = saved - step;
    double down = value(probe);
    probe[i] = saved;
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

OptimizationRun optimize_noise(const NoiseProblem& problem,
                               const OptimizerConfig& config) {
  if (config.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (!(config.grad_step > 0.0)) {
    throw std::invalid_argument("grad_step must be positive");
  }
  NoiseLandscape landscape(problem, config.objective, config.optimize_xi);
  const int k = landscape.num_theta();
  if (!config.initial_theta.empty() &&
      static_cast<int>(config.initial_theta.size()) != k) {
    std::ostringstream os;
    os << "initial_theta: expected " << k << " coefficients, got "
       << config.initial_theta.size();
    throw DimensionError(os.str());
  }

  const int restarts = config.restarts;
  std::vector<RestartOutcome> outcomes(restarts);
  std::vector<std::uint64_t> seeds(restarts);
  for (int r = 0; r < restarts; ++r) seeds[r] = derive_seed(config.seed, r);

  parallel_for(
      restarts,
      [&](int r) {
        std::vector<double> theta(k, 0.0);
        if (r == 0) {
          if (!config.initial_theta.empty()) theta = config.initial_theta;
        } else {
          Rng rng(seeds[r]);
          for (double& t : theta) t = config.init_scale * rng.normal();
        }
        outcomes[r] = descend(landscape, landscape.pack(theta, problem.xi0), config);
      },
      config.threads);

  int best = 0;
  for (int r = 1; r < restarts; ++r) {
    const double a = outcomes[r].objective;
    const double b = outcomes[best].objective;
    if (a < b || (a == b && seeds[r] < seeds[best])) best = r;
  }

  const RestartOutcome& win = outcomes[best];
  std::vector<RestartResult> summaries;
  int violations = 0;
  for (int r = 0; r < restarts; ++r) {
    summaries.push_back({r, seeds[r], outcomes[r].objective,
                         outcomes[r].iterations, outcomes[r].converged,
                         outcomes[r].bound_violations});
    violations += outcomes[r].bound_violations;
  }
  MeasurementModel model = landscape.model_at(win.x);
  return OptimizationRun{
      config.seed,
      std::vector<double>(win.x.begin(), win.x.begin() + k),
      landscape.xi_at(win.x),
      win.trace,
      model,
      problem.pair,
      win.objective,
      landscape.state_noise_sq(win.x),
      yanase_bound(model, problem.pair, problem.psi),
      win.converged,
      violations,
      std::move(summaries),
  };
}

}  // namespace waylimit
