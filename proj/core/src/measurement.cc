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

#include "waylimit/measurement.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "waylimit/errors.h"
#include "waylimit/tolerances.h"

namespace waylimit {
namespace {

Operator ensure_hermitian(Operator x, const char* label) {
  if (x.is_hermitian()) return x;
  return Operator::hermitian(x.matrix(), label);
}

Operator ensure_unitary(Operator x, const char* label) {
  if (x.is_unitary()) return x;
  return Operator::unitary(x.matrix(), label);
}

void require_object_ket(const MeasurementModel& model, const Ket& psi) {
  if (psi.dim() != model.object_dim()) {
    std::ostringstream os;
    os << "psi: expected dimension " << model.object_dim() << ", got "
       << psi.dim();
    throw DimensionError(os.str());
  }
  if (!psi.is_normalized()) throw InvariantError("psi: not normalized");
}

// (I ⊗ |ξ⟩) as a (d_obj·d_probe) × d_obj matrix.
Matrix probe_embedding(int object_dim, const Ket& xi) {
  const int dp = xi.dim();
  Matrix e = Matrix::Zero(object_dim * dp, object_dim);
  for (int i = 0; i < object_dim; ++i) {
    e.block(i * dp, i, dp, 1) = xi.amplitudes();
  }
  return e;
}

double clamp_probability(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "probability out of range: " << p;
    throw InvariantError(os.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

MeasurementModel::MeasurementModel(Operator a, Ket xi, Operator u, Operator m)
    : a_(ensure_hermitian(std::move(a), "A")),
      xi_(std::move(xi)),
      u_(ensure_unitary(std::move(u), "U")),
      m_(ensure_hermitian(std::move(m), "M")) {
  if (!xi_.is_normalized()) throw InvariantError("xi: not normalized");
  if (m_.dim() != xi_.dim()) {
    std::ostringstream os;
    os << "M: expected dimension " << xi_.dim() << " (probe), got " << m_.dim();
    throw DimensionError(os.str());
  }
  if (u_.dim() != a_.dim() * xi_.dim()) {
    std::ostringstream os;
    os << "U: expected dimension " << a_.dim() * xi_.dim() << ", got "
       << u_.dim();
    throw DimensionError(os.str());
  }
}

Ket MeasurementModel::initial_state(const Ket& psi) const {
  require_object_ket(*this, psi);
  return tensor(psi, xi_);
}

Operator heisenberg_probe(const MeasurementModel& model) {
  return conjugate_by(model.interaction(),
                      tensor(Operator::identity(model.object_dim()),
                             model.probe_observable()));
}

OutcomeDistribution outcome_distribution(const MeasurementModel& model,
                                         const Ket& psi) {
  // The spectral projections of U†(I⊗M)U are U†(I⊗P_m)U, so the outcome
  // probabilities are ‖(I⊗P_m) U(ψ⊗ξ)‖².
  Vector evolved =
      model.interaction().matrix() * model.initial_state(psi).amplitudes();
  SpectralDecomposition probe = spectral(model.probe_observable());
  const Operator id = Operator::identity(model.object_dim());
  OutcomeDistribution out;
  out.reserve(probe.size());
  for (int k = 0; k < probe.size(); ++k) {
    Vector projected = tensor(id, probe.projectors[k]).matrix() * evolved;
    out.push_back({probe.eigenvalues[k],
                   clamp_probability(projected.squaredNorm())});
  }
  return out;
}

double interval_probability(const OutcomeDistribution& dist, double lo,
                            double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("interval: lo > hi");
  double p = 0.0;
  for (const Outcome& o : dist) {
    if (o.value >= lo - tol::kDegeneracy && o.value <= hi + tol::kDegeneracy)
      p += o.probability;
  }
  return std::min(p, 1.0);
}

OutcomeDistribution born_distribution(const Operator& a, const Ket& psi) {
  if (a.dim() != psi.dim()) throw DimensionError("born_distribution: dims");
  SpectralDecomposition sd = spectral(a);
  OutcomeDistribution out;
  for (int k = 0; k < sd.size(); ++k) {
    Vector projected = sd.projectors[k].matrix() * psi.amplitudes();
    out.push_back({sd.eigenvalues[k],
                   clamp_probability(projected.squaredNorm())});
  }
  return out;
}

double bsf_deviation(const MeasurementModel& model, const Ket& psi) {
  OutcomeDistribution recorded = outcome_distribution(model, psi);
  OutcomeDistribution born = born_distribution(model.observable(), psi);
  std::vector<bool> matched(recorded.size(), false);
  double worst = 0.0;
  for (const Outcome& target : born) {
    double p = 0.0;
    for (std::size_t k = 0; k < recorded.size(); ++k) {
      if (std::abs(recorded[k].value - target.value) < tol::kDegeneracy) {
        p += recorded[k].probability;
        matched[k] = true;
      }
    }
    worst = std::max(worst, std::abs(p - target.probability));
  }
  for (std::size_t k = 0; k < recorded.size(); ++k) {
    if (!matched[k]) worst = std::max(worst, recorded[k].probability);
  }
  return worst;
}

Operator noise_operator(const MeasurementModel& model) {
  return heisenberg_probe(model) -
         tensor(model.observable(), Operator::identity(model.probe_dim()));
}

double noise(const MeasurementModel& model, const Ket& psi) {
  Ket v = model.initial_state(psi);
  return (noise_operator(model).matrix() * v.amplitudes()).norm();
}

Operator noise_gram(const MeasurementModel& model) {
  Matrix k = noise_operator(model).matrix() *
             probe_embedding(model.object_dim(), model.probe_state());
  // K†K is positive semidefinite by construction.
  return Operator::hermitian(k.adjoint() * k, "noise gram");
}

double sup_noise(const MeasurementModel& model) {
  Operator b = noise_gram(model);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(b.matrix(),
                                               Eigen::EigenvaluesOnly);
  double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

double error_probability(const MeasurementModel& model, const Ket& psi) {
  SpectralDecomposition sd = spectral(model.observable());
  bool spin_half = sd.size() == 2 &&
                   std::abs(sd.eigenvalues[0] + 0.5) < tol::kDegeneracy &&
                   std::abs(sd.eigenvalues[1] - 0.5) < tol::kDegeneracy &&
                   model.object_dim() == 2;
  if (!spin_half) {
    throw PreconditionError(
        "error_probability requires a spin-1/2 observable with spectrum "
        "{-1/2, +1/2}");
  }
  double e = noise(model, psi);
  return e * e;
}

}  // namespace waylimit
