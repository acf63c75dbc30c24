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

#include "waylimit/conservation.h"

#include <cmath>
#include <sstream>

#include "waylimit/errors.h"
#include "waylimit/spin.h"
#include "waylimit/tolerances.h"

namespace waylimit {
namespace {

void require_pair_dims(const MeasurementModel& model,
                       const ConservationPair& pair) {
  if (pair.object_part().dim() != model.object_dim()) {
    std::ostringstream os;
    os << "L1: expected dimension " << model.object_dim() << ", got "
       << pair.object_part().dim();
    throw DimensionError(os.str());
  }
  if (pair.probe_part().dim() != model.probe_dim()) {
    std::ostringstream os;
    os << "L2: expected dimension " << model.probe_dim() << ", got "
       << pair.probe_part().dim();
    throw DimensionError(os.str());
  }
}

double ratio_with_sentinel(double numerator, double denominator) {
  if (denominator < tol::kDenominator) {
    return numerator < tol::kDenominator ? 0.0 : tol::kInfinity;
  }
  return numerator / denominator;
}

// U†[I⊗M, I⊗L2]U - [A⊗I, L1⊗I]
Operator commutator_identity_rhs(const MeasurementModel& model,
                                 const ConservationPair& pair) {
  const Operator id_obj = Operator::identity(model.object_dim());
  const Operator id_probe = Operator::identity(model.probe_dim());
  Operator probe_term = conjugate_by(
      model.interaction(),
      commutator(tensor(id_obj, model.probe_observable()), pair.probe_lifted()));
  Operator object_term =
      commutator(tensor(model.observable(), id_probe), pair.object_lifted());
  return probe_term - object_term;
}

double bound_denominator(const ConservationPair& pair, const Ket& psi,
                         const Ket& xi) {
  return 4.0 * variance(pair.object_part(), psi) +
         4.0 * variance(pair.probe_part(), xi);
}

bool is_close(const Operator& a, const Operator& b) {
  return a.dim() == b.dim() &&
         frobenius_distance(a.matrix(), b.matrix()) < tol::kStructure;
}

}  // namespace

ConservationPair::ConservationPair(Operator l1, Operator l2)
    : l1_(l1.is_hermitian() ? std::move(l1)
                            : Operator::hermitian(l1.matrix(), "L1")),
      l2_(l2.is_hermitian() ? std::move(l2)
                            : Operator::hermitian(l2.matrix(), "L2")) {}

Operator ConservationPair::object_lifted() const {
  return tensor(l1_, Operator::identity(l2_.dim()));
}

Operator ConservationPair::probe_lifted() const {
  return tensor(Operator::identity(l1_.dim()), l2_);
}

Operator ConservationPair::total() const {
  return object_lifted() + probe_lifted();
}

double acl_residual(const MeasurementModel& model,
                    const ConservationPair& pair) {
  require_pair_dims(model, pair);
  return commutator(model.interaction(), pair.total()).matrix().norm();
}

double invariance_residual(const MeasurementModel& model,
                           const ConservationPair& pair) {
  require_pair_dims(model, pair);
  Operator total = pair.total();
  return frobenius_distance(conjugate_by(model.interaction(), total).matrix(),
                            total.matrix());
}

double yanase_residual(const Operator& m, const Operator& l2) {
  return commutator(m, l2).matrix().norm();
}

double commutator_identity_residual(const MeasurementModel& model,
                                    const ConservationPair& pair) {
  double acl = acl_residual(model, pair);
  if (!(acl < tol::kConservationPrecondition)) {
    std::ostringstream os;
    os << "commutator identity needs the conservation law (residual " << acl
       << ")";
    throw PreconditionError(os.str());
  }
  Operator lhs = commutator(noise_operator(model), pair.total());
  return frobenius_distance(lhs.matrix(),
                            commutator_identity_rhs(model, pair).matrix());
}

UncertaintyPair uncertainty_pair(const MeasurementModel& model,
                                 const ConservationPair& pair, const Ket& psi) {
  require_pair_dims(model, pair);
  Ket state = model.initial_state(psi);
  Operator n = noise_operator(model);
  Operator total = pair.total();
  Complex c = matrix_element(commutator(n, total), state);
  return {variance(n, state) * variance(total, state), 0.25 * std::norm(c)};
}

double variance_additivity_residual(const ConservationPair& pair,
                                    const Ket& psi, const Ket& xi) {
  if (psi.dim() != pair.object_part().dim() ||
      xi.dim() != pair.probe_part().dim()) {
    throw DimensionError("variance_additivity_residual: state dimensions");
  }
  Ket state = tensor(psi, xi);
  return std::abs(variance(pair.total(), state) -
                  variance(pair.object_lifted(), state) -
                  variance(pair.probe_lifted(), state));
}

double fundamental_bound(const MeasurementModel& model,
                         const ConservationPair& pair, const Ket& psi) {
  require_pair_dims(model, pair);
  Ket state = model.initial_state(psi);
  double numerator =
      std::norm(matrix_element(commutator_identity_rhs(model, pair), state));
  return ratio_with_sentinel(
      numerator, bound_denominator(pair, psi, model.probe_state()));
}

double yanase_bound(const MeasurementModel& model, const ConservationPair& pair,
                    const Ket& psi) {
  require_pair_dims(model, pair);
  double y = yanase_residual(model.probe_observable(), pair.probe_part());
  if (!(y < tol::kYanase)) {
    std::ostringstream os;
    os << "Yanase's condition [M, L2] = 0 fails (residual " << y << ")";
    throw PreconditionError(os.str());
  }
  if (psi.dim() != model.object_dim()) throw DimensionError("psi: dimension");
  double numerator = std::norm(
      matrix_element(commutator(model.observable(), pair.object_part()), psi));
  return ratio_with_sentinel(
      numerator, bound_denominator(pair, psi, model.probe_state()));
}

double spin_bound(const MeasurementModel& model, const ConservationPair& pair,
                  const Ket& psi) {
  require_pair_dims(model, pair);
  const SpinOperators& s = spin_half();
  if (model.object_dim() != 2 || !is_close(model.observable(), s.x) ||
      !is_close(pair.object_part(), s.z)) {
    throw PreconditionError("spin_bound requires A = S_x and L1 = S_z on a qubit");
  }
  double y = yanase_residual(model.probe_observable(), pair.probe_part());
  if (!(y < tol::kYanase)) {
    throw PreconditionError("spin_bound requires Yanase's condition");
  }
  double sy = expectation(s.y, psi);
  return ratio_with_sentinel(
      sy * sy, bound_denominator(pair, psi, model.probe_state()));
}

double optimal_spin_bound(double var_mz) {
  if (!(var_mz >= 0.0)) {
    throw PreconditionError("probe variance must be non-negative");
  }
  return 1.0 / (4.0 + 16.0 * var_mz);
}

BoundComparison bound_comparison(double var_mz, double mean_mz) {
  if (!(var_mz >= 0.0)) {
    throw PreconditionError("probe variance must be non-negative");
  }
  double second_moment = var_mz + mean_mz * mean_mz;
  double old_bound = second_moment > 0.0 ? 1.0 / (8.0 * second_moment)
                                         : tol::kInfinity;
  return {old_bound, 1.0 / (2.0 + 8.0 * var_mz)};
}

bool BoundReport::conservation_holds() const {
  return acl_residual < tol::kConservation;
}

bool BoundReport::yanase_holds() const { return yanase_residual < tol::kYanase; }

std::vector<std::string> BoundReport::violations() const {
  std::vector<std::string> out;
  if (eps_sq < delta_noise_sq - tol::kBound) out.push_back("noise_variance");
  if (uncertainty_lhs < uncertainty_rhs - tol::kBound) {
    out.push_back("uncertainty");
  }
  if (variance_additivity_residual > tol::kConservation) {
    out.push_back("variance_additivity");
  }
  if (conservation_holds()) {
    if (eps_sq < fundamental_bound - tol::kBound) {
      out.push_back("fundamental_bound");
    }
    if (commutator_identity_residual &&
        !(*commutator_identity_residual < tol::kConservationPrecondition)) {
      out.push_back("commutator_identity");
    }
    if (yanase_bound && eps_sq < *yanase_bound - tol::kBound) {
      out.push_back("yanase_bound");
    }
    if (spin_bound && eps_sq < *spin_bound - tol::kBound) {
      out.push_back("spin_bound");
    }
  }
  return out;
}

BoundReport evaluate_bounds(const MeasurementModel& model,
                            const ConservationPair& pair, const Ket& psi) {
  require_pair_dims(model, pair);
  BoundReport r;
  Ket state = model.initial_state(psi);
  Operator n = noise_operator(model);
  r.eps_sq = (n.matrix() * state.amplitudes()).squaredNorm();
  r.delta_noise_sq = variance(n, state);
  r.fundamental_bound = fundamental_bound(model, pair, psi);
  r.acl_residual = acl_residual(model, pair);
  r.invariance_residual = invariance_residual(model, pair);
  r.yanase_residual = yanase_residual(model.probe_observable(), pair.probe_part());
  UncertaintyPair u = uncertainty_pair(model, pair, psi);
  r.uncertainty_lhs = u.lhs;
  r.uncertainty_rhs = u.rhs;
  r.variance_additivity_residual =
      variance_additivity_residual(pair, psi, model.probe_state());
  if (r.acl_residual < tol::kConservationPrecondition) {
    r.commutator_identity_residual = commutator_identity_residual(model, pair);
  }
  if (r.yanase_holds()) {
    r.yanase_bound = yanase_bound(model, pair, psi);
    const SpinOperators& s = spin_half();
    if (model.object_dim() == 2 && is_close(model.observable(), s.x) &&
        is_close(pair.object_part(), s.z)) {
      r.spin_bound = spin_bound(model, pair, psi);
    }
  }
  return r;
}

}  // namespace waylimit
