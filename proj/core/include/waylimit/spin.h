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

#ifndef WAYLIMIT_SPIN_H_
#define WAYLIMIT_SPIN_H_

#include <string>

#include "waylimit/conservation.h"
#include "waylimit/measurement.h"
#include "waylimit/operator.h"

namespace waylimit {

// Spin-1/2 observables in the S_z basis (index 0 = S_z up), hbar = 1.
struct SpinOperators {
  Operator x;
  Operator y;
  Operator z;
};

const SpinOperators& spin_half();
inline SpinOperators spin_operators() { return spin_half(); }

enum class Axis { kX, kY, kZ };

struct SpinBasis {
  Axis axis;
  Ket up;    // S_axis = +1/2
  Ket down;  // S_axis = -1/2
};

// Phases: α_x = (1,1)/√2, β_x = (1,-1)/√2, α_y = (1,i)/√2, β_y = (1,-i)/√2,
// so that 2α_y = (1+i)α_x + (1-i)β_x.
SpinBasis spin_basis(Axis axis);
inline Ket alpha(Axis axis) { return spin_basis(axis).up; }
inline Ket beta(Axis axis) { return spin_basis(axis).down; }

// J_z for spin j = (dim-1)/2, ordered m = j, j-1, ..., -j.
Operator spin_ladder_z(int dim);
// J_x on the same ladder.
Operator spin_ladder_x(int dim);
// The J_x = +j eigenstate; Δ²J_z = j/2.
Ket spin_coherent_x(int dim);

Operator swap_gate(int dim);
// Flips the probe qubit (S_x) when the object is S_z down.
Operator cnot_gate();

struct DemoModel {
  std::string name;
  std::string description;
  MeasurementModel model;
  ConservationPair pair;
};

// U = SWAP, ξ = α_x, M = A = S_x, L1 = L2 = S_z. Conserves total S_z and is
// noiseless, but M does not commute with L2.
DemoModel swap_demo_model();
// U = I, M = 0, A = S_x, ξ = α_z, L1 = L2 = S_z.
DemoModel trivial_demo_model();
// U = CNOT, ξ = α_z, M = A = S_z, L1 = L2 = S_z. Precise S_z readout; the
// target flip breaks conservation of total S_z.
DemoModel cnot_demo_model();

// Partial interaction of the Yanase-Wigner form
//   U(α_x ⊗ ξ) = α_x ⊗ ξ⁺ + β_x ⊗ η⁺,
//   U(β_x ⊗ ξ) = β_x ⊗ ξ⁻ + α_x ⊗ η⁻,
// with M ξ^± = ±(1/2) ξ^±. Only these two images are specified.
class YWModel {
 public:
  struct Residuals {
    double isometry_plus;   // |‖ξ⁺‖² + ‖η⁺‖² - 1|
    double isometry_minus;  // |‖ξ⁻‖² + ‖η⁻‖² - 1|
    double orthogonality;   // |⟨ξ⁺,η⁻⟩ + ⟨η⁺,ξ⁻⟩|
    double eigen_plus;      // ‖Mξ⁺ - ξ⁺/2‖
    double eigen_minus;     // ‖Mξ⁻ + ξ⁻/2‖
    double spectrum_excess;  // max(0, ‖M‖_2 - 1/2)
  };

  // Throws InvariantError when any residual exceeds tol::kStructure.
  YWModel(Ket xi, Ket xi_plus, Ket xi_minus, Ket eta_plus, Ket eta_minus,
          Operator m);

  static Residuals residuals(const Ket& xi_plus, const Ket& xi_minus,
                             const Ket& eta_plus, const Ket& eta_minus,
                             const Operator& m);

  int probe_dim() const { return xi_.dim(); }
  const Ket& probe_state() const { return xi_; }
  const Ket& xi_plus() const { return xi_plus_; }
  const Ket& xi_minus() const { return xi_minus_; }
  const Ket& eta_plus() const { return eta_plus_; }
  const Ket& eta_minus() const { return eta_minus_; }
  const Operator& probe_observable() const { return m_; }

 private:
  Ket xi_;
  Ket xi_plus_;
  Ket xi_minus_;
  Ket eta_plus_;
  Ket eta_minus_;
  Operator m_;
};

// ε_Y² = ‖η⁺‖² + ‖η⁻‖²
double yw_eps_y(const YWModel& yw);

// ε(α_y)² = ½‖(M - ½)η⁺‖² + ½‖(M + ½)η⁻‖²
double yw_error_at_alpha_y(const YWModel& yw);

struct YWBoundCheck {
  double eps_y_sq;
  double rhs;  // 1 / (2 + 8 Δ²m_z)
  bool pass;
};

YWBoundCheck yw_check_bound(const YWModel& yw, double var_mz);

// Qubit probe, M = S_z, ε_Y² = 0.1, with 2ε(α_y)² = ε_Y².
YWModel yw_sample_model();

}  // namespace waylimit

#endif  // WAYLIMIT_SPIN_H_
