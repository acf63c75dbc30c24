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

#ifndef WAYLIMIT_TOLERANCES_H_
#define WAYLIMIT_TOLERANCES_H_

#include <limits>

namespace waylimit::tol {

// Structure-tag checks, Frobenius norm.
inline constexpr double kStructure = 1e-10;
// |‖v‖ - 1| for kets tagged normalized.
inline constexpr double kNorm = 1e-12;
// Eigenvalues closer than this are one spectral value.
inline constexpr double kDegeneracy = 1e-9;
// Imaginary residue allowed in ⟨v|X|v⟩ for hermitian X.
inline constexpr double kImaginaryResidue = 1e-10;
// Negative variance clamped to zero below this magnitude.
inline constexpr double kVarianceClamp = 1e-12;
// ‖[U, L_tot]‖_F below which the conservation law counts as satisfied.
inline constexpr double kConservation = 1e-10;
// Precondition threshold for the commutator identity.
inline constexpr double kConservationPrecondition = 1e-9;
// ‖[M, L2]‖_F below which Yanase's condition counts as satisfied.
inline constexpr double kYanase = 1e-9;
// Slack when checking noise² against a lower bound.
inline constexpr double kBound = 1e-9;
// Bound denominators/numerators below this are treated as zero.
inline constexpr double kDenominator = 1e-14;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace waylimit::tol

#endif  // WAYLIMIT_TOLERANCES_H_
