// Copyright 2026 The prethermal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string_view>

#include "prethermal/linalg.hpp"
#include "prethermal/model.hpp"

namespace prethermal {

// Off-diagonal amplitudes a_j = r_j e^{i theta_j} of the local coherences in
// the thermal-coherent product state.
struct CoherenceBlock {
  Complex a1{0.0, 0.0};
  Complex a2{0.0, 0.0};

  static CoherenceBlock polar(double r1, double theta1, double r2,
                              double theta2);
  static CoherenceBlock real(double r) { return {r, r}; }
};

// Z = 2 cosh(beta_S omega0 / 2); coherences need |a_j| < 1 / Z.
double local_partition_function(double beta_s, double omega0);

// 1/4 + chi. chi must be Hermitian and traceless (DomainError otherwise);
// the sum must be positive semidefinite (DomainError otherwise).
DensityMatrix mms_with_coherence(const Mat4& chi);

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

Vec4 bell_vector(BellKind kind);
DensityMatrix bell_state(BellKind kind);
std::string_view to_string(BellKind kind);
// Accepts "phi+", "phi-", "psi+", "psi-". Throws DomainError otherwise.
BellKind parse_bell_kind(std::string_view name);

// (rho_bS + chi^1) (x) (rho_bS + chi^2) with rho_bS = exp(-b_S w0 z / 2) / Z
// and chi^j carrying a_j above the diagonal.
DensityMatrix thermal_coherent_product(double beta_s, const CoherenceBlock& c,
                                       const BathParams& p);

struct ValidationReport {
  StateDefects defects;
  bool ok() const { return defects.ok(); }
};

// Re-checks the density-matrix invariants on a raw matrix. Never throws.
ValidationReport validate(const Mat4& rho);
inline ValidationReport validate(const DensityMatrix& rho) {
  return validate(rho.matrix());
}

}  // namespace prethermal
