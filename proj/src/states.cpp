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

#include "prethermal/states.hpp"

#include <cmath>
#include <string>

#include "prethermal/errors.hpp"

namespace prethermal {

namespace {
constexpr double kChiTol = 1e-12;
}

CoherenceBlock CoherenceBlock::polar(double r1, double theta1, double r2,
                                     double theta2) {
  return {std::polar(r1, theta1), std::polar(r2, theta2)};
}

double local_partition_function(double beta_s, double omega0) {
  return 2.0 * std::cosh(0.5 * beta_s * omega0);
}

DensityMatrix mms_with_coherence(const Mat4& chi) {
  if (max_abs(chi - chi.adjoint()) > kChiTol) {
    throw DomainError("chi must be Hermitian");
  }
  if (std::abs(chi.trace()) > kChiTol) {
    throw DomainError("chi must be traceless");
  }
  const Mat4 rho = 0.25 * Mat4::Identity() + chi;
  const double lowest = eig_hermitian(rho)(0);
  if (lowest < -kPositivityTol) {
    throw DomainError("1/4 + chi is not positive semidefinite (eigenvalue " +
                      std::to_string(lowest) + ")");
  }
  return DensityMatrix(rho);
}

Vec4 bell_vector(BellKind kind) {
  const double s = 1.0 / std::sqrt(2.0);
  Vec4 v = Vec4::Zero();
  switch (kind) {
    case BellKind::PhiPlus:
      v(0) = s;
      v(3) = s;
      break;
    case BellKind::PhiMinus:
      v(0) = s;
      v(3) = -s;
      break;
    case BellKind::PsiPlus:
      v(1) = s;
      v(2) = s;
      break;
    case BellKind::PsiMinus:
      v(1) = s;
      v(2) = -s;
      break;
  }
  return v;
}

DensityMatrix bell_state(BellKind kind) {
  const Vec4 v = bell_vector(kind);
  return DensityMatrix(v * v.adjoint());
}

std::string_view to_string(BellKind kind) {
  switch (kind) {
    case BellKind::PhiPlus:
      return "phi+";
    case BellKind::PhiMinus:
      return "phi-";
    case BellKind::PsiPlus:
      return "psi+";
    case BellKind::PsiMinus:
      return "psi-";
  }
  return "?";
}

BellKind parse_bell_kind(std::string_view name) {
  if (name == "phi+") return BellKind::PhiPlus;
  if (name == "phi-") return BellKind::PhiMinus;
  if (name == "psi+") return BellKind::PsiPlus;
  if (name == "psi-") return BellKind::PsiMinus;
  throw DomainError("unknown Bell state '" + std::string(name) +
                    "' (expected phi+, phi-, psi+ or psi-)");
}

DensityMatrix thermal_coherent_product(double beta_s, const CoherenceBlock& c,
                                       const BathParams& p) {
  const double x = 0.5 * beta_s * p.omega0;
  const double z = local_partition_function(beta_s, p.omega0);
  const double limit = 1.0 / z;
  if (!(std::abs(c.a1) < limit) || !(std::abs(c.a2) < limit)) {
    throw DomainError("coherence modulus must stay below 1/Z = " +
                      std::to_string(limit));
  }
  auto local = [&](Complex a) {
    Mat2 m;
    m << std::exp(-x) / z, a, std::conj(a), std::exp(x) / z;
    return m;
  };
  return DensityMatrix(Mat4(kron(local(c.a1), local(c.a2))));
}

ValidationReport validate(const Mat4& rho) { return {state_defects(rho)}; }

}  // namespace prethermal
