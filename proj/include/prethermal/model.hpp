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

#include <vector>

#include "prethermal/linalg.hpp"

namespace prethermal {

// Two qubits with Zeeman splitting omega0, coupled to a spatially correlated
// bosonic bath. A and B are the absorption and emission rates (units of
// omega0); alpha is the spatial correlation between the two qubit sites.
struct BathParams {
  double omega0 = 1.0;
  double A = 0.1;
  double B = 0.9;
  double alpha = 0.5;

  // A > 0, B > 0, omega0 > 0, alpha in [0, 1]. Throws DomainError.
  void validate() const;
  // validate() plus B > A (positive bath temperature).
  void validate_positive_temperature() const;
};

// beta = (2 / omega0) atanh((B - A) / (B + A)) = ln(B / A) / omega0.
double inverse_temperature(const BathParams& p);

// H = (omega0 / 2)(z (x) 1 + 1 (x) z) = omega0 diag(1, 0, 0, -1) on
// |00>, |01>, |10>, |11>.
Mat4 hamiltonian(const BathParams& p);

// Generator sum_i L_ii + alpha sum_{i != j} L_ij with
// L_ij = A L+_ij + B L-_ij and
// L+_ij(rho) = 2 s+^i rho s-^j - {s-^j s+^i, rho}  (L-: swap s+ and s-).
Superoperator build_liouvillian(const BathParams& p);

// exp(L t) for a fixed t, reusable across many input operators.
class Propagator {
 public:
  Propagator(const Superoperator& generator, double t);

  double time() const { return t_; }
  const Superoperator& channel() const { return channel_; }

  // Re-validates the output; throws NumericalError on invariant violation.
  DensityMatrix operator()(const DensityMatrix& rho0) const;
  // Linear action on an arbitrary operator (sub-normalized blocks, chi, ...).
  Mat4 apply(const Mat4& x) const { return channel_.apply(x); }

 private:
  double t_;
  Superoperator channel_;
};

DensityMatrix propagate(const Superoperator& generator,
                        const DensityMatrix& rho0, double t);

struct Magnetizations {
  double xx = 0.0;
  double yy = 0.0;
  double zz = 0.0;

  // F = M_xx + M_yy + M_zz = <s1 . s2> / 4 = 1/4 - singlet population.
  double F() const { return xx + yy + zz; }
};

// M_jj = Tr[(s_j (x) s_j) rho] / 4.
Magnetizations magnetizations(const Mat4& rho);
inline Magnetizations magnetizations(const DensityMatrix& rho) {
  return magnetizations(rho.matrix());
}

// e^{-beta H} / Z, diagonal in the computational basis. beta may be +-inf.
DensityMatrix gibbs_state(double beta, double omega0);
DensityMatrix gibbs_state(const BathParams& p);

// Lagrange multiplier of the generalized Gibbs ensemble, printed branches:
//   0                                       F = -3/4
//   ln[(1 - 4F)/(3 + 4F) (1 + cosh(b w0))]  -3/4 < F < 1/4
//   ln[1 + cosh(b w0)]                      F = 1/4
double lagrange_multiplier_printed(double F, double beta_omega0);

// Multiplier that reproduces the conserved singlet population (1 - 4F)/4 of
// the alpha = 1 dynamics: ln[(1 - 4F)/(3 + 4F) (1 + 2 cosh(b w0))], with
// +inf at F = -3/4 and -inf at F = 1/4.
double lagrange_multiplier(double F, double beta_omega0);

// exp[-beta H - (ell / 4) sum_j s_j (x) s_j] / Z, evaluated in the
// singlet/triplet basis where both terms are diagonal. Infinite ell selects
// the pure singlet (+inf) or the triplet Gibbs state (-inf).
DensityMatrix gge_from_multiplier(double ell, double beta, double omega0);

struct GgeState {
  DensityMatrix state;          // built from lagrange_multiplier()
  DensityMatrix printed_state;  // built from lagrange_multiplier_printed()
  double ell = 0.0;
  double ell_printed = 0.0;
  double F = 0.0;
};

// Throws DomainError when F(rho0) lies outside [-3/4, 1/4].
GgeState gge_state(const DensityMatrix& rho0, const BathParams& p);

// |Re lambda| at or below this counts as a null eigenvalue.
inline constexpr double kNullThreshold = 1e-9;

struct ModelSpectrum {
  std::vector<Complex> eigenvalues;  // ascending |Re|
  int null_dimension = 0;
  double gap = 0.0;                  // smallest |Re| above kNullThreshold
  double equilibration_time = 0.0;   // 1 / gap, +inf without a gap
};

ModelSpectrum spectrum(const Superoperator& generator);

}  // namespace prethermal
