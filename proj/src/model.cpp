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

#include "prethermal/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "prethermal/errors.hpp"

namespace prethermal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// F within this distance of -3/4 or 1/4 takes the endpoint branch.
constexpr double kEndpointTol = 1e-12;
// F may overshoot the physical range by rounding up to this much.
constexpr double kRangeTol = 1e-10;

Mat4 on_site(const Mat2& op, int site) {
  return site == 0 ? Mat4(kron(op, pauli::identity()))
                   : Mat4(kron(pauli::identity(), op));
}

Mat4 pair_op(const Mat2& op) { return kron(op, op); }

// 2 up_i rho down_j - {down_j up_i, rho}
Mat16 correlated_dissipator(const Mat4& up_i, const Mat4& down_j) {
  const Mat4 anti = down_j * up_i;
  return 2.0 * sandwich(up_i, down_j) - left_multiply(anti) -
         right_multiply(anti);
}

// Singlet/triplet basis: |00>, psi+, |11>, psi-.
Mat4 coupled_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  Mat4 u = Mat4::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = s;
  u(2, 1) = s;
  u(3, 2) = 1.0;
  u(1, 3) = s;
  u(2, 3) = -s;
  return u;
}

}  // namespace

void BathParams::validate() const {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw DomainError("omega0 must be positive and finite");
  }
  if (!(A > 0.0) || !std::isfinite(A)) {
    throw DomainError("A must be positive and finite");
  }
  if (!(B > 0.0) || !std::isfinite(B)) {
    throw DomainError("B must be positive and finite");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("alpha must lie in [0, 1]");
  }
}

void BathParams::validate_positive_temperature() const {
  validate();
  if (!(B > A)) {
    throw DomainError("B must exceed A for a positive bath temperature");
  }
}

double inverse_temperature(const BathParams& p) {
  if (!(p.A + p.B != 0.0)) {
    throw DomainError("inverse_temperature: A + B must be nonzero");
  }
  if (!(p.omega0 != 0.0)) {
    throw DomainError("inverse_temperature: omega0 must be nonzero");
  }
  return 2.0 / p.omega0 * std::atanh((p.B - p.A) / (p.B + p.A));
}

Mat4 hamiltonian(const BathParams& p) {
  return 0.5 * p.omega0 *
         (on_site(pauli::z(), 0) + on_site(pauli::z(), 1));
}

Superoperator build_liouvillian(const BathParams& p) {
  const std::array<Mat4, 2> up = {on_site(pauli::plus(), 0),
                                  on_site(pauli::plus(), 1)};
  const std::array<Mat4, 2> down = {on_site(pauli::minus(), 0),
                                    on_site(pauli::minus(), 1)};
  Mat16 l = Mat16::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double weight = (i == j) ? 1.0 : p.alpha;
      l += weight * (p.A * correlated_dissipator(up[i], down[j]) +
                     p.B * correlated_dissipator(down[i], up[j]));
    }
  }
  return Superoperator(l);
}

Propagator::Propagator(const Superoperator& generator, double t) : t_(t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("propagation time must be finite and non-negative");
  }
  channel_ = Superoperator(exp_trace_preserving(generator.matrix(), t));
}

DensityMatrix Propagator::operator()(const DensityMatrix& rho0) const {
  const Mat4 out = channel_.apply(rho0.matrix());
  const StateDefects d = state_defects(out);
  if (!d.ok()) {
    throw NumericalError(
        "propagated state left the density-matrix set at t = " +
        std::to_string(t_) + " (trace defect " + std::to_string(d.trace) +
        ", min eigenvalue " + std::to_string(d.min_eigenvalue) + ")");
  }
  return DensityMatrix(out);
}

DensityMatrix propagate(const Superoperator& generator,
                        const DensityMatrix& rho0, double t) {
  if (t == 0.0) return rho0;
  return Propagator(generator, t)(rho0);
}

Magnetizations magnetizations(const Mat4& rho) {
  auto m = [&](const Mat2& s) {
    return 0.25 * (pair_op(s) * rho).trace().real();
  };
  return {m(pauli::x()), m(pauli::y()), m(pauli::z())};
}

DensityMatrix gibbs_state(double beta, double omega0) {
  if (std::isinf(beta)) {
    Mat4 ground = Mat4::Zero();
    ground((beta > 0.0) == (omega0 > 0.0) ? 3 : 0, (beta > 0.0) == (omega0 > 0.0) ? 3 : 0) = 1.0;
    return DensityMatrix(ground);
  }
  const std::array<double, 4> energies = {omega0, 0.0, 0.0, -omega0};
  std::array<double, 4> logw{};
  for (int k = 0; k < 4; ++k) logw[k] = -beta * energies[k];
  const double top = *std::max_element(logw.begin(), logw.end());
  Mat4 rho = Mat4::Zero();
  double z = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double w = std::exp(logw[k] - top);
    rho(k, k) = w;
    z += w;
  }
  return DensityMatrix(rho / z);
}

DensityMatrix gibbs_state(const BathParams& p) {
  return gibbs_state(inverse_temperature(p), p.omega0);
}

namespace {

double checked_F(double F) {
  if (!std::isfinite(F) || F < -0.75 - kRangeTol || F > 0.25 + kRangeTol) {
    throw DomainError("F = " + std::to_string(F) +
                      " lies outside the physical range [-3/4, 1/4]");
  }
  return std::clamp(F, -0.75, 0.25);
}

}  // namespace

double lagrange_multiplier_printed(double F, double beta_omega0) {
  F = checked_F(F);
  if (F <= -0.75 + kEndpointTol) return 0.0;
  if (F >= 0.25 - kEndpointTol) return std::log(1.0 + std::cosh(beta_omega0));
  return std::log((1.0 - 4.0 * F) / (3.0 + 4.0 * F) *
                  (1.0 + std::cosh(beta_omega0)));
}

double lagrange_multiplier(double F, double beta_omega0) {
  F = checked_F(F);
  if (F <= -0.75 + kEndpointTol) return kInf;
  if (F >= 0.25 - kEndpointTol) return -kInf;
  return std::log((1.0 - 4.0 * F) / (3.0 + 4.0 * F)) +
         std::log(1.0 + 2.0 * std::cosh(beta_omega0));
}

DensityMatrix gge_from_multiplier(double ell, double beta, double omega0) {
  // Coupled-basis order |00>, psi+, |11>, psi- (energies w0, 0, -w0, 0).
  std::array<double, 4> logw{};
  if (ell == kInf) {
    logw = {-kInf, -kInf, -kInf, 0.0};
  } else {
    const double b = beta * omega0;
    const double tail = (ell == -kInf) ? -kInf : 0.75 * ell;
    const double triplet = (ell == -kInf) ? 0.0 : -0.25 * ell;
    logw = {triplet - b, triplet, triplet + b, tail};
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  Eigen::Vector4d w;
  for (int k = 0; k < 4; ++k) w(k) = std::exp(logw[k] - top);
  w /= w.sum();
  const Mat4 u = coupled_basis();
  const Mat4 rho = u * w.cast<Complex>().asDiagonal() * u.adjoint();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

GgeState gge_state(const DensityMatrix& rho0, const BathParams& p) {
  const double beta = inverse_temperature(p);
  const double F = checked_F(magnetizations(rho0).F());
  const double bw = beta * p.omega0;
  const double ell = lagrange_multiplier(F, bw);
  const double ell_printed = lagrange_multiplier_printed(F, bw);
  return GgeState{gge_from_multiplier(ell, beta, p.omega0),
                  gge_from_multiplier(ell_printed, beta, p.omega0), ell,
                  ell_printed, F};
}

ModelSpectrum spectrum(const Superoperator& generator) {
  ModelSpectrum s;
  s.eigenvalues = eig_general(CMat(generator.matrix()));
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(),
            [](const Complex& a, const Complex& b) {
              const double ra = std::abs(a.real());
              const double rb = std::abs(b.real());
              if (ra != rb) return ra < rb;
              return a.imag() < b.imag();
            });
  s.gap = kInf;
  for (const Complex& v : s.eigenvalues) {
    const double re = std::abs(v.real());
    if (re <= kNullThreshold) {
      ++s.null_dimension;
    } else {
      s.gap = std::min(s.gap, re);
    }
  }
  if (s.gap == kInf) {
    s.gap = 0.0;
    s.equilibration_time = kInf;
  } else {
    s.equilibration_time = 1.0 / s.gap;
  }
  return s;
}

}  // namespace prethermal
