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

// Reference computations that share no code path with the library routines
// they check.

#include <complex>
#include <random>

#include "prethermal/linalg.hpp"
#include "prethermal/model.hpp"

namespace prethermal::oracle {

using LComplex = std::complex<long double>;
using LMat = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;

// exp(m) from the Taylor series in long double. The argument is halved
// until its Frobenius norm is below 1/8, summed to convergence, then
// squared back.
inline CMat taylor_exp(const CMat& m) {
  LMat a = m.cast<LComplex>();
  int halvings = 0;
  while (a.norm() > 0.125L) {
    a /= 2.0L;
    ++halvings;
  }
  const Eigen::Index n = m.rows();
  LMat sum = LMat::Identity(n, n);
  LMat term = LMat::Identity(n, n);
  for (int k = 1; k < 60; ++k) {
    term = (term * a / static_cast<long double>(k)).eval();
    sum += term;
    if (term.norm() < 1e-30L) break;
  }
  for (int k = 0; k < halvings; ++k) sum = (sum * sum).eval();
  return sum.cast<Complex>();
}

inline Mat4 site(const Mat2& op, int which) {
  Mat4 out = Mat4::Zero();
  // Explicit tensor index formula, independent of kron().
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          const Complex v = which == 0 ? op(a, c) * Complex(b == d)
                                       : Complex(a == c) * op(b, d);
          out(2 * a + b, 2 * c + d) = v;
        }
  return out;
}

// The master equation applied directly to a 4x4 matrix.
inline Mat4 lindblad_rhs(const BathParams& p, const Mat4& rho) {
  Mat2 up, down;
  up << 0.0, 1.0, 0.0, 0.0;
  down << 0.0, 0.0, 1.0, 0.0;
  Mat4 out = Mat4::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double c = i == j ? 1.0 : p.alpha;
      const Mat4 ui = site(up, i), dj = site(down, j);
      const Mat4 di = site(down, i), uj = site(up, j);
      out += c * p.A * (2.0 * ui * rho * dj - (dj * ui * rho + rho * dj * ui));
      out += c * p.B * (2.0 * di * rho * uj - (uj * di * rho + rho * uj * di));
    }
  }
  return out;
}

// Classical RK4 on the master equation.
inline Mat4 rk4(const BathParams& p, Mat4 rho, double t, int steps) {
  const double h = t / steps;
  for (int k = 0; k < steps; ++k) {
    const Mat4 k1 = lindblad_rhs(p, rho);
    const Mat4 k2 = lindblad_rhs(p, rho + 0.5 * h * k1);
    const Mat4 k3 = lindblad_rhs(p, rho + 0.5 * h * k2);
    const Mat4 k4 = lindblad_rhs(p, rho + h * k3);
    rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

inline CMat ginibre(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

// Full-rank random state G G^dag / Tr.
inline DensityMatrix random_state(std::mt19937_64& rng) {
  const CMat g = ginibre(rng, 4, 4);
  Mat4 rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(Mat4(0.5 * (rho + rho.adjoint())));
}

inline Mat4 random_unitary(std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMat> qr(ginibre(rng, 4, 4));
  return Mat4(qr.householderQ() * CMat::Identity(4, 4));
}

inline double rel_err(const CMat& got, const CMat& want) {
  return (got - want).norm() / want.norm();
}

}  // namespace prethermal::oracle
