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

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace prethermal {

using Complex = std::complex<double>;

// General dense complex matrix. Operators on the two-qubit space are 4x4,
// superoperators are 16x16.
using CMat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;
using Mat16 = Eigen::Matrix<Complex, 16, 16>;
using Vec16 = Eigen::Matrix<Complex, 16, 1>;

inline constexpr Complex kI{0.0, 1.0};

// Tolerances shared by every DensityMatrix.
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = 1e-10;

namespace pauli {
Mat2 identity();
Mat2 x();
Mat2 y();
Mat2 z();
// sigma_+ = (x + i y) / 2 = |0><1|, raises the energy of H = w0 z / 2.
Mat2 plus();
Mat2 minus();
}  // namespace pauli

CMat kron(const CMat& a, const CMat& b);

// Column-stacking vectorization: vec(rho)[i + 4 j] = rho(i, j).
Vec16 vec(const Mat4& rho);
Mat4 devec(const Vec16& v);

// Matrix of the map rho -> left * rho * right in the vec convention above,
// i.e. transpose(right) (x) left.
Mat16 sandwich(const Mat4& left, const Mat4& right);
Mat16 left_multiply(const Mat4& m);
Mat16 right_multiply(const Mat4& m);

// exp(scale * m) by scaling and squaring around a degree-13 Pade approximant.
CMat matexp(const CMat& m, double scale);

// exp(generator * t) for a trace-preserving generator on column-stacked 4x4
// states. The trace row, and any further left null vector of the generator
// (conserved to 1e-12 relative), is held exactly, so conservation laws of the
// result do not degrade with t. Throws DomainError if the generator is not
// trace preserving to 1e-12.
Mat16 exp_trace_preserving(const Mat16& generator, double t);

// All eigenvalues with multiplicity, unordered. Throws NumericalError when the
// QR iteration does not converge or an eigenpair residual exceeds 1e-8 |m|.
std::vector<Complex> eig_general(const CMat& m);

// Ascending eigenvalues of the Hermitian part of m.
Eigen::VectorXd eig_hermitian(const CMat& m);

double max_abs(const CMat& m);
bool all_finite(const CMat& m);

// Worst-case deviations of a 4x4 matrix from the density-matrix invariants.
struct StateDefects {
  double hermiticity = 0.0;     // max |m_ij - conj(m_ji)|
  double trace = 0.0;           // |Tr m - 1|
  double min_eigenvalue = 0.0;  // smallest eigenvalue of the Hermitian part
  bool finite = true;

  bool ok() const {
    return finite && hermiticity <= kHermiticityTol && trace <= kTraceTol &&
           min_eigenvalue >= -kPositivityTol;
  }
};

StateDefects state_defects(const Mat4& m);

// A validated two-qubit state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  // Throws DomainError when any invariant is violated beyond tolerance.
  explicit DensityMatrix(const Mat4& m);

  static DensityMatrix maximally_mixed();
  static DensityMatrix pure(const Vec4& psi);

  const Mat4& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  double purity() const;

 private:
  Mat4 m_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Generator or channel acting on vec(rho).
class Superoperator {
 public:
  Superoperator() : m_(Mat16::Zero()) {}
  explicit Superoperator(const Mat16& m) : m_(m) {}

  const Mat16& matrix() const { return m_; }

  Mat4 apply(const Mat4& rho) const { return devec(m_ * vec(rho)); }

  // Hilbert-Schmidt adjoint: Tr[X^dag L(Y)] = Tr[(L^dag X)^dag Y].
  Superoperator adjoint() const { return Superoperator(m_.adjoint()); }

  // max_j |sum_i L[i + 4 i, j]|: how far vec(I)^dag is from a left null
  // vector. Zero for trace-preserving generators.
  double trace_defect() const;

 private:
  Mat16 m_;
};

}  // namespace prethermal
