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

#include "prethermal/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "prethermal/errors.hpp"

namespace prethermal {

namespace pauli {
Mat2 identity() { return Mat2::Identity(); }

Mat2 x() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Mat2 y() {
  Mat2 m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Mat2 z() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Mat2 plus() { return 0.5 * (x() + kI * y()); }
Mat2 minus() { return 0.5 * (x() - kI * y()); }
}  // namespace pauli

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vec16 vec(const Mat4& rho) {
  Vec16 v;
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) v(i + 4 * j) = rho(i, j);
  }
  return v;
}

Mat4 devec(const Vec16& v) {
  Mat4 rho;
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) rho(i, j) = v(i + 4 * j);
  }
  return rho;
}

Mat16 sandwich(const Mat4& left, const Mat4& right) {
  return kron(right.transpose(), left);
}

Mat16 left_multiply(const Mat4& m) { return sandwich(m, Mat4::Identity()); }

Mat16 right_multiply(const Mat4& m) { return sandwich(Mat4::Identity(), m); }

namespace {

double one_norm(const CMat& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

// Higham (2005) degree-13 coefficients and the matching 1-norm threshold.
constexpr double kPade13[] = {64764752532480000.0,
                              32382376266240000.0,
                              7771770303897600.0,
                              1187353796428800.0,
                              129060195264000.0,
                              10559470521600.0,
                              670442572800.0,
                              33522128640.0,
                              1323241920.0,
                              40840800.0,
                              960960.0,
                              16380.0,
                              182.0,
                              1.0};
constexpr double kTheta13 = 5.371920351148152;
// kTheta13 targets double unit roundoff; two extra halvings push the Pade
// truncation error below long-double roundoff.
constexpr double kThetaExtended = kTheta13 / 4.0;

}  // namespace

namespace {

using XComplex = std::complex<long double>;
using XMat = Eigen::Matrix<XComplex, Eigen::Dynamic, Eigen::Dynamic>;

// Numerator/denominator pieces of the degree-13 Pade approximant of
// exp(scale * m / 2^squarings), evaluated in extended precision so that long
// squaring chains stay accurate.
struct PadeTerms {
  XMat u;
  XMat v;
  int squarings = 0;
};

PadeTerms pade13(const CMat& m, double scale) {
  const double norm = one_norm(scale * m);
  if (!std::isfinite(norm)) {
    throw DomainError("matexp: non-finite input");
  }
  PadeTerms out;
  XMat a = (m.cast<XComplex>() * static_cast<long double>(scale)).eval();
  if (norm > kThetaExtended) {
    out.squarings =
        static_cast<int>(std::ceil(std::log2(norm / kThetaExtended)));
    a /= std::ldexp(1.0L, out.squarings);
  }
  const XMat ident = XMat::Identity(m.rows(), m.cols());
  auto c = [](int k) { return static_cast<long double>(kPade13[k]); };
  const XMat a2 = a * a;
  const XMat a4 = a2 * a2;
  const XMat a6 = a4 * a2;
  const XMat u_inner = a6 * (c(13) * a6 + c(11) * a4 + c(9) * a2) +
                       c(7) * a6 + c(5) * a4 + c(3) * a2 + c(1) * ident;
  out.u = a * u_inner;
  out.v = a6 * (c(12) * a6 + c(10) * a4 + c(8) * a2) + c(6) * a6 +
          c(4) * a4 + c(2) * a2 + c(0) * ident;
  return out;
}

void square(XMat& r, int times) {
  for (int k = 0; k < times; ++k) r = (r * r).eval();
}

// Trace coordinates: y_0 = Tr rho = x_0 + x_5 + x_10 + x_15, y_k = x_k else.
constexpr int kPopulationIndex[] = {0, 5, 10, 15};

// Relative size below which a generator row counts as a conserved functional.
constexpr double kConservedTol = 1e-12;

struct ConservedFrame {
  CMat w;         // unitary; leading rows span the conserved functionals
  int fixed = 1;  // number of those rows, e_0 included
};

// Frame whose leading rows are e_0 and an orthonormal basis of the other
// left null vectors of m (singular values at or below tol); the remaining
// rows complete the basis. Row 0 of m must already be zero.
ConservedFrame conserved_frame(const CMat& m, double tol) {
  const Eigen::Index n = m.rows();
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  CMat frame(n, n);
  Eigen::Index kept = 0;
  auto add = [&](Eigen::VectorXcd v) {
    // Two Gram-Schmidt passes; directions already spanned drop out.
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j = 0; j < kept; ++j) v -= frame.col(j).dot(v) * frame.col(j);
    const double norm = v.norm();
    if (norm < 1e-6) return;
    frame.col(kept++) = v / norm;
  };
  add(Eigen::VectorXcd::Unit(n, 0));
  for (Eigen::Index k = 0; k < n; ++k)
    if (sv(k) <= tol) add(svd.matrixU().col(k));
  ConservedFrame out;
  out.fixed = static_cast<int>(kept);
  for (Eigen::Index k = 0; k < n && kept < n; ++k) add(Eigen::VectorXcd::Unit(n, k));
  out.w = frame.adjoint();
  return out;
}

}  // namespace

CMat matexp(const CMat& m, double scale) {
  if (m.rows() != m.cols()) {
    throw DomainError("matexp: matrix must be square");
  }
  const Eigen::Index n = m.rows();
  if (scale == 0.0 || n == 0) return CMat::Identity(n, n);
  PadeTerms p = pade13(m, scale);
  XMat r = (p.v - p.u).partialPivLu().solve(p.v + p.u);
  square(r, p.squarings);
  return r.cast<Complex>();
}

Mat16 exp_trace_preserving(const Mat16& generator, double t) {
  const double scale = std::max(1.0, max_abs(generator));
  const double defect = Superoperator(generator).trace_defect();
  if (defect > kConservedTol * scale) {
    throw DomainError("exp_trace_preserving: generator is not trace preserving");
  }
  if (t == 0.0) return Mat16::Identity();

  // to_trace = T, from_trace = T^{-1}; both integer and exact.
  Mat16 to_trace = Mat16::Identity();
  Mat16 from_trace = Mat16::Identity();
  for (int k : kPopulationIndex) {
    to_trace(0, k) = 1.0;
    if (k != 0) from_trace(0, k) = -1.0;
  }
  CMat lt = to_trace * generator * from_trace;
  // Identically zero for a trace-preserving generator; zeroing it removes
  // the rounding residue that would otherwise leak trace at a rate ~1e-17 t.
  lt.row(0).setZero();

  // Further conserved functionals (e.g. the singlet population at full
  // correlation) get the same treatment in a rotated frame whose leading
  // rows span them. w is unitary and the identity when there are none.
  const ConservedFrame frame = conserved_frame(lt, kConservedTol * scale);
  const int fixed = frame.fixed;
  const bool rotated = fixed > 1;
  const CMat& w = frame.w;
  CMat g = rotated ? CMat(w * lt * w.adjoint()) : lt;
  g.topRows(fixed).setZero();

  const PadeTerms p = pade13(g, t);
  // The leading rows of v -/+ u are exactly c0 [I 0], so those rows of the
  // solution are [I 0] and stay so under squaring.
  const int rest = 16 - fixed;
  const XMat lhs = p.v - p.u;
  const XMat rhs = p.v + p.u;
  XMat r = XMat::Zero(16, 16);
  r.topLeftCorner(fixed, fixed).setIdentity();
  r.bottomRows(rest) = lhs.bottomRightCorner(rest, rest).partialPivLu().solve(
      rhs.bottomRows(rest) - lhs.bottomLeftCorner(rest, fixed) * r.topRows(fixed));
  square(r, p.squarings);
  CMat e = r.cast<Complex>();
  if (rotated) e = w.adjoint() * e * w;
  return from_trace * Mat16(e) * to_trace;
}

double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const CMat& m) { return m.allFinite(); }

std::vector<Complex> eig_general(const CMat& m) {
  if (m.rows() != m.cols()) {
    throw DomainError("eig_general: matrix must be square");
  }
  Eigen::ComplexEigenSolver<CMat> solver;
  // Eigen caps the QR sweeps at 30 iterations per eigenvalue.
  solver.compute(m, true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_general: complex Schur iteration did not converge");
  }
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  const double bound = 1e-8 * std::max(m.norm(), 1e-300);
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    const double residual =
        (m * vectors.col(k) - values(k) * vectors.col(k)).norm() /
        vectors.col(k).norm();
    if (!(residual <= bound)) {
      throw NumericalError("eig_general: eigenpair residual above 1e-8 |m|");
    }
  }
  return {values.data(), values.data() + values.size()};
}

Eigen::VectorXd eig_hermitian(const CMat& m) {
  const CMat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: did not converge");
  }
  return solver.eigenvalues();
}

StateDefects state_defects(const Mat4& m) {
  StateDefects d;
  d.finite = m.allFinite();
  if (!d.finite) {
    d.hermiticity = d.trace = std::numeric_limits<double>::infinity();
    d.min_eigenvalue = -std::numeric_limits<double>::infinity();
    return d;
  }
  d.hermiticity = max_abs(m - m.adjoint());
  d.trace = std::abs(m.trace() - 1.0);
  d.min_eigenvalue = eig_hermitian(m)(0);
  return d;
}

DensityMatrix::DensityMatrix(const Mat4& m) : m_(m) {
  const StateDefects d = state_defects(m);
  if (!d.ok()) {
    throw DomainError(
        "not a density matrix: hermiticity defect " +
        std::to_string(d.hermiticity) + ", trace defect " +
        std::to_string(d.trace) + ", min eigenvalue " +
        std::to_string(d.min_eigenvalue));
  }
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(0.25 * Mat4::Identity());
}

DensityMatrix DensityMatrix::pure(const Vec4& psi) {
  const Vec4 unit = psi.normalized();
  return DensityMatrix(unit * unit.adjoint());
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const Eigen::VectorXd ev = eig_hermitian(a.matrix() - b.matrix());
  return 0.5 * ev.cwiseAbs().sum();
}

double Superoperator::trace_defect() const {
  double worst = 0.0;
  for (int j = 0; j < 16; ++j) {
    Complex s = 0.0;
    for (int i = 0; i < 4; ++i) s += m_(i + 4 * i, j);
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

}  // namespace prethermal
