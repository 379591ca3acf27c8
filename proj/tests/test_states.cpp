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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "prethermal/errors.hpp"
#include "prethermal/measurement.hpp"
#include "prethermal/model.hpp"
#include "prethermal/states.hpp"

using namespace prethermal;

namespace {

Mat4 xx(double a, double b) {
  return kron(a * pauli::x(), b * pauli::x());
}

double commutator_with_h(const DensityMatrix& rho) {
  const Mat4 h = hamiltonian(BathParams{});
  return max_abs(h * rho.matrix() - rho.matrix() * h);
}

}  // namespace

TEST(MmsWithCoherence, ZeroChiIsMaximallyMixed) {
  EXPECT_EQ(mms_with_coherence(Mat4::Zero()).matrix(),
            DensityMatrix::maximally_mixed().matrix());
}

TEST(MmsWithCoherence, FigureOneState) {
  const auto rho = mms_with_coherence(xx(0.2, 0.3));
  EXPECT_GT(commutator_with_h(rho), 0.1);
  EXPECT_NEAR(rho(0, 3).real(), 0.06, 1e-16);
  EXPECT_NEAR(rho(1, 2).real(), 0.06, 1e-16);
}

TEST(MmsWithCoherence, DiagonalChiCommutesWithH) {
  const Mat4 chi = 0.2 * kron(pauli::z(), pauli::identity());
  const auto rho = mms_with_coherence(chi);
  EXPECT_EQ(commutator_with_h(rho), 0.0);
  // 1/4 - 0.3 < 0: this amplitude is not a state.
  EXPECT_THROW(mms_with_coherence(Mat4(0.3 * kron(pauli::z(), pauli::identity()))),
               DomainError);
}

TEST(MmsWithCoherence, Rejections) {
  EXPECT_THROW(mms_with_coherence(xx(1.0, 1.0)), DomainError);  // not PSD
  EXPECT_THROW(mms_with_coherence(Mat4(0.1 * Mat4::Identity())), DomainError);
  Mat4 skew = Mat4::Zero();
  skew(0, 1) = 0.1;
  EXPECT_THROW(mms_with_coherence(skew), DomainError);
}

TEST(BellState, Examples) {
  EXPECT_NEAR(magnetizations(bell_state(BellKind::PsiMinus)).F(), -0.75, 1e-15);
  EXPECT_NEAR(bell_state(BellKind::PhiPlus).purity(), 1.0, 1e-15);
  EXPECT_NEAR(magnetizations(bell_state(BellKind::PsiPlus)).zz, -0.25, 1e-15);
}

TEST(BellState, Vectors) {
  const double s = std::numbers::sqrt2 / 2.0;
  EXPECT_LT(max_abs(bell_vector(BellKind::PhiMinus) - Vec4(s, 0.0, 0.0, -s)), 1e-15);
  EXPECT_LT(max_abs(bell_vector(BellKind::PsiPlus) - Vec4(0.0, s, s, 0.0)), 1e-15);
}

TEST(BellState, NamesRoundTrip) {
  for (auto k : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                 BellKind::PsiMinus})
    EXPECT_EQ(parse_bell_kind(to_string(k)), k);
  EXPECT_THROW(parse_bell_kind("phi"), DomainError);
}

TEST(BellState, DephasedInComputationalBasis) {
  const auto b = computational_basis(BathParams{});
  for (auto k : {BellKind::PhiPlus, BellKind::PhiMinus}) {
    Mat4 want = Mat4::Zero();
    want.diagonal() << 0.5, 0.0, 0.0, 0.5;
    EXPECT_LT(max_abs(dephase(bell_state(k).matrix(), b) - want), 1e-15);
  }
  for (auto k : {BellKind::PsiPlus, BellKind::PsiMinus}) {
    Mat4 want = Mat4::Zero();
    want.diagonal() << 0.0, 0.5, 0.5, 0.0;
    EXPECT_LT(max_abs(dephase(bell_state(k).matrix(), b) - want), 1e-15);
  }
}

TEST(ThermalCoherentProduct, ZeroCoherenceIsLocalGibbsProduct) {
  const BathParams p;
  const double bs = 1.5 * inverse_temperature(p);
  const auto rho = thermal_coherent_product(bs, CoherenceBlock::real(0.0), p);
  EXPECT_LT(max_abs(rho.matrix() - gibbs_state(bs, p.omega0).matrix()), 1e-15);
  EXPECT_EQ(commutator_with_h(rho), 0.0);
}

TEST(ThermalCoherentProduct, InfiniteTemperatureIsMms) {
  const auto rho = thermal_coherent_product(0.0, CoherenceBlock::real(0.0), BathParams{});
  EXPECT_LT(max_abs(rho.matrix() - DensityMatrix::maximally_mixed().matrix()), 1e-16);
}

TEST(ThermalCoherentProduct, FFormula) {
  const BathParams p;
  const double bs = 1.5 * std::log(9.0);
  const double th = std::tanh(bs / 2.0);
  const double zinv = 1.0 / local_partition_function(bs, 1.0);
  for (double r : {0.0, 0.05, 0.1, 0.18}) {
    ASSERT_LT(r, zinv);
    const auto rho = thermal_coherent_product(bs, CoherenceBlock::real(r), p);
    EXPECT_NEAR(magnetizations(rho).F(), r * r + 0.25 * th * th, 1e-15) << r;
  }
  const auto c = CoherenceBlock::polar(0.1, 0.4, 0.15, -0.3);
  const auto rho = thermal_coherent_product(bs, c, p);
  EXPECT_NEAR(magnetizations(rho).F(),
              0.1 * 0.15 * std::cos(0.7) + 0.25 * th * th, 1e-15);
}

TEST(ThermalCoherentProduct, PartitionFunction) {
  const double bs = 1.5 * std::log(9.0);
  EXPECT_NEAR(local_partition_function(bs, 1.0), 2.0 * std::cosh(bs / 2.0), 1e-14);
  EXPECT_NEAR(1.0 / local_partition_function(bs, 1.0), 0.18558, 5e-6);
}

TEST(ThermalCoherentProduct, RejectsBoundaryAndBeyond) {
  const BathParams p;
  const double bs = 1.5 * std::log(9.0);
  const double zinv = 1.0 / local_partition_function(bs, 1.0);
  EXPECT_THROW(thermal_coherent_product(bs, CoherenceBlock::real(zinv), p), DomainError);
  EXPECT_THROW(thermal_coherent_product(bs, CoherenceBlock::real(0.25), p), DomainError);
  EXPECT_NO_THROW(thermal_coherent_product(bs, CoherenceBlock::real(0.999 * zinv), p));
}

TEST(Validate, ReportsWithoutThrowing) {
  const auto ok = validate(DensityMatrix::maximally_mixed());
  EXPECT_TRUE(ok.ok());
  EXPECT_EQ(ok.defects.hermiticity, 0.0);
  EXPECT_EQ(ok.defects.trace, 0.0);
  const Mat4 bad = 0.25 * Mat4::Identity() + 0.5 * xx(1.0, 1.0);
  const auto r = validate(bad);
  EXPECT_FALSE(r.ok());
  EXPECT_NEAR(r.defects.min_eigenvalue, -0.25, 1e-14);
}
