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
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "prethermal/errors.hpp"
#include "prethermal/model.hpp"
#include "prethermal/states.hpp"
#include "prethermal/thermo.hpp"

using namespace prethermal;

namespace {

BathParams params(double alpha) {
  BathParams p;
  p.alpha = alpha;
  return p;
}

JointDistribution table(const Eigen::Matrix4d& p) {
  JointDistribution d;
  d.p = p;
  d.basis = computational_basis(BathParams{});
  return d;
}

Eigen::Matrix4d random_table(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  Eigen::Matrix4d p;
  for (int i = 0; i < 4; ++i)
    for (int f = 0; f < 4; ++f) p(i, f) = u(rng);
  return p / p.sum();
}

double kl(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += a(k) * std::log(a(k) / b(k));
  return s;
}

}  // namespace

TEST(PairwiseEntropy, SymmetricTableIsZero) {
  std::mt19937_64 rng(31);
  Eigen::Matrix4d p = random_table(rng);
  p = 0.5 * (p + p.transpose()).eval();
  const auto e = pairwise_entropy(table(p));
  EXPECT_EQ(e.sigma.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(average_entropy(table(p)).value, 0.0);
}

TEST(PairwiseEntropy, Antisymmetric) {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 10; ++k) {
    const auto e = pairwise_entropy(table(random_table(rng)));
    EXPECT_LT((e.sigma + e.sigma.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_TRUE(e.finite_mask.all());
    EXPECT_FALSE(e.infinite_mask.any());
  }
}

TEST(PairwiseEntropy, EpmLogRatioOfMarginals) {
  std::mt19937_64 rng(33);
  const BathParams p = params(1.0 - 1e-5);
  const auto l = build_liouvillian(p);
  const auto b = computational_basis(p);
  const auto rho = oracle::random_state(rng);
  const auto d = epm_distribution(rho, l, 30.0, b);
  const auto e = pairwise_entropy(d);
  const Eigen::Vector4d m_in = d.initial_marginal(), m_out = d.final_marginal();
  for (int i = 0; i < 4; ++i)
    for (int f = 0; f < 4; ++f)
      EXPECT_NEAR(e.sigma(i, f), std::log(m_in(i) * m_out(f) / (m_in(f) * m_out(i))), 1e-12);
}

TEST(PairwiseEntropy, MasksStructuralZeros) {
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
  p(0, 1) = 0.5;
  p(1, 1) = 0.5;
  const auto e = pairwise_entropy(table(p));
  EXPECT_TRUE(e.infinite_mask(0, 1));
  EXPECT_FALSE(e.finite_mask(0, 1));
  EXPECT_FALSE(e.finite_mask(1, 0));
  EXPECT_FALSE(e.infinite_mask(1, 0));
  EXPECT_TRUE(e.finite_mask(1, 1));
  const auto avg = average_entropy(table(p));
  EXPECT_EQ(avg.value, std::numeric_limits<double>::infinity());
  EXPECT_FALSE(avg.diagnostic.empty());
}

TEST(PairwiseEntropy, NegligibleDivergentWeightIgnored) {
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
  p(0, 0) = 1.0 - 1e-14;
  p(0, 1) = 1e-14;
  const auto avg = average_entropy(table(p));
  EXPECT_EQ(avg.value, 0.0);
  EXPECT_TRUE(avg.diagnostic.empty());
}

TEST(AverageEntropy, EpmIsJeffreysDivergence) {
  std::mt19937_64 rng(34);
  const BathParams p = params(0.7);
  const auto l = build_liouvillian(p);
  for (auto kind : {BasisKind::Computational, BasisKind::Common}) {
    const auto b = make_basis(kind, p);
    const auto d = epm_distribution(oracle::random_state(rng), l, 2.0, b);
    const Eigen::Vector4d a = d.initial_marginal(), c = d.final_marginal();
    const double v = average_entropy(d).value;
    EXPECT_NEAR(v, kl(a, c) + kl(c, a), 1e-13);
    EXPECT_GE(v, 0.0);
  }
}

TEST(ClassicalXft, Examples) {
  std::mt19937_64 rng(35);
  const BathParams p = params(0.5);
  const auto l = build_liouvillian(p);
  const auto b = computational_basis(p);
  const auto rho = oracle::random_state(rng);
  const auto d = tpm_distribution(rho, l, 3.0, b);
  EXPECT_EQ(classical_xft(d, 0.0), 0.0);
  EXPECT_EQ(classical_xft(tpm_distribution(rho, l, 0.0, b), 1.3), 0.0);
  EXPECT_NEAR(classical_xft(d, 1.3), 1.3 * mean_energy_change(d), 1e-16);
}

TEST(ClassicalXft, TpmEqualityOnThermalProductFamily) {
  // For initial Gibbs populations at beta_S the TPM log-ratio is exactly
  // (beta_S - beta) dE by detailed balance of the channel.
  const BathParams p = params(1.0 - 1e-5);
  const double beta = inverse_temperature(p);
  const double bs = 1.5 * beta;
  const auto l = build_liouvillian(p);
  const auto b = computational_basis(p);
  for (double r : {0.0, 0.08, 0.17}) {
    const auto rho = thermal_coherent_product(bs, CoherenceBlock::real(r), p);
    for (double t : {1.0, 50.0, 1e4}) {
      const auto d = tpm_distribution(rho, l, t, b);
      const auto e = pairwise_entropy(d);
      for (int i = 0; i < 4; ++i)
        for (int f = 0; f < 4; ++f)
          if (e.finite_mask(i, f))
            EXPECT_NEAR(e.sigma(i, f), (bs - beta) * d.energy_change(i, f), 1e-10);
      EXPECT_NEAR(average_entropy(d).value, classical_xft(d, bs - beta), 1e-10);
    }
  }
}

TEST(GammaCorrection, GibbsCancels) {
  const BathParams p = params(0.5);
  const double beta = inverse_temperature(p);
  for (auto kind : {BasisKind::Computational, BasisKind::Common}) {
    const auto g = gamma_correction(gibbs_state(p), make_basis(kind, p), beta);
    EXPECT_LT(g.cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(GammaCorrection, DiagonalVanishes) {
  std::mt19937_64 rng(36);
  const auto b = computational_basis(BathParams{});
  const auto g = gamma_correction(oracle::random_state(rng), b, 0.7);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(g(i, i), 0.0);
}

TEST(GammaCorrection, DecompositionOfEpmEntropy) {
  const BathParams p = params(1.0 - 1e-5);
  const double beta = inverse_temperature(p);
  const double bs = 1.5 * beta;
  const auto l = build_liouvillian(p);
  const auto b = computational_basis(p);
  for (double r : {0.0, 0.1, 0.18}) {
    const auto rho = thermal_coherent_product(bs, CoherenceBlock::real(r), p);
    const Propagator phi(l, 50.0);
    const auto d = epm_distribution(rho, phi, b);
    const auto gamma = gamma_correction(phi(rho), b, beta);
    const auto e = pairwise_entropy(d);
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int f = 0; f < 4; ++f) {
        EXPECT_NEAR(e.sigma(i, f), (bs - beta) * d.energy_change(i, f) + gamma(i, f), 1e-10);
        off = std::max(off, std::abs(gamma(i, f)));
      }
    EXPECT_GT(off, 1e-3);
  }
}

TEST(GammaCorrection, RejectsZeroPopulation) {
  Mat4 ket = Mat4::Zero();
  ket(0, 0) = 1.0;
  EXPECT_THROW(gamma_correction(DensityMatrix(ket), computational_basis(BathParams{}), 1.0),
               DomainError);
}

TEST(ReverseNormalization, IdentityChannel) {
  std::mt19937_64 rng(37);
  const Superoperator id(Mat16::Identity());
  EXPECT_LT(reverse_normalization_defect(oracle::random_state(rng), id,
                                         computational_basis(BathParams{})),
            1e-15);
}

TEST(ReverseNormalization, UnitaryChannels) {
  std::mt19937_64 rng(38);
  for (int k = 0; k < 10; ++k) {
    const Mat4 u = oracle::random_unitary(rng);
    const Superoperator channel(sandwich(u, u.adjoint()));
    for (auto kind : {BasisKind::Computational, BasisKind::Common})
      EXPECT_LT(reverse_normalization_defect(oracle::random_state(rng), channel,
                                             make_basis(kind, BathParams{})),
                1e-10);
  }
}

TEST(ReverseNormalization, ModelChannelIsReported) {
  const BathParams p = params(1.0 - 1e-5);
  const double bs = 1.5 * inverse_temperature(p);
  const auto rho = thermal_coherent_product(bs, CoherenceBlock::real(0.1), p);
  const double defect = reverse_normalization_defect(rho, build_liouvillian(p), 50.0,
                                                     computational_basis(p));
  EXPECT_TRUE(std::isfinite(defect));
  EXPECT_GT(defect, 1e-6);  // non-unital
}

TEST(EntropyRate, ConstantSeriesIsZero) {
  const std::vector<double> t{0.1, 0.5, 0.7, 3.0, 10.0};
  const std::vector<double> v(5, 0.123456789);
  for (double r : entropy_rate(t, v)) EXPECT_EQ(r, 0.0);
}

TEST(EntropyRate, ExactOnQuadratics) {
  const std::vector<double> t{0.0, 0.3, 1.0, 1.1, 2.5, 4.0};
  std::vector<double> v, want;
  for (double x : t) {
    v.push_back(2.0 - 0.5 * x + 0.75 * x * x);
    want.push_back(-0.5 + 1.5 * x);
  }
  const auto r = entropy_rate(t, v);
  for (size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(r[k], want[k], 1e-12);
}

TEST(EntropyRate, Rejections) {
  const std::vector<double> two{0.0, 1.0};
  EXPECT_THROW(entropy_rate(two, two), DomainError);
  const std::vector<double> bad{0.0, 2.0, 1.0};
  EXPECT_THROW(entropy_rate(bad, bad), DomainError);
  const std::vector<double> flat{0.0, 1.0, 1.0};
  EXPECT_THROW(entropy_rate(flat, flat), DomainError);
  const std::vector<double> three{0.0, 1.0, 2.0};
  EXPECT_THROW(entropy_rate(three, two), DomainError);
}

TEST(EntropySeries, ColumnsConsistent) {
  const BathParams p = params(1.0 - 1e-5);
  const double bs = 1.5 * inverse_temperature(p);
  const auto rho = thermal_coherent_product(bs, CoherenceBlock::real(0.1), p);
  const auto l = build_liouvillian(p);
  const auto b = computational_basis(p);
  std::vector<double> t;
  for (double x = 0.01; x < 1e7; x *= 1.5) t.push_back(x);
  const auto s = entropy_series(rho, l, t, b);
  ASSERT_EQ(s.avg_sigma_epm.size(), t.size());
  ASSERT_EQ(s.rate_tpm.size(), t.size());
  for (size_t k = 0; k < t.size(); ++k) {
    EXPECT_GE(s.avg_sigma_epm[k], 0.0);
    EXPECT_NEAR(s.avg_sigma_tpm[k],
                average_entropy(tpm_distribution(rho, l, t[k], b)).value, 1e-14);
  }
  EXPECT_LE(std::abs(s.rate_epm.back()), 1e-6);
  EXPECT_LE(std::abs(s.rate_tpm.back()), 1e-6);
}
