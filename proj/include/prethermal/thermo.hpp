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

#include <span>
#include <string>
#include <vector>

#include "prethermal/measurement.hpp"

namespace prethermal {

// Probabilities at or below this are structural zeros for the logarithms.
inline constexpr double kProbabilityFloor = 1e-300;

// Sigma_if = ln[p(i,f) / p(f,i)] per projector pair.
struct EntropyPairTable {
  Eigen::Matrix4d sigma = Eigen::Matrix4d::Zero();
  // Entry carries a finite log-ratio.
  Eigen::Matrix<bool, 4, 4> finite_mask;
  // p(i,f) above the floor while p(f,i) is not: the log-ratio diverges.
  Eigen::Matrix<bool, 4, 4> infinite_mask;
};

EntropyPairTable pairwise_entropy(const JointDistribution& d);

struct AverageEntropy {
  double value = 0.0;
  // Empty unless an infinite entry carried weight above 1e-12.
  std::string diagnostic;
};

// <Sigma> = sum p(i,f) Sigma_if over finite entries; +inf (with a diagnostic)
// when a divergent entry carries probability above 1e-12.
AverageEntropy average_entropy(const JointDistribution& d);

// delta_beta * <dE> under d.
double classical_xft(const JointDistribution& d, double delta_beta);

// Gamma_if = ln[e^{beta dE_if} Tr[rho_ss P_f] / Tr[rho_ss P_i]].
// Throws DomainError if a population of rho_ss in b vanishes.
Eigen::Matrix4d gamma_correction(const DensityMatrix& rho_ss,
                                 const MeasurementBasis& b, double beta);

// Reverse TPM statistics p~(f -> i) = Tr[P_i Phi^dag(P_f rho_D P_f)], where
// rho_D = D[Phi(D[rho0])] is the dephased final state of the forward TPM run
// and Phi^dag the Hilbert-Schmidt adjoint (observable picture) of the
// channel. Row index f, column index i.
Eigen::Matrix4d reverse_tpm_distribution(const DensityMatrix& rho0,
                                         const Superoperator& channel,
                                         const MeasurementBasis& b);

// |sum p~ - 1| = |Tr[rho_D Phi(1)] - 1|; zero for unital channels.
double reverse_normalization_defect(const DensityMatrix& rho0,
                                    const Superoperator& channel,
                                    const MeasurementBasis& b);
double reverse_normalization_defect(const DensityMatrix& rho0,
                                    const Superoperator& generator, double t,
                                    const MeasurementBasis& b);

// d<Sigma>/dt on a strictly increasing grid of at least three points:
// three-point central differences inside, three-point one-sided at the ends
// (all exact for quadratics on any grid). Throws DomainError otherwise.
std::vector<double> entropy_rate(std::span<const double> times,
                                 std::span<const double> values);

struct EntropySeries {
  std::vector<double> times;
  std::vector<double> avg_sigma_tpm;
  std::vector<double> avg_sigma_epm;
  std::vector<double> rate_tpm;
  std::vector<double> rate_epm;
};

EntropySeries entropy_series(const DensityMatrix& rho0,
                             const Superoperator& generator,
                             std::span<const double> times,
                             const MeasurementBasis& b);

}  // namespace prethermal
