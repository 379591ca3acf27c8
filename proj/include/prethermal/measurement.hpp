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

#include <array>
#include <map>
#include <string_view>

#include "prethermal/linalg.hpp"
#include "prethermal/model.hpp"

namespace prethermal {

enum class BasisKind { Computational, Common };

std::string_view to_string(BasisKind kind);

// Four rank-1 projectors onto energy eigenstates, with their energies.
struct MeasurementBasis {
  std::array<Mat4, 4> projectors;
  std::array<double, 4> energies{};
  BasisKind kind = BasisKind::Computational;

  std::string_view label() const { return to_string(kind); }
};

// |00>, |01>, |10>, |11> with E = (w0, 0, 0, -w0).
MeasurementBasis computational_basis(const BathParams& p);
// |00>, psi-, psi+, |11> with E = (w0, 0, 0, -w0).
MeasurementBasis common_basis(const BathParams& p);
MeasurementBasis make_basis(BasisKind kind, const BathParams& p);

enum class Protocol { TPM, EPM };

std::string_view to_string(Protocol protocol);

// Negative entries above this magnitude are rounding; below it, an error.
inline constexpr double kNegativeProbabilityTol = 1e-12;
inline constexpr double kNormalizationTol = 1e-10;

// p(i, f) over initial/final projector indices of one basis.
struct JointDistribution {
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
  MeasurementBasis basis;
  Protocol protocol = Protocol::TPM;
  double time = 0.0;

  Eigen::Vector4d initial_marginal() const { return p.rowwise().sum(); }
  Eigen::Vector4d final_marginal() const { return p.colwise().sum(); }
  double energy_change(int i, int f) const {
    return basis.energies[f] - basis.energies[i];
  }
};

// sum_i P_i rho P_i.
Mat4 dephase(const Mat4& rho, const MeasurementBasis& b);
DensityMatrix dephase(const DensityMatrix& rho, const MeasurementBasis& b);

// p(i, f) = Tr[P_f Phi_t(P_i rho0 P_i) P_f].
JointDistribution tpm_distribution(const DensityMatrix& rho0,
                                   const Propagator& phi,
                                   const MeasurementBasis& b);
JointDistribution tpm_distribution(const DensityMatrix& rho0,
                                   const Superoperator& generator, double t,
                                   const MeasurementBasis& b);

// p(i, f) = Tr[P_i rho0] Tr[P_f Phi_t(rho0)].
JointDistribution epm_distribution(const DensityMatrix& rho0,
                                   const Propagator& phi,
                                   const MeasurementBasis& b);
JointDistribution epm_distribution(const DensityMatrix& rho0,
                                   const Superoperator& generator, double t,
                                   const MeasurementBasis& b);

// sum_{i,f} p(i, f) (E_f - E_i).
double mean_energy_change(const JointDistribution& d);

// Aggregated view over the distinct values of E_f - E_i (lossy under
// degeneracy; keys rounded to 1e-12).
std::map<double, double> energy_change_histogram(const JointDistribution& d);

struct CoherentEnergyGap {
  double direct = 0.0;     // <dE>_EPM - <dE>_TPM
  double coherent = 0.0;   // sum_i E_i Tr[P_i Phi_t(rho0 - D[rho0])]
};

inline constexpr double kCoherentGapTol = 1e-10;

// Throws NumericalError when the two evaluations differ by more than
// kCoherentGapTol.
CoherentEnergyGap coherent_energy_difference(const DensityMatrix& rho0,
                                             const Propagator& phi,
                                             const MeasurementBasis& b);
CoherentEnergyGap coherent_energy_difference(const DensityMatrix& rho0,
                                             const Superoperator& generator,
                                             double t,
                                             const MeasurementBasis& b);

}  // namespace prethermal
