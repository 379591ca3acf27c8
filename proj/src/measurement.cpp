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

#include "prethermal/measurement.hpp"

#include <cmath>
#include <string>

#include "prethermal/errors.hpp"
#include "prethermal/states.hpp"

namespace prethermal {

namespace {

Mat4 projector(const Vec4& v) { return v * v.adjoint(); }

double expectation(const Mat4& proj, const Mat4& x) {
  return (proj * x).trace().real();
}

// Clips rounding-level negatives and checks normalization.
void finalize(JointDistribution& d) {
  for (int i = 0; i < 4; ++i) {
    for (int f = 0; f < 4; ++f) {
      double& v = d.p(i, f);
      if (v < -kNegativeProbabilityTol || !std::isfinite(v)) {
        throw NumericalError("negative joint probability p(" +
                             std::to_string(i) + "," + std::to_string(f) +
                             ") = " + std::to_string(v) + " at t = " +
                             std::to_string(d.time));
      }
      if (v < 0.0) v = 0.0;
    }
  }
  const double total = d.p.sum();
  if (std::abs(total - 1.0) > kNormalizationTol) {
    throw NumericalError("joint distribution sums to " +
                         std::to_string(total) + " at t = " +
                         std::to_string(d.time));
  }
}

}  // namespace

std::string_view to_string(BasisKind kind) {
  return kind == BasisKind::Computational ? "computational" : "common";
}

std::string_view to_string(Protocol protocol) {
  return protocol == Protocol::TPM ? "TPM" : "EPM";
}

MeasurementBasis computational_basis(const BathParams& p) {
  MeasurementBasis b;
  b.kind = BasisKind::Computational;
  for (int k = 0; k < 4; ++k) {
    b.projectors[k] = projector(Vec4::Unit(k));
  }
  b.energies = {p.omega0, 0.0, 0.0, -p.omega0};
  return b;
}

MeasurementBasis common_basis(const BathParams& p) {
  MeasurementBasis b;
  b.kind = BasisKind::Common;
  b.projectors = {projector(Vec4::Unit(0)),
                  projector(bell_vector(BellKind::PsiMinus)),
                  projector(bell_vector(BellKind::PsiPlus)),
                  projector(Vec4::Unit(3))};
  b.energies = {p.omega0, 0.0, 0.0, -p.omega0};
  return b;
}

MeasurementBasis make_basis(BasisKind kind, const BathParams& p) {
  return kind == BasisKind::Computational ? computational_basis(p)
                                          : common_basis(p);
}

Mat4 dephase(const Mat4& rho, const MeasurementBasis& b) {
  Mat4 out = Mat4::Zero();
  for (const Mat4& proj : b.projectors) out += proj * rho * proj;
  return out;
}

DensityMatrix dephase(const DensityMatrix& rho, const MeasurementBasis& b) {
  return DensityMatrix(dephase(rho.matrix(), b));
}

JointDistribution tpm_distribution(const DensityMatrix& rho0,
                                   const Propagator& phi,
                                   const MeasurementBasis& b) {
  JointDistribution d;
  d.basis = b;
  d.protocol = Protocol::TPM;
  d.time = phi.time();
  for (int i = 0; i < 4; ++i) {
    const Mat4& pi = b.projectors[i];
    const Mat4 evolved = phi.apply(pi * rho0.matrix() * pi);
    for (int f = 0; f < 4; ++f) {
      d.p(i, f) = expectation(b.projectors[f], evolved);
    }
  }
  finalize(d);
  return d;
}

JointDistribution tpm_distribution(const DensityMatrix& rho0,
                                   const Superoperator& generator, double t,
                                   const MeasurementBasis& b) {
  return tpm_distribution(rho0, Propagator(generator, t), b);
}

JointDistribution epm_distribution(const DensityMatrix& rho0,
                                   const Propagator& phi,
                                   const MeasurementBasis& b) {
  JointDistribution d;
  d.basis = b;
  d.protocol = Protocol::EPM;
  d.time = phi.time();
  const Mat4 evolved = phi.apply(rho0.matrix());
  Eigen::Vector4d in, out;
  for (int k = 0; k < 4; ++k) {
    in(k) = expectation(b.projectors[k], rho0.matrix());
    out(k) = expectation(b.projectors[k], evolved);
  }
  d.p = in * out.transpose();
  finalize(d);
  return d;
}

JointDistribution epm_distribution(const DensityMatrix& rho0,
                                   const Superoperator& generator, double t,
                                   const MeasurementBasis& b) {
  return epm_distribution(rho0, Propagator(generator, t), b);
}

double mean_energy_change(const JointDistribution& d) {
  double mean = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int f = 0; f < 4; ++f) mean += d.p(i, f) * d.energy_change(i, f);
  }
  return mean;
}

std::map<double, double> energy_change_histogram(const JointDistribution& d) {
  std::map<double, double> h;
  for (int i = 0; i < 4; ++i) {
    for (int f = 0; f < 4; ++f) {
      const double key = std::round(d.energy_change(i, f) * 1e12) / 1e12;
      h[key] += d.p(i, f);
    }
  }
  return h;
}

CoherentEnergyGap coherent_energy_difference(const DensityMatrix& rho0,
                                             const Propagator& phi,
                                             const MeasurementBasis& b) {
  CoherentEnergyGap gap;
  gap.direct = mean_energy_change(epm_distribution(rho0, phi, b)) -
               mean_energy_change(tpm_distribution(rho0, phi, b));
  const Mat4 chi = rho0.matrix() - dephase(rho0.matrix(), b);
  const Mat4 evolved = phi.apply(chi);
  for (int k = 0; k < 4; ++k) {
    gap.coherent += b.energies[k] * expectation(b.projectors[k], evolved);
  }
  if (std::abs(gap.direct - gap.coherent) > kCoherentGapTol) {
    throw NumericalError("coherent energy gap mismatch: direct " +
                         std::to_string(gap.direct) + " vs coherent " +
                         std::to_string(gap.coherent));
  }
  return gap;
}

CoherentEnergyGap coherent_energy_difference(const DensityMatrix& rho0,
                                             const Superoperator& generator,
                                             double t,
                                             const MeasurementBasis& b) {
  return coherent_energy_difference(rho0, Propagator(generator, t), b);
}

}  // namespace prethermal
