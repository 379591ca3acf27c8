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

#include "prethermal/thermo.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "prethermal/errors.hpp"

namespace prethermal {

namespace {
constexpr double kInfiniteWeightTol = 1e-12;
}

EntropyPairTable pairwise_entropy(const JointDistribution& d) {
  EntropyPairTable t;
  t.finite_mask.setConstant(false);
  t.infinite_mask.setConstant(false);
  for (int i = 0; i < 4; ++i) {
    for (int f = 0; f < 4; ++f) {
      const double forward = d.p(i, f);
      const double backward = d.p(f, i);
      if (forward <= kProbabilityFloor) continue;
      if (backward <= kProbabilityFloor) {
        t.infinite_mask(i, f) = true;
        continue;
      }
      t.sigma(i, f) = (i == f) ? 0.0 : std::log(forward) - std::log(backward);
      t.finite_mask(i, f) = true;
    }
  }
  return t;
}

AverageEntropy average_entropy(const JointDistribution& d) {
  const EntropyPairTable t = pairwise_entropy(d);
  AverageEntropy out;
  for (int i = 0; i < 4; ++i) {
    for (int f = 0; f < 4; ++f) {
      if (t.finite_mask(i, f)) {
        out.value += d.p(i, f) * t.sigma(i, f);
      } else if (t.infinite_mask(i, f) && d.p(i, f) > kInfiniteWeightTol) {
        out.diagnostic += "p(" + std::to_string(i) + "," + std::to_string(f) +
                          ") = " + std::to_string(d.p(i, f)) +
                          " has no reverse counterpart; ";
      }
    }
  }
  if (!out.diagnostic.empty()) {
    out.value = std::numeric_limits<double>::infinity();
  }
  return out;
}

double classical_xft(const JointDistribution& d, double delta_beta) {
  return delta_beta * mean_energy_change(d);
}

Eigen::Matrix4d gamma_correction(const DensityMatrix& rho_ss,
                                 const MeasurementBasis& b, double beta) {
  Eigen::Vector4d pop;
  for (int k = 0; k < 4; ++k) {
    pop(k) = (b.projectors[k] * rho_ss.matrix()).trace().real();
    if (!(pop(k) > 0.0)) {
      throw DomainError("gamma_correction: steady-state population " +
                        std::to_string(k) + " vanishes");
    }
  }
  Eigen::Matrix4d g;
  for (int i = 0; i < 4; ++i) {
    for (int f = 0; f < 4; ++f) {
      g(i, f) = (i == f) ? 0.0
                         : beta * (b.energies[f] - b.energies[i]) +
                               std::log(pop(f)) - std::log(pop(i));
    }
  }
  return g;
}

Eigen::Matrix4d reverse_tpm_distribution(const DensityMatrix& rho0,
                                         const Superoperator& channel,
                                         const MeasurementBasis& b) {
  const Mat4 forward_final =
      dephase(channel.apply(dephase(rho0.matrix(), b)), b);
  const Superoperator backward = channel.adjoint();
  Eigen::Matrix4d p;
  for (int f = 0; f < 4; ++f) {
    const Mat4& pf = b.projectors[f];
    const Mat4 evolved = backward.apply(pf * forward_final * pf);
    for (int i = 0; i < 4; ++i) {
      p(f, i) = (b.projectors[i] * evolved).trace().real();
    }
  }
  return p;
}

double reverse_normalization_defect(const DensityMatrix& rho0,
                                    const Superoperator& channel,
                                    const MeasurementBasis& b) {
  return std::abs(reverse_tpm_distribution(rho0, channel, b).sum() - 1.0);
}

double reverse_normalization_defect(const DensityMatrix& rho0,
                                    const Superoperator& generator, double t,
                                    const MeasurementBasis& b) {
  return reverse_normalization_defect(
      rho0, Propagator(generator, t).channel(), b);
}

std::vector<double> entropy_rate(std::span<const double> times,
                                 std::span<const double> values) {
  const std::size_t n = times.size();
  if (n < 3) throw DomainError("entropy_rate: need at least three samples");
  if (values.size() != n) {
    throw DomainError("entropy_rate: times and values differ in length");
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (!(times[k] > times[k - 1])) {
      throw DomainError("entropy_rate: time grid must be strictly increasing");
    }
  }
  std::vector<double> rate(n);
  // Differences against the anchor sample keep constant series exactly flat.
  {
    const double h1 = times[1] - times[0];
    const double h2 = times[2] - times[1];
    rate[0] = (h1 + h2) / (h1 * h2) * (values[1] - values[0]) -
              h1 / (h2 * (h1 + h2)) * (values[2] - values[0]);
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double h1 = times[k] - times[k - 1];
    const double h2 = times[k + 1] - times[k];
    rate[k] = -h2 / (h1 * (h1 + h2)) * (values[k - 1] - values[k]) +
              h1 / (h2 * (h1 + h2)) * (values[k + 1] - values[k]);
  }
  {
    const double h1 = times[n - 2] - times[n - 3];
    const double h2 = times[n - 1] - times[n - 2];
    rate[n - 1] = h2 / (h1 * (h1 + h2)) * (values[n - 3] - values[n - 1]) -
                  (h1 + h2) / (h1 * h2) * (values[n - 2] - values[n - 1]);
  }
  return rate;
}

EntropySeries entropy_series(const DensityMatrix& rho0,
                             const Superoperator& generator,
                             std::span<const double> times,
                             const MeasurementBasis& b) {
  EntropySeries s;
  s.times.assign(times.begin(), times.end());
  for (double t : times) {
    const Propagator phi(generator, t);
    s.avg_sigma_tpm.push_back(
        average_entropy(tpm_distribution(rho0, phi, b)).value);
    s.avg_sigma_epm.push_back(
        average_entropy(epm_distribution(rho0, phi, b)).value);
  }
  s.rate_tpm = entropy_rate(s.times, s.avg_sigma_tpm);
  s.rate_epm = entropy_rate(s.times, s.avg_sigma_epm);
  return s;
}

}  // namespace prethermal
