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

#include <fstream>

#include "prethermal/errors.hpp"
#include "prethermal/experiments.hpp"

namespace prethermal::experiments {

namespace {

constexpr double kPrethermalAlpha = 1.0 - 1e-5;
constexpr double kThermalizingAlpha = 0.5;
// Grid density is a reproduction choice, not a published value.
constexpr int kLogGridPoints = 200;
constexpr int kSweepPoints = 40;
constexpr double kFig3FinalTime = 50.0;
constexpr double kFig3BetaRatio = 1.5;
constexpr double kFig5Coherence = 0.1;

BathParams bath(double alpha) { return {1.0, 0.1, 0.9, alpha}; }

TimeGrid log_grid(double start, double stop) {
  return {start, stop, kLogGridPoints, Spacing::Geometric};
}

Scenario energy_scenario(std::string name, double alpha, InitialStateSpec state) {
  Scenario s;
  s.name = std::move(name);
  s.model = bath(alpha);
  s.initial_state = std::move(state);
  s.basis = BasisKind::Computational;
  s.time_grid = log_grid(1e-2, 1e6);
  s.outputs = {"mean_dE_tpm", "mean_dE_epm", "dE_coh"};
  return s;
}

InitialStateSpec fig1_state() {
  InitialStateSpec st;
  st.kind = InitialStateKind::MmsWithCoherence;
  st.chi = {{"xx", 0.2 * 0.3}};
  return st;
}

InitialStateSpec product_state(double r) {
  InitialStateSpec st;
  st.kind = InitialStateKind::ThermalCoherentProduct;
  st.beta_s_ratio = kFig3BetaRatio;
  st.r1 = st.r2 = r;
  return st;
}

// kSweepPoints values k / kSweepPoints * (1/Z), all strictly inside the
// positivity bound.
Sweep coherence_sweep(const BathParams& p) {
  const double beta_s = kFig3BetaRatio * inverse_temperature(p);
  const double limit = 1.0 / local_partition_function(beta_s, p.omega0);
  Sweep sw;
  sw.parameter = SweepParameter::R;
  for (int k = 0; k < kSweepPoints; ++k) {
    sw.values.push_back(limit * k / kSweepPoints);
  }
  return sw;
}

Scenario sweep_scenario(std::string name, BasisKind basis) {
  Scenario s;
  s.name = std::move(name);
  s.model = bath(kPrethermalAlpha);
  s.initial_state = product_state(0.0);
  s.basis = basis;
  s.time_grid = {kFig3FinalTime, kFig3FinalTime, 1, Spacing::Linear};
  s.sweep = coherence_sweep(s.model);
  return s;
}

}  // namespace

std::vector<Scenario> figure_presets(std::string_view figure) {
  std::vector<Scenario> out;
  if (figure == "fig1") {
    out.push_back(energy_scenario("fig1_main", kPrethermalAlpha, fig1_state()));
    out.push_back(energy_scenario("fig1_inset", kThermalizingAlpha, fig1_state()));
  } else if (figure == "fig2") {
    const std::pair<BellKind, const char*> kinds[] = {
        {BellKind::PhiPlus, "fig2_phi_plus"},
        {BellKind::PhiMinus, "fig2_phi_minus"},
        {BellKind::PsiPlus, "fig2_psi_plus"},
        {BellKind::PsiMinus, "fig2_psi_minus"}};
    for (const auto& [kind, name] : kinds) {
      InitialStateSpec st;
      st.kind = InitialStateKind::Bell;
      st.bell = kind;
      out.push_back(energy_scenario(name, kPrethermalAlpha, st));
    }
  } else if (figure == "fig3") {
    Scenario s = sweep_scenario("fig3", BasisKind::Computational);
    s.outputs = {"avg_sigma_tpm", "avg_sigma_epm", "classical_tpm",
                 "classical_epm", "mean_dE_tpm",   "mean_dE_epm"};
    out.push_back(std::move(s));
  } else if (figure == "fig4") {
    for (BasisKind basis : {BasisKind::Computational, BasisKind::Common}) {
      Scenario s = sweep_scenario("fig4_" + std::string(to_string(basis)), basis);
      s.outputs = {"mean_dE_tpm", "mean_dE_epm", "avg_sigma_tpm", "avg_sigma_epm"};
      out.push_back(std::move(s));
    }
  } else if (figure == "fig5") {
    Scenario s;
    s.name = "fig5";
    s.model = bath(kPrethermalAlpha);
    s.initial_state = product_state(kFig5Coherence);
    s.basis = BasisKind::Computational;
    s.time_grid = log_grid(1e-2, 1e7);
    s.outputs = {"avg_sigma_tpm", "avg_sigma_epm", "rate_tpm", "rate_epm",
                 "mean_dE_tpm", "mean_dE_epm"};
    out.push_back(std::move(s));
  } else {
    throw ConfigError("unknown figure '" + std::string(figure) +
                      "' (expected fig1 .. fig5)");
  }
  return out;
}

std::vector<std::filesystem::path> reproduce(std::string_view figure,
                                             const std::filesystem::path& dir,
                                             const RunOptions& opts) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const Scenario& s : figure_presets(figure)) {
    save_scenario(s, dir / (s.name + ".json"));
    const auto csv = dir / (s.name + ".csv");
    run_scenario(s, csv, opts);
    written.push_back(csv);
  }
  return written;
}

}  // namespace prethermal::experiments
