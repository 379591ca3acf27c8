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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "prethermal/measurement.hpp"
#include "prethermal/model.hpp"
#include "prethermal/states.hpp"

namespace prethermal::experiments {

inline constexpr int kSchemaVersion = 1;

enum class InitialStateKind { MmsWithCoherence, Bell, ThermalCoherentProduct };

// coeff * s_a (x) s_b with pauli = "ab", a, b in {i, x, y, z}.
struct PauliTerm {
  std::string pauli;
  double coeff = 0.0;
};

struct InitialStateSpec {
  InitialStateKind kind = InitialStateKind::MmsWithCoherence;
  // mms_with_coherence
  std::vector<PauliTerm> chi;
  // bell
  BellKind bell = BellKind::PhiPlus;
  // thermal_coherent_product: beta_S is either absolute or a multiple of the
  // bath beta.
  std::optional<double> beta_s;
  std::optional<double> beta_s_ratio;
  double r1 = 0.0;
  double r2 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
};

enum class Spacing { Linear, Geometric };

struct TimeGrid {
  double start = 0.0;
  double stop = 0.0;
  int points = 1;
  Spacing spacing = Spacing::Linear;

  std::vector<double> values() const;
};

enum class SweepParameter { R, Alpha, FinalTime };

struct Sweep {
  SweepParameter parameter = SweepParameter::R;
  std::vector<double> values;
};

struct Scenario {
  std::string name;
  BathParams model;
  InitialStateSpec initial_state;
  BasisKind basis = BasisKind::Computational;
  TimeGrid time_grid;
  std::optional<Sweep> sweep;
  bool tpm = true;
  bool epm = true;
  std::optional<double> delta_beta;
  std::vector<std::string> outputs;
};

// Observable columns a scenario may request.
const std::vector<std::string_view>& known_outputs();

// Strict schema: unknown keys, wrong types and out-of-domain values raise
// ConfigError naming the offending field.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
// Parse errors carry the line and column of the offending byte.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

// Semantic checks beyond the schema (domains, protocol/output consistency).
void validate(const Scenario& s);

DensityMatrix build_initial_state(const InitialStateSpec& spec,
                                  const BathParams& p);
Mat4 chi_from_terms(const std::vector<PauliTerm>& terms);

struct RunOptions {
  int threads = 1;
};

// Column names in output order.
std::vector<std::string> csv_header(const Scenario& s);

// Full CSV document: header, then one row per (sweep value, time) ordered by
// sweep index then time index. Numbers use 17 significant digits.
std::string run_scenario(const Scenario& s, const RunOptions& opts = {});
void run_scenario(const Scenario& s, const std::filesystem::path& out,
                  const RunOptions& opts = {});

std::string format_number(double v);

inline constexpr std::string_view kFigures[] = {"fig1", "fig2", "fig3", "fig4",
                                                "fig5"};

// Preset scenarios bound to one figure; names double as file stems.
std::vector<Scenario> figure_presets(std::string_view figure);

// Writes <name>.json and <name>.csv for every preset of the figure and
// returns the CSV paths.
std::vector<std::filesystem::path> reproduce(std::string_view figure,
                                             const std::filesystem::path& dir,
                                             const RunOptions& opts = {});

}  // namespace prethermal::experiments
