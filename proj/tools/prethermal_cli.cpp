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

#include <complex>
#include <cstdio>
#include <iostream>
#include <string>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "prethermal/errors.hpp"
#include "prethermal/experiments.hpp"
#include "prethermal/model.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitOther = 1;

using prethermal::experiments::format_number;

int print_spectrum(const prethermal::BathParams& p) {
  p.validate();
  const auto s = prethermal::spectrum(prethermal::build_liouvillian(p));
  std::cout << "beta," << format_number(prethermal::inverse_temperature(p)) << '\n'
            << "null_dimension," << s.null_dimension << '\n'
            << "gap," << format_number(s.gap) << '\n'
            << "equilibration_time," << format_number(s.equilibration_time) << '\n'
            << "index,re,im\n";
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    std::cout << k << ',' << format_number(s.eigenvalues[k].real()) << ','
              << format_number(s.eigenvalues[k].imag()) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit prethermalization: dynamics, TPM/EPM statistics, "
               "entropy production"};
  app.require_subcommand(1);

  int threads = 1;
  std::string log_level = "warn";
  app.add_option("--threads", threads, "Worker threads for sweeps")
      ->check(CLI::PositiveNumber);
  app.add_option("--log-level", log_level, "trace|debug|info|warn|error|off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  std::string config_path, out_path;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario config to CSV");
  simulate->add_option("--config", config_path, "Scenario JSON")->required();
  simulate->add_option("--out", out_path, "Output CSV path")->required();

  std::string figure, out_dir;
  auto* reproduce = app.add_subcommand("reproduce", "Emit preset configs and CSVs");
  reproduce->add_option("figure", figure, "fig1 .. fig5")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5"}));
  reproduce->add_option("--out-dir", out_dir, "Output directory")->required();

  prethermal::BathParams params;
  auto* spectrum = app.add_subcommand("spectrum", "Liouvillian eigenvalues and gap");
  spectrum->add_option("--alpha", params.alpha, "Spatial correlation")->required();
  spectrum->add_option("--A", params.A, "Absorption rate");
  spectrum->add_option("--B", params.B, "Emission rate");
  spectrum->add_option("--omega0", params.omega0, "Qubit splitting");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(log_level));

  const prethermal::experiments::RunOptions opts{threads};
  try {
    if (*simulate) {
      const auto scenario = prethermal::experiments::load_scenario(config_path);
      spdlog::info("running '{}' -> {}", scenario.name, out_path);
      prethermal::experiments::run_scenario(scenario, out_path, opts);
    } else if (*reproduce) {
      for (const auto& path :
           prethermal::experiments::reproduce(figure, out_dir, opts)) {
        spdlog::info("wrote {}", path.string());
        std::cout << path.string() << '\n';
      }
    } else if (*spectrum) {
      return print_spectrum(params);
    }
  } catch (const prethermal::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const prethermal::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const prethermal::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return 0;
}
