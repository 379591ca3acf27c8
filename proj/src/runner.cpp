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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <thread>

#include <spdlog/spdlog.h>

#include "prethermal/errors.hpp"
#include "prethermal/experiments.hpp"
#include "prethermal/thermo.hpp"

namespace prethermal::experiments {

namespace {

struct Job {
  std::size_t index = 0;
  std::optional<double> sweep_value;
  BathParams model;
  InitialStateSpec state;
  std::vector<double> times;
};

using Row = std::vector<double>;

std::vector<Job> make_jobs(const Scenario& s) {
  std::vector<Job> jobs;
  if (!s.sweep) {
    jobs.push_back({0, std::nullopt, s.model, s.initial_state, s.time_grid.values()});
    return jobs;
  }
  if (s.sweep->parameter == SweepParameter::FinalTime) {
    // A t_f sweep is one trajectory sampled at the requested final times.
    jobs.push_back({0, std::nullopt, s.model, s.initial_state, s.sweep->values});
    return jobs;
  }
  const std::vector<double> times = s.time_grid.values();
  for (std::size_t k = 0; k < s.sweep->values.size(); ++k) {
    Job job{k, s.sweep->values[k], s.model, s.initial_state, times};
    if (s.sweep->parameter == SweepParameter::Alpha) {
      job.model.alpha = s.sweep->values[k];
    } else {
      job.state.r1 = job.state.r2 = s.sweep->values[k];
    }
    jobs.push_back(std::move(job));
  }
  return jobs;
}

double delta_beta_for(const Scenario& s, const Job& job) {
  if (s.delta_beta) return *s.delta_beta;
  const double beta = inverse_temperature(job.model);
  const double beta_s = job.state.beta_s
                            ? *job.state.beta_s
                            : job.state.beta_s_ratio.value_or(1.0) * beta;
  return beta_s - beta;
}

std::vector<Row> run_job(const Scenario& s, const Job& job) {
  const bool t_f_sweep =
      s.sweep && s.sweep->parameter == SweepParameter::FinalTime;
  const Superoperator generator = build_liouvillian(job.model);
  const MeasurementBasis basis = make_basis(s.basis, job.model);
  const DensityMatrix rho0 = build_initial_state(job.state, job.model);
  const double beta = inverse_temperature(job.model);

  std::map<std::string, std::vector<double>> columns;
  auto wants = [&](std::string_view name) {
    return std::find(s.outputs.begin(), s.outputs.end(), name) !=
           s.outputs.end();
  };
  const bool classical = wants("classical_tpm") || wants("classical_epm");
  const double delta_beta = classical ? delta_beta_for(s, job) : 0.0;
  const double gap = wants("gap") ? spectrum(generator).gap : 0.0;
  const double ell =
      lagrange_multiplier(magnetizations(rho0).F(), beta * job.model.omega0);

  for (double t : job.times) {
    const Propagator phi(generator, t);
    columns["t"].push_back(t);
    if (t_f_sweep) {
      columns["sweep_value"].push_back(t);
    } else if (job.sweep_value) {
      columns["sweep_value"].push_back(*job.sweep_value);
    }
    if (s.tpm) {
      const JointDistribution d = tpm_distribution(rho0, phi, basis);
      columns["mean_dE_tpm"].push_back(mean_energy_change(d));
      columns["avg_sigma_tpm"].push_back(average_entropy(d).value);
      columns["classical_tpm"].push_back(classical_xft(d, delta_beta));
    }
    if (s.epm) {
      const JointDistribution d = epm_distribution(rho0, phi, basis);
      columns["mean_dE_epm"].push_back(mean_energy_change(d));
      columns["avg_sigma_epm"].push_back(average_entropy(d).value);
      columns["classical_epm"].push_back(classical_xft(d, delta_beta));
    }
    if (wants("dE_coh")) {
      columns["dE_coh"].push_back(
          coherent_energy_difference(rho0, phi, basis).direct);
    }
    columns["gap"].push_back(gap);
    columns["F"].push_back(magnetizations(phi(rho0)).F());
    columns["ell"].push_back(ell);
  }
  if (wants("rate_tpm")) {
    columns["rate_tpm"] = entropy_rate(job.times, columns["avg_sigma_tpm"]);
  }
  if (wants("rate_epm")) {
    columns["rate_epm"] = entropy_rate(job.times, columns["avg_sigma_epm"]);
  }

  const std::vector<std::string> header = csv_header(s);
  std::vector<Row> rows(job.times.size(), Row(header.size()));
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& col = columns.at(header[c]);
    for (std::size_t r = 0; r < rows.size(); ++r) rows[r][c] = col[r];
  }
  return rows;
}

// Re-runs the failing job point by point to name the offending time.
[[noreturn]] void report_failure(const Scenario& s, const Job& job,
                                 const std::exception& e) {
  std::string where = job.sweep_value
                          ? "sweep value " + format_number(*job.sweep_value)
                          : std::string("no sweep");
  for (double t : job.times) {
    Job single = job;
    single.times = {t};
    try {
      Scenario probe = s;
      probe.outputs.erase(
          std::remove_if(probe.outputs.begin(), probe.outputs.end(),
                         [](const std::string& o) { return o.starts_with("rate_"); }),
          probe.outputs.end());
      run_job(probe, single);
    } catch (const std::exception&) {
      throw NumericalError("numerical failure at t = " + format_number(t) +
                           ", " + where + ": " + e.what());
    }
  }
  throw NumericalError("numerical failure, " + where + ": " + e.what());
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<std::string> csv_header(const Scenario& s) {
  std::vector<std::string> h = {"t"};
  if (s.sweep) h.push_back("sweep_value");
  h.insert(h.end(), s.outputs.begin(), s.outputs.end());
  return h;
}

std::string run_scenario(const Scenario& s, const RunOptions& opts) {
  validate(s);
  const std::vector<Job> jobs = make_jobs(s);
  std::vector<std::vector<Row>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        spdlog::debug("scenario '{}': job {}/{}", s.name, k + 1, jobs.size());
        results[k] = run_job(s, jobs[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int n_threads =
      std::clamp<int>(opts.threads, 1, static_cast<int>(jobs.size()));
  {
    std::vector<std::jthread> pool;
    for (int k = 1; k < n_threads; ++k) pool.emplace_back(worker);
    worker();
  }

  for (std::size_t k = 0; k < jobs.size(); ++k) {
    if (!errors[k]) continue;
    try {
      std::rethrow_exception(errors[k]);
    } catch (const std::exception& e) {
      report_failure(s, jobs[k], e);
    }
  }

  std::string out;
  const auto header = csv_header(s);
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out += ',';
    out += header[c];
  }
  out += '\n';
  for (const auto& rows : results) {
    for (const Row& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ',';
        out += format_number(row[c]);
      }
      out += '\n';
    }
  }
  return out;
}

void run_scenario(const Scenario& s, const std::filesystem::path& out,
                  const RunOptions& opts) {
  const std::string csv = run_scenario(s, opts);
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  std::ofstream file(out, std::ios::binary);
  if (!file) throw ConfigError("cannot write output file " + out.string());
  file << csv;
}

}  // namespace prethermal::experiments
