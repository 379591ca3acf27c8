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
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "prethermal/errors.hpp"
#include "prethermal/experiments.hpp"

namespace prethermal::experiments {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      std::string msg = "unknown key (allowed:";
      for (auto a : allowed) msg += " " + std::string(a);
      fail(path.empty() ? key : path + "." + key, msg + ")");
    }
  }
}

const json& require(const json& obj, const std::string& path,
                    const std::string& key) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required field");
  return obj.at(key);
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

std::string text(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

const json& object(const json& v, const std::string& field) {
  if (!v.is_object()) fail(field, "expected an object");
  return v;
}

std::string_view kind_name(InitialStateKind k) {
  switch (k) {
    case InitialStateKind::MmsWithCoherence:
      return "mms_with_coherence";
    case InitialStateKind::Bell:
      return "bell";
    case InitialStateKind::ThermalCoherentProduct:
      return "thermal_coherent_product";
  }
  return "?";
}

std::string_view sweep_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::R:
      return "r";
    case SweepParameter::Alpha:
      return "alpha";
    case SweepParameter::FinalTime:
      return "t_f";
  }
  return "?";
}

Mat2 pauli_by_letter(char c) {
  switch (c) {
    case 'i':
      return pauli::identity();
    case 'x':
      return pauli::x();
    case 'y':
      return pauli::y();
    case 'z':
      return pauli::z();
  }
  throw DomainError(std::string("unknown Pauli letter '") + c + "'");
}

bool valid_pauli_label(const std::string& s) {
  return s.size() == 2 && s != "ii" &&
         std::all_of(s.begin(), s.end(), [](char c) {
           return c == 'i' || c == 'x' || c == 'y' || c == 'z';
         });
}

InitialStateSpec parse_initial_state(const json& j) {
  const std::string path = "initial_state";
  object(j, path);
  const std::string kind = text(require(j, path, "kind"), path + ".kind");
  InitialStateSpec s;
  if (kind == "mms_with_coherence") {
    reject_unknown(j, path, {"kind", "chi"});
    s.kind = InitialStateKind::MmsWithCoherence;
    if (j.contains("chi")) {
      const json& terms = j.at("chi");
      if (!terms.is_array()) fail(path + ".chi", "expected an array of terms");
      for (std::size_t k = 0; k < terms.size(); ++k) {
        const std::string tp = path + ".chi[" + std::to_string(k) + "]";
        const json& t = object(terms[k], tp);
        reject_unknown(t, tp, {"pauli", "coeff"});
        PauliTerm term{text(require(t, tp, "pauli"), tp + ".pauli"),
                       number(require(t, tp, "coeff"), tp + ".coeff")};
        if (!valid_pauli_label(term.pauli)) {
          fail(tp + ".pauli",
               "expected two letters from {i,x,y,z}, not \"ii\"");
        }
        s.chi.push_back(term);
      }
    }
  } else if (kind == "bell") {
    reject_unknown(j, path, {"kind", "state"});
    s.kind = InitialStateKind::Bell;
    const std::string which = text(require(j, path, "state"), path + ".state");
    try {
      s.bell = parse_bell_kind(which);
    } catch (const DomainError& e) {
      fail(path + ".state", e.what());
    }
  } else if (kind == "thermal_coherent_product") {
    reject_unknown(j, path,
                   {"kind", "beta_s", "beta_s_ratio", "r1", "r2", "theta1",
                    "theta2"});
    s.kind = InitialStateKind::ThermalCoherentProduct;
    if (j.contains("beta_s") == j.contains("beta_s_ratio")) {
      fail(path, "give exactly one of beta_s or beta_s_ratio");
    }
    if (j.contains("beta_s")) s.beta_s = number(j.at("beta_s"), path + ".beta_s");
    if (j.contains("beta_s_ratio")) {
      s.beta_s_ratio = number(j.at("beta_s_ratio"), path + ".beta_s_ratio");
    }
    if (j.contains("r1")) s.r1 = number(j.at("r1"), path + ".r1");
    if (j.contains("r2")) s.r2 = number(j.at("r2"), path + ".r2");
    if (j.contains("theta1")) s.theta1 = number(j.at("theta1"), path + ".theta1");
    if (j.contains("theta2")) s.theta2 = number(j.at("theta2"), path + ".theta2");
  } else {
    fail(path + ".kind",
         "unknown kind '" + kind +
             "' (expected mms_with_coherence, bell or thermal_coherent_product)");
  }
  return s;
}

json initial_state_to_json(const InitialStateSpec& s) {
  json j;
  j["kind"] = kind_name(s.kind);
  switch (s.kind) {
    case InitialStateKind::MmsWithCoherence: {
      json terms = json::array();
      for (const auto& t : s.chi) {
        terms.push_back({{"pauli", t.pauli}, {"coeff", t.coeff}});
      }
      j["chi"] = terms;
      break;
    }
    case InitialStateKind::Bell:
      j["state"] = to_string(s.bell);
      break;
    case InitialStateKind::ThermalCoherentProduct:
      if (s.beta_s) j["beta_s"] = *s.beta_s;
      if (s.beta_s_ratio) j["beta_s_ratio"] = *s.beta_s_ratio;
      j["r1"] = s.r1;
      j["r2"] = s.r2;
      j["theta1"] = s.theta1;
      j["theta2"] = s.theta2;
      break;
  }
  return j;
}

double beta_s_of(const InitialStateSpec& spec, const BathParams& p) {
  return spec.beta_s ? *spec.beta_s
                     : spec.beta_s_ratio.value_or(1.0) * inverse_temperature(p);
}

}  // namespace

const std::vector<std::string_view>& known_outputs() {
  static const std::vector<std::string_view> names = {
      "mean_dE_tpm",   "mean_dE_epm",   "dE_coh",       "avg_sigma_tpm",
      "avg_sigma_epm", "classical_tpm", "classical_epm", "rate_tpm",
      "rate_epm",      "gap",           "F",             "ell"};
  return names;
}

std::vector<double> TimeGrid::values() const {
  std::vector<double> v(points);
  if (points == 1) {
    v[0] = start;
    return v;
  }
  for (int k = 0; k < points; ++k) {
    const double u = static_cast<double>(k) / (points - 1);
    v[k] = spacing == Spacing::Linear
               ? start + u * (stop - start)
               : start * std::pow(stop / start, u);
  }
  v.front() = start;
  v.back() = stop;
  return v;
}

Mat4 chi_from_terms(const std::vector<PauliTerm>& terms) {
  Mat4 chi = Mat4::Zero();
  for (const auto& t : terms) {
    if (!valid_pauli_label(t.pauli)) {
      throw DomainError("invalid Pauli label '" + t.pauli + "'");
    }
    chi += t.coeff *
           Mat4(kron(pauli_by_letter(t.pauli[0]), pauli_by_letter(t.pauli[1])));
  }
  return chi;
}

DensityMatrix build_initial_state(const InitialStateSpec& spec,
                                  const BathParams& p) {
  switch (spec.kind) {
    case InitialStateKind::MmsWithCoherence:
      return mms_with_coherence(chi_from_terms(spec.chi));
    case InitialStateKind::Bell:
      return bell_state(spec.bell);
    case InitialStateKind::ThermalCoherentProduct:
      return thermal_coherent_product(
          beta_s_of(spec, p),
          CoherenceBlock::polar(spec.r1, spec.theta1, spec.r2, spec.theta2), p);
  }
  throw DomainError("unknown initial state kind");
}

Scenario scenario_from_json(const json& j) {
  object(j, "<root>");
  reject_unknown(j, "",
                 {"schema_version", "name", "model", "initial_state", "basis",
                  "time_grid", "sweep", "protocols", "delta_beta", "outputs"});
  const json& version = require(j, "<root>", "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
    fail("schema_version", "expected " + std::to_string(kSchemaVersion));
  }
  Scenario s;
  if (j.contains("name")) s.name = text(j.at("name"), "name");

  const json& model = object(require(j, "<root>", "model"), "model");
  reject_unknown(model, "model", {"omega0", "A", "B", "alpha"});
  if (model.contains("omega0")) s.model.omega0 = number(model.at("omega0"), "model.omega0");
  s.model.A = number(require(model, "model", "A"), "model.A");
  s.model.B = number(require(model, "model", "B"), "model.B");
  s.model.alpha = number(require(model, "model", "alpha"), "model.alpha");

  s.initial_state = parse_initial_state(require(j, "<root>", "initial_state"));

  const std::string basis = text(require(j, "<root>", "basis"), "basis");
  if (basis == "computational") {
    s.basis = BasisKind::Computational;
  } else if (basis == "common") {
    s.basis = BasisKind::Common;
  } else {
    fail("basis", "expected \"computational\" or \"common\"");
  }

  const json& grid = object(require(j, "<root>", "time_grid"), "time_grid");
  reject_unknown(grid, "time_grid", {"start", "stop", "points", "spacing"});
  s.time_grid.start = number(require(grid, "time_grid", "start"), "time_grid.start");
  s.time_grid.stop = number(require(grid, "time_grid", "stop"), "time_grid.stop");
  const json& points = require(grid, "time_grid", "points");
  if (!points.is_number_integer()) fail("time_grid.points", "expected an integer");
  s.time_grid.points = points.get<int>();
  const std::string spacing =
      grid.contains("spacing") ? text(grid.at("spacing"), "time_grid.spacing")
                               : "linear";
  if (spacing == "linear") {
    s.time_grid.spacing = Spacing::Linear;
  } else if (spacing == "geometric") {
    s.time_grid.spacing = Spacing::Geometric;
  } else {
    fail("time_grid.spacing", "expected \"linear\" or \"geometric\"");
  }

  if (j.contains("sweep") && !j.at("sweep").is_null()) {
    const json& sw = object(j.at("sweep"), "sweep");
    reject_unknown(sw, "sweep", {"parameter", "values"});
    const std::string param = text(require(sw, "sweep", "parameter"), "sweep.parameter");
    Sweep sweep;
    if (param == "r") {
      sweep.parameter = SweepParameter::R;
    } else if (param == "alpha") {
      sweep.parameter = SweepParameter::Alpha;
    } else if (param == "t_f") {
      sweep.parameter = SweepParameter::FinalTime;
    } else {
      fail("sweep.parameter", "expected r, alpha or t_f");
    }
    const json& values = require(sw, "sweep", "values");
    if (!values.is_array() || values.empty()) {
      fail("sweep.values", "expected a non-empty array of numbers");
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
      sweep.values.push_back(
          number(values[k], "sweep.values[" + std::to_string(k) + "]"));
    }
    s.sweep = sweep;
  }

  const json& protocols = require(j, "<root>", "protocols");
  if (!protocols.is_array() || protocols.empty()) {
    fail("protocols", "expected a non-empty array drawn from TPM, EPM");
  }
  s.tpm = s.epm = false;
  for (std::size_t k = 0; k < protocols.size(); ++k) {
    const std::string p = text(protocols[k], "protocols[" + std::to_string(k) + "]");
    if (p == "TPM") {
      s.tpm = true;
    } else if (p == "EPM") {
      s.epm = true;
    } else {
      fail("protocols[" + std::to_string(k) + "]", "expected TPM or EPM");
    }
  }

  if (j.contains("delta_beta")) s.delta_beta = number(j.at("delta_beta"), "delta_beta");

  const json& outputs = require(j, "<root>", "outputs");
  if (!outputs.is_array() || outputs.empty()) {
    fail("outputs", "expected a non-empty array of column names");
  }
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    s.outputs.push_back(text(outputs[k], "outputs[" + std::to_string(k) + "]"));
  }
  validate(s);
  return s;
}

void validate(const Scenario& s) {
  try {
    s.model.validate_positive_temperature();
  } catch (const DomainError& e) {
    fail("model", e.what());
  }

  const TimeGrid& g = s.time_grid;
  const bool final_time_sweep =
      s.sweep && s.sweep->parameter == SweepParameter::FinalTime;
  if (!final_time_sweep) {
    if (g.points < 1) fail("time_grid.points", "must be at least 1");
    if (!(g.start >= 0.0)) fail("time_grid.start", "must be non-negative");
    if (g.points == 1 && g.stop != g.start) {
      fail("time_grid", "a single point requires start == stop");
    }
    if (g.points > 1 && !(g.stop > g.start)) {
      fail("time_grid", "stop must exceed start for a strictly increasing grid");
    }
    if (g.spacing == Spacing::Geometric && !(g.start > 0.0)) {
      fail("time_grid.start", "geometric spacing needs start > 0");
    }
  }

  if (s.sweep) {
    const auto& v = s.sweep->values;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const std::string field = "sweep.values[" + std::to_string(k) + "]";
      switch (s.sweep->parameter) {
        case SweepParameter::Alpha:
          if (!(v[k] >= 0.0 && v[k] <= 1.0)) fail(field, "alpha must lie in [0, 1]");
          break;
        case SweepParameter::R: {
          if (s.initial_state.kind != InitialStateKind::ThermalCoherentProduct) {
            fail("sweep.parameter",
                 "an r sweep needs a thermal_coherent_product initial state");
          }
          const double limit =
              1.0 / local_partition_function(beta_s_of(s.initial_state, s.model),
                                             s.model.omega0);
          if (!(std::abs(v[k]) < limit)) {
            fail(field, "r must satisfy |r| < 1/Z = " + format_number(limit));
          }
          break;
        }
        case SweepParameter::FinalTime:
          if (!(v[k] >= 0.0)) fail(field, "t_f must be non-negative");
          if (k > 0 && !(v[k] > v[k - 1])) {
            fail(field, "t_f values must be strictly increasing");
          }
          break;
      }
    }
  }

  std::set<std::string> seen;
  const auto& known = known_outputs();
  for (std::size_t k = 0; k < s.outputs.size(); ++k) {
    const std::string& o = s.outputs[k];
    const std::string field = "outputs[" + std::to_string(k) + "]";
    if (std::find(known.begin(), known.end(), o) == known.end()) {
      std::string msg = "unknown column '" + o + "' (known:";
      for (auto n : known) msg += " " + std::string(n);
      fail(field, msg + ")");
    }
    if (!seen.insert(o).second) fail(field, "duplicate column '" + o + "'");
    const bool needs_tpm = o.ends_with("_tpm") || o == "dE_coh";
    const bool needs_epm = o.ends_with("_epm") || o == "dE_coh";
    if (needs_tpm && !s.tpm) fail(field, "'" + o + "' needs the TPM protocol");
    if (needs_epm && !s.epm) fail(field, "'" + o + "' needs the EPM protocol");
    if (o.starts_with("classical_") && !s.delta_beta &&
        s.initial_state.kind != InitialStateKind::ThermalCoherentProduct) {
      fail(field, "'" + o + "' needs delta_beta (or a thermal_coherent_product state)");
    }
    if (o.starts_with("rate_")) {
      const std::size_t n = final_time_sweep ? s.sweep->values.size()
                                             : static_cast<std::size_t>(g.points);
      if (n < 3) fail(field, "'" + o + "' needs at least three time points");
    }
  }

  // Surface invalid states (positivity, coherence bounds) as config errors.
  try {
    if (!(s.sweep && s.sweep->parameter == SweepParameter::R)) {
      build_initial_state(s.initial_state, s.model);
    } else {
      InitialStateSpec probe = s.initial_state;
      for (double r : s.sweep->values) {
        probe.r1 = probe.r2 = r;
        build_initial_state(probe, s.model);
      }
    }
  } catch (const DomainError& e) {
    fail("initial_state", e.what());
  }
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = s.name;
  j["model"] = {{"omega0", s.model.omega0},
                {"A", s.model.A},
                {"B", s.model.B},
                {"alpha", s.model.alpha}};
  j["initial_state"] = initial_state_to_json(s.initial_state);
  j["basis"] = to_string(s.basis);
  j["time_grid"] = {
      {"start", s.time_grid.start},
      {"stop", s.time_grid.stop},
      {"points", s.time_grid.points},
      {"spacing", s.time_grid.spacing == Spacing::Linear ? "linear" : "geometric"}};
  if (s.sweep) {
    j["sweep"] = {{"parameter", sweep_name(s.sweep->parameter)},
                  {"values", s.sweep->values}};
  }
  json protocols = json::array();
  if (s.tpm) protocols.push_back("TPM");
  if (s.epm) protocols.push_back("EPM");
  j["protocols"] = protocols;
  if (s.delta_beta) j["delta_beta"] = *s.delta_beta;
  j["outputs"] = s.outputs;
  return j;
}

Scenario parse_scenario(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column.
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < offset; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  return scenario_from_json(j);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write config file " + path.string());
  out << scenario_to_json(s).dump(2) << '\n';
}

}  // namespace prethermal::experiments
