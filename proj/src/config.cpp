// Copyright 2026 The dephaser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dephaser/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dephaser/errors.hpp"

namespace dephaser {

using nlohmann::json;

std::string_view to_string(AnalysisKind kind) {
  switch (kind) {
    case AnalysisKind::kClassicality: return "classicality";
    case AnalysisKind::kMarkovianity: return "markovianity";
    case AnalysisKind::kNcgd: return "ncgd";
    case AnalysisKind::kThetaSweep: return "theta-sweep";
    case AnalysisKind::kOracleCheck: return "oracle-check";
  }
  return "unknown";
}

int ExperimentConfig::d() const {
  return std::visit([](const auto& m) { return m.d(); }, model);
}

std::unique_ptr<DephasingTensorProvider> ExperimentConfig::make_provider() const {
  if (const auto* exact = std::get_if<DephasingModel>(&model)) {
    return std::make_unique<ExactTensorProvider>(*exact);
  }
  return std::make_unique<MarkovianTensorProvider>(std::get<MarkovianAnalyticModel>(model));
}

const DephasingModel* ExperimentConfig::exact_model() const {
  return std::get_if<DephasingModel>(&model);
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

// Runs `body`, re-raising library errors with the config section prefixed.
std::string prefixed(const std::string& where, const char* what) {
  const std::string message(what);
  return message.rfind(where, 0) == 0 ? message : where + ": " + message;
}

template <typename F>
auto in_section(const std::string& where, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const SizeError& e) {
    throw SizeError(prefixed(where, e.what()));
  } catch (const Error& e) {
    throw ValidationError(prefixed(where, e.what()));
  } catch (const json::exception& e) {
    throw ValidationError(prefixed(where, e.what()));
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return obj.at(key);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "expected a finite number");
  return x;
}

Complex complex_scalar(const json& v, const std::string& where) {
  if (v.is_number()) return {number(v, where), 0.0};
  if (v.is_array() && v.size() == 2) return {number(v[0], where), number(v[1], where)};
  fail(where, "expected a number or an [re, im] pair");
}

ComplexVector complex_vector(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where, "expected a nonempty array");
  ComplexVector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Index>(i)) = complex_scalar(v[i], where + "[" + std::to_string(i) + "]");
  }
  return out;
}

ComplexMatrix complex_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where, "expected a nonempty array of rows");
  const std::size_t rows = v.size();
  if (!v[0].is_array()) fail(where, "expected an array of rows");
  const std::size_t cols = v[0].size();
  ComplexMatrix out(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) fail(where, "rows have inconsistent lengths");
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Index>(i), static_cast<Index>(j)) = complex_scalar(
          v[i][j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }
  return out;
}

RealMatrix real_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where, "expected a nonempty array of rows");
  const std::size_t rows = v.size();
  RealMatrix out(static_cast<Index>(rows), static_cast<Index>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != rows) fail(where, "expected a square matrix");
    for (std::size_t j = 0; j < rows; ++j) {
      out(static_cast<Index>(i), static_cast<Index>(j)) = number(v[i][j], where);
    }
  }
  return out;
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string kind_of(const json& section, const std::string& where) {
  const json& k = require(section, "kind", where);
  if (!k.is_string()) fail(where + ".kind", "expected a string");
  return k.get<std::string>();
}

std::size_t count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) fail(where, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

void check_declared_dim(const json& section, const char* key, Index actual, const std::string& where) {
  if (section.contains(key) && count(section.at(key), where + "." + key) != static_cast<std::size_t>(actual)) {
    fail(where + "." + key, std::string("declared ") + key + " = " +
                                std::to_string(section.at(key).get<std::size_t>()) +
                                " does not match the model (" + std::to_string(actual) + ")");
  }
}

std::variant<DephasingModel, MarkovianAnalyticModel> parse_model(const json& section,
                                                                 std::string& label) {
  const std::string where = "model";
  return in_section(where, [&]() -> std::variant<DephasingModel, MarkovianAnalyticModel> {
    const std::string kind = kind_of(section, where);
    if (kind == "exact") {
      if (section.contains("preset")) {
        label = section.at("preset").get<std::string>();
        DephasingModel m = exact_preset(label);
        check_declared_dim(section, "d", m.d(), where);
        check_declared_dim(section, "D", m.env_dim(), where);
        return m;
      }
      const json& blocks_json = require(section, "blocks", where);
      if (!blocks_json.is_array() || blocks_json.empty()) fail(where + ".blocks", "expected a nonempty array");
      std::vector<HermitianOperator> blocks;
      for (std::size_t j = 0; j < blocks_json.size(); ++j) {
        const std::string at = where + ".blocks[" + std::to_string(j) + "]";
        blocks.push_back(in_section(at, [&] { return HermitianOperator(complex_matrix(blocks_json[j], at)); }));
      }
      const Index env = blocks.front().dim();
      const json& env_json = require(section, "env_state", where);
      DensityOperator rho = in_section(where + ".env_state", [&] {
        if (env_json.is_string()) {
          const std::string name = env_json.get<std::string>();
          if (name == "maximally-mixed") return DensityOperator::maximally_mixed(env);
          if (name == "ground") return DensityOperator::pure(ComplexVector::Unit(env, 0));
          fail(where + ".env_state", "unknown named state '" + name + "'");
        }
        return DensityOperator(complex_matrix(env_json, where + ".env_state"));
      });
      label = "custom-exact";
      DephasingModel m(std::move(blocks), std::move(rho));
      check_declared_dim(section, "d", m.d(), where);
      check_declared_dim(section, "D", m.env_dim(), where);
      return m;
    }
    if (kind == "markovian") {
      if (section.contains("preset")) {
        label = section.at("preset").get<std::string>();
        const int d = section.contains("d") ? static_cast<int>(count(section.at("d"), where + ".d")) : 3;
        const double gamma = section.contains("gamma") ? number(section.at("gamma"), where + ".gamma") : 1.0;
        return markovian_preset(label, d, gamma);
      }
      const json& eps_json = require(section, "eps", where);
      const json& gamma_json = require(section, "gamma", where);
      label = "custom-markovian";
      if (eps_json.is_number() || gamma_json.is_number()) {
        const int d = section.contains("d") ? static_cast<int>(count(section.at("d"), where + ".d")) : 2;
        RealMatrix eps = RealMatrix::Zero(d, d);
        RealMatrix gamma = RealMatrix::Zero(d, d);
        if (eps_json.is_number()) {
          const double e = number(eps_json, where + ".eps");
          if (d != 2 && e != 0.0) fail(where + ".eps", "a scalar eps is only defined for d = 2");
          if (d == 2) eps << 0.0, e, -e, 0.0;
        } else {
          eps = real_matrix(eps_json, where + ".eps");
        }
        if (gamma_json.is_number()) {
          gamma.setConstant(number(gamma_json, where + ".gamma"));
          gamma.diagonal().setZero();
        } else {
          gamma = real_matrix(gamma_json, where + ".gamma");
        }
        return MarkovianAnalyticModel(std::move(eps), std::move(gamma));
      }
      return MarkovianAnalyticModel(real_matrix(eps_json, where + ".eps"),
                                    real_matrix(gamma_json, where + ".gamma"));
    }
    fail(where + ".kind", "unknown model kind '" + kind + "' (expected exact or markovian)");
  });
}

SystemPreparation parse_preparation(const json& section, int d) {
  const std::string where = "preparation";
  return in_section(where, [&] {
    const std::string kind = kind_of(section, where);
    auto dims = [&](Index got) {
      if (got != d) {
        fail(where, "dimension clash: preparation has dimension " + std::to_string(got) +
                        " but the model has d = " + std::to_string(d));
      }
    };
    if (kind == "diagonal") {
      const std::vector<double> w = number_list(require(section, "weights", where), where + ".weights");
      dims(static_cast<Index>(w.size()));
      return SystemPreparation::diagonal(Eigen::Map<const RealVector>(w.data(), static_cast<Index>(w.size())));
    }
    if (kind == "maximally-mixed") return SystemPreparation::maximally_mixed(d);
    if (kind == "pure") {
      const ComplexVector psi = complex_vector(require(section, "vector", where), where + ".vector");
      dims(psi.size());
      return SystemPreparation::pure(psi);
    }
    if (kind == "explicit") {
      ComplexMatrix rho = complex_matrix(require(section, "matrix", where), where + ".matrix");
      dims(rho.rows());
      return SystemPreparation::explicit_state(DensityOperator(std::move(rho)));
    }
    fail(where + ".kind", "unknown preparation kind '" + kind + "'");
  });
}

ProjectiveMeasurement parse_measurement(const json& section, int d, std::string& label, double& phi_out) {
  const std::string where = "measurement";
  return in_section(where, [&] {
    const std::string kind = kind_of(section, where);
    label = kind;
    auto dims = [&](std::size_t got, const std::string& what) {
      if (got != static_cast<std::size_t>(d)) {
        fail(where, "dimension clash: " + what + " has " + std::to_string(got) +
                        " entries but the model has d = " + std::to_string(d));
      }
    };
    if (kind == "dephasing") return dephasing_basis(d);
    if (kind == "mub") {
      std::vector<double> phases(static_cast<std::size_t>(d), 0.0);
      if (section.contains("phases")) phases = number_list(section.at("phases"), where + ".phases");
      dims(phases.size(), "the phase vector");
      return fourier_mub(d, PhaseVector(phases));
    }
    if (kind == "qubit") {
      if (d != 2) fail(where, "dimension clash: a qubit measurement needs d = 2, the model has d = " + std::to_string(d));
      const double theta = number(require(section, "theta", where), where + ".theta");
      phi_out = section.contains("phi") ? number(section.at("phi"), where + ".phi") : 0.0;
      return qubit_basis(theta, phi_out);
    }
    if (kind == "vectors") {
      const json& list = require(section, "vectors", where);
      if (!list.is_array()) fail(where + ".vectors", "expected an array of vectors");
      dims(list.size(), "the vector list");
      std::vector<ComplexVector> vectors;
      for (std::size_t x = 0; x < list.size(); ++x) {
        vectors.push_back(complex_vector(list[x], where + ".vectors[" + std::to_string(x) + "]"));
        dims(static_cast<std::size_t>(vectors.back().size()), "vector " + std::to_string(x));
      }
      return ProjectiveMeasurement::from_vectors(std::move(vectors));
    }
    if (kind == "projectors") {
      const json& list = require(section, "projectors", where);
      if (!list.is_array()) fail(where + ".projectors", "expected an array of matrices");
      std::vector<ComplexMatrix> projectors;
      for (std::size_t x = 0; x < list.size(); ++x) {
        projectors.push_back(complex_matrix(list[x], where + ".projectors[" + std::to_string(x) + "]"));
        dims(static_cast<std::size_t>(projectors.back().rows()), "projector " + std::to_string(x));
      }
      return ProjectiveMeasurement::from_projectors(std::move(projectors));
    }
    fail(where + ".kind", "unknown measurement kind '" + kind + "'");
  });
}

TimeGrid parse_grid(const json& section) {
  const std::string where = "grid";
  return in_section(where, [&] {
    const double t0 = section.contains("t0") ? number(section.at("t0"), where + ".t0") : 0.0;
    std::vector<double> times = number_list(require(section, "times", where), where + ".times");
    if (times.empty()) fail(where + ".times", "at least one measurement time is required");
    return TimeGrid(t0, std::move(times));
  });
}

AnalysisConfig parse_analysis(const json& section) {
  const std::string where = "analysis";
  return in_section(where, [&] {
    AnalysisConfig a;
    const std::string kind = kind_of(section, where);
    if (kind == "classicality") a.kind = AnalysisKind::kClassicality;
    else if (kind == "markovianity") a.kind = AnalysisKind::kMarkovianity;
    else if (kind == "ncgd") a.kind = AnalysisKind::kNcgd;
    else if (kind == "theta-sweep") a.kind = AnalysisKind::kThetaSweep;
    else if (kind == "oracle-check") a.kind = AnalysisKind::kOracleCheck;
    else fail(where + ".kind", "unknown analysis kind '" + kind + "'");
    if (section.contains("Nmax")) a.max_order = count(section.at("Nmax"), where + ".Nmax");
    if (section.contains("tolerance")) a.tolerance = number(section.at("tolerance"), where + ".tolerance");
    if (section.contains("seed")) a.seed = section.at("seed").get<std::uint64_t>();
    if (section.contains("theta_points")) a.theta_points = count(section.at("theta_points"), where + ".theta_points");
    if (section.contains("theta_min")) a.theta_min = number(section.at("theta_min"), where + ".theta_min");
    if (section.contains("theta_max")) a.theta_max = number(section.at("theta_max"), where + ".theta_max");
    if (section.contains("witness")) {
      const json& w = section.at("witness");
      WitnessSearch s;
      const std::string at = where + ".witness";
      if (w.contains("order")) s.order = count(w.at("order"), at + ".order");
      if (w.contains("position")) s.position = count(w.at("position"), at + ".position");
      if (w.contains("horizon")) s.horizon = number(w.at("horizon"), at + ".horizon");
      if (w.contains("points")) s.points_per_interval = count(w.at("points"), at + ".points");
      if (w.contains("threshold")) s.threshold = number(w.at("threshold"), at + ".threshold");
      a.witness = s;
    }
    if (a.max_order < 1) fail(where + ".Nmax", "must be >= 1");
    if (!(a.tolerance >= 0.0)) fail(where + ".tolerance", "must be nonnegative");
    return a;
  });
}

OutputConfig parse_output(const json& section) {
  const std::string where = "output";
  return in_section(where, [&] {
    OutputConfig o;
    if (section.contains("path")) o.path = section.at("path").get<std::string>();
    if (section.contains("format")) {
      const std::string f = section.at("format").get<std::string>();
      if (f == "csv") o.format = OutputFormat::kCsv;
      else if (f == "json") o.format = OutputFormat::kJson;
      else fail(where + ".format", "expected csv or json, got '" + f + "'");
    }
    return o;
  });
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ValidationError("config: expected a JSON object");
  const json& schema = require(doc, "schema", "config");
  if (!schema.is_string() || schema.get<std::string>() != kConfigSchema) {
    fail("config.schema", "unsupported schema (expected \"" + std::string(kConfigSchema) + "\")");
  }
  std::string model_label;
  auto model = parse_model(require(doc, "model", "config"), model_label);
  const int d = std::visit([](const auto& m) { return m.d(); }, model);
  SystemPreparation prep = parse_preparation(require(doc, "preparation", "config"), d);
  std::string measurement_label;
  double phi = 0.0;
  ProjectiveMeasurement measurement =
      parse_measurement(require(doc, "measurement", "config"), d, measurement_label, phi);
  TimeGrid grid = parse_grid(require(doc, "grid", "config"));
  AnalysisConfig analysis = parse_analysis(require(doc, "analysis", "config"));
  OutputConfig output = doc.contains("output") ? parse_output(doc.at("output")) : OutputConfig{};
  return ExperimentConfig{std::move(model), std::move(model_label), std::move(prep),
                          std::move(measurement), std::move(measurement_label), phi,
                          std::move(grid), std::move(analysis), std::move(output)};
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot read " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("config: invalid JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

std::vector<PresetInfo> presets() {
  return {
      {"qubit-zx", "exact", "d=2, D=2, H_0 = sigma_z, H_1 = sigma_x, env state |0><0| (non-Markovian, non-commuting)"},
      {"scalar-phases", "exact", "d=2, D=1, H_0 = 0, H_1 = 1 (pure phases, factorizes exactly)"},
      {"commuting-diag", "exact", "d=2, D=2, H_0 = diag(1,-1), H_1 = diag(0.5,2), env state diag(0.6,0.4) (commuting, nontrivial dephasing)"},
      {"markov-real-qudit", "markovian", "eps = 0, gamma_jl = gamma for j != l; parameters d (default 3) and gamma (default 1)"},
  };
}

DephasingModel exact_preset(std::string_view name) {
  if (name == "qubit-zx") {
    return DephasingModel({HermitianOperator(pauli::z()), HermitianOperator(pauli::x())},
                          DensityOperator::pure(ComplexVector::Unit(2, 0)));
  }
  if (name == "scalar-phases") {
    return DephasingModel({HermitianOperator(ComplexMatrix::Constant(1, 1, 0.0)),
                           HermitianOperator(ComplexMatrix::Constant(1, 1, 1.0))},
                          DensityOperator(ComplexMatrix::Identity(1, 1)));
  }
  if (name == "commuting-diag") {
    RealVector h0(2), h1(2), env(2);
    h0 << 1.0, -1.0;
    h1 << 0.5, 2.0;
    env << 0.6, 0.4;
    return DephasingModel({HermitianOperator(h0.cast<Complex>().asDiagonal().toDenseMatrix()),
                           HermitianOperator(h1.cast<Complex>().asDiagonal().toDenseMatrix())},
                          DensityOperator::diagonal(env));
  }
  throw ValidationError("unknown exact preset '" + std::string(name) + "'");
}

MarkovianAnalyticModel markovian_preset(std::string_view name, int d, double gamma) {
  if (name == "markov-real-qudit") {
    if (d < 2) throw ValidationError("markov-real-qudit needs d >= 2");
    return MarkovianAnalyticModel::uniform_real(d, gamma);
  }
  throw ValidationError("unknown Markovian preset '" + std::string(name) + "'");
}

}  // namespace dephaser
