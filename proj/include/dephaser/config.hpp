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

#pragma once

// Experiment configuration: a versioned JSON document describing the model,
// preparation, measurement, time grid, analysis and output.
//
// Complex scalars are [re, im] pairs (a bare number means a real value) and
// matrices are arrays of rows.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dephaser/classicality.hpp"
#include "dephaser/dephasing.hpp"
#include "dephaser/measurement.hpp"
#include "dephaser/statistics.hpp"

namespace dephaser {

inline constexpr std::string_view kConfigSchema = "dephaser/v1";

enum class AnalysisKind { kClassicality, kMarkovianity, kNcgd, kThetaSweep, kOracleCheck };
enum class OutputFormat { kCsv, kJson };

std::string_view to_string(AnalysisKind kind);

struct AnalysisConfig {
  AnalysisKind kind = AnalysisKind::kClassicality;
  std::size_t max_order = 3;
  double tolerance = kClassicalityTolerance;
  std::uint64_t seed = 0;
  /// Classicality only: optional coarse witness search.
  std::optional<WitnessSearch> witness;
  /// Theta sweep only.
  std::size_t theta_points = 91;
  double theta_min = 0.0;
  double theta_max = 1.5707963267948966;
};

struct OutputConfig {
  std::filesystem::path path = ".";
  OutputFormat format = OutputFormat::kCsv;
};

struct ExperimentConfig {
  std::variant<DephasingModel, MarkovianAnalyticModel> model;
  std::string model_label;
  SystemPreparation preparation;
  ProjectiveMeasurement measurement;
  std::string measurement_label;
  /// Azimuthal angle of a qubit_basis measurement; used by the theta sweep.
  double measurement_phi = 0.0;
  TimeGrid grid;
  AnalysisConfig analysis;
  OutputConfig output;

  int d() const;
  std::unique_ptr<DephasingTensorProvider> make_provider() const;
  /// Null unless the model is an exact finite-environment model.
  const DephasingModel* exact_model() const;
};

/// Throws ValidationError naming the offending field and invariant.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

struct PresetInfo {
  std::string name;
  std::string kind;
  std::string description;
};

std::vector<PresetInfo> presets();
/// "qubit-zx", "scalar-phases" or "commuting-diag".
DephasingModel exact_preset(std::string_view name);
/// "markov-real-qudit": ε = 0 and γ_{jl} = gamma off the diagonal.
MarkovianAnalyticModel markovian_preset(std::string_view name, int d = 3, double gamma = 1.0);

}  // namespace dephaser
