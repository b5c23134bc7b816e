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

// Executes a parsed experiment and writes its artifacts.
#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dephaser/config.hpp"
#include "json.hpp"

namespace dephaser {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNumericalCap = 3,
  kExitAnalysis = 4,
};

struct RunOptions {
  /// Overrides the config's output path when set.
  std::optional<std::filesystem::path> out_dir;
  /// Overrides the config's analysis seed when set.
  std::optional<std::uint64_t> seed;
  ExecutionPolicy policy = ExecutionPolicy::kParallel;
  /// Suppresses the per-analysis progress lines on stdout.
  bool quiet = false;
};

struct RunResult {
  nlohmann::json report;
  std::vector<std::filesystem::path> files;
};

/// Throws dephaser::Error subclasses; see exit_code_for.
RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

int exit_code_for(const std::exception& error);
/// {"error": {"kind": ..., "exit_code": ..., "message": ...}}
nlohmann::json error_json(const std::exception& error);

}  // namespace dephaser
