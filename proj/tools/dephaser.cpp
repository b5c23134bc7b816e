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

#include <omp.h>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dephaser/config.hpp"
#include "dephaser/errors.hpp"
#include "dephaser/run.hpp"

namespace {

int report_error(const std::exception& e) {
  std::cerr << dephaser::error_json(e).dump() << std::endl;
  return dephaser::exit_code_for(e);
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);

  CLI::App app{"Multitime statistics and classicality checks for pure-dephasing models", "dephaser"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "run the analysis described by a config file");
  run->add_option("config", config_path, "experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "output directory (overrides output.path)");
  run->add_option("--threads", threads, "OpenMP thread count")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "seed for randomized steps (overrides analysis.seed)");

  auto* list = app.add_subcommand("presets", "list the built-in model presets");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "parse and check a config without running it");
  validate->add_option("config", validate_path, "experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dephaser::kExitValidation;
  }

  try {
    if (*list) {
      for (const auto& p : dephaser::presets()) {
        std::printf("%-18s %-10s %s\n", p.name.c_str(), p.kind.c_str(), p.description.c_str());
      }
      return 0;
    }
    if (*validate) {
      const dephaser::ExperimentConfig config = dephaser::load_config(validate_path);
      std::printf("ok: %s analysis, model %s, d = %d, %zu time(s)\n",
                  std::string(dephaser::to_string(config.analysis.kind)).c_str(),
                  config.model_label.c_str(), config.d(), config.grid.size());
      return 0;
    }
    if (threads) omp_set_num_threads(*threads);
    const dephaser::ExperimentConfig config = dephaser::load_config(config_path);
    dephaser::RunOptions options;
    if (out_dir) options.out_dir = *out_dir;
    options.seed = seed;
    const dephaser::RunResult result = dephaser::run_experiment(config, options);
    for (const auto& file : result.files) std::printf("wrote %s\n", file.string().c_str());
    return 0;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}
