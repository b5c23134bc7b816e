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

#include "dephaser/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dephaser/errors.hpp"
#include "dephaser/io.hpp"

namespace dephaser {

namespace {

class Writer {
 public:
  Writer(std::filesystem::path dir, RunResult& result, bool quiet)
      : dir_(std::move(dir)), result_(result), quiet_(quiet) {}

  void log(const std::string& analysis, const std::string& message) const {
    if (quiet_) return;
    std::printf("[%s] %s\n", analysis.c_str(), message.c_str());
    std::fflush(stdout);
  }

  void text(const std::string& name, std::string_view content) {
    write_atomic(dir_ / name, content);
    result_.files.push_back(dir_ / name);
  }

  void json(const std::string& name, const nlohmann::json& doc) { text(name, doc.dump(2) + "\n"); }

 private:
  std::filesystem::path dir_;
  RunResult& result_;
  bool quiet_;
};

nlohmann::json header(const ExperimentConfig& config, std::uint64_t seed) {
  return {{"schema", kConfigSchema},
          {"analysis", to_string(config.analysis.kind)},
          {"model", config.model_label},
          {"d", config.d()},
          {"measurement", config.measurement_label},
          {"t0", config.grid.t0()},
          {"times", config.grid.times()},
          {"seed", seed}};
}

// Joint distributions on the leading prefixes of the grid, orders 1..n_max.
std::vector<JointDistribution> prefix_distributions(const DephasingTensorProvider& provider,
                                                    const ExperimentConfig& config,
                                                    ExecutionPolicy policy) {
  const std::size_t n_max = std::min(config.analysis.max_order, config.grid.size());
  std::vector<JointDistribution> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    out.push_back(joint_distribution(provider, config.preparation, config.measurement,
                                     config.grid.prefix(n), policy));
  }
  return out;
}

void emit_distributions(const std::vector<JointDistribution>& dists, const ExperimentConfig& config,
                        Writer& writer, nlohmann::json& report) {
  if (config.output.format == OutputFormat::kCsv) {
    for (const JointDistribution& dist : dists) {
      writer.text("distribution_" + std::to_string(dist.order()) + ".csv", distribution_csv(dist));
    }
    return;
  }
  nlohmann::json list = nlohmann::json::array();
  for (const JointDistribution& dist : dists) list.push_back(distribution_json(dist));
  report["distributions"] = list;
}

void run_classicality(const ExperimentConfig& config, const DephasingTensorProvider& provider,
                      std::uint64_t seed, ExecutionPolicy policy, Writer& writer, nlohmann::json& report) {
  const AnalysisConfig& a = config.analysis;
  const ClassicalityReport cr =
      classicality_report(provider, config.preparation, config.measurement, config.grid.t0(),
                          config.grid.times(), a.max_order, a.tolerance);
  report["classicality"] = report_json(cr);
  writer.log("classicality", "classical up to order " +
                               report["classicality"]["classical_up_to"].dump() + " of " +
                               std::to_string(cr.max_order_tested));
  if (a.witness) {
    WitnessSearch search = *a.witness;
    search.seed = seed;
    const Witness w = search_witness(provider, config.preparation, config.measurement,
                                     config.grid.t0(), search);
    nlohmann::json wj = witness_json(w);
    wj["order"] = search.order;
    wj["position"] = search.position;
    wj["horizon"] = search.horizon;
    wj["points_per_interval"] = search.points_per_interval;
    wj["threshold"] = search.threshold;
    report["witness"] = wj;
    writer.log("classicality", std::string("witness search ") + (w.found ? "found" : "inconclusive") +
                                 ", deficit " + format_double(w.deficit));
  }
  if (config.output.format == OutputFormat::kCsv) writer.text("deficits.csv", deficits_csv(cr));
  emit_distributions(prefix_distributions(provider, config, policy), config, writer, report);
}

void run_markovianity(const ExperimentConfig& config, const DephasingTensorProvider& provider,
                      std::uint64_t seed, const Writer& writer, nlohmann::json& report) {
  const std::vector<double> times = config.grid.with_origin();
  const int max_order = static_cast<int>(config.analysis.max_order);
  const MarkovianityReport mr = markovianity_deficit(provider, times, max_order, seed);
  nlohmann::json worst = nlohmann::json::array();
  for (const IndexPair& p : mr.worst.pairs()) worst.push_back({p.j, p.l});
  nlohmann::json semigroup = nlohmann::json::array();
  double max_semigroup = 0.0;
  for (std::size_t a = 0; a < times.size(); ++a) {
    for (std::size_t b = a + 1; b < times.size(); ++b) {
      for (std::size_t c = b + 1; c < times.size(); ++c) {
        const double dev = semigroup_deficit(provider, times[a], times[b], times[c]);
        max_semigroup = std::max(max_semigroup, dev);
        semigroup.push_back({{"times", {times[a], times[b], times[c]}}, {"deficit", dev}});
      }
    }
  }
  nlohmann::json out = {{"deficit", mr.deficit},
                        {"max_order", mr.max_order},
                        {"tuples_checked", mr.tuples_checked},
                        {"subsampled", mr.subsampled},
                        {"worst_chain", {{"pairs", worst}, {"times", mr.worst.times()}}},
                        {"markovian", mr.deficit <= config.analysis.tolerance},
                        {"semigroup", semigroup},
                        {"max_semigroup_deficit", max_semigroup},
                        {"trivial", triviality_check(provider, times, config.analysis.tolerance)},
                        {"markovian_by_construction", provider.markovian_by_construction()}};
  if (const DephasingModel* exact = config.exact_model()) {
    out["commuting"] = commutativity_check(*exact, config.analysis.tolerance);
  }
  report["markovianity"] = out;
  writer.log("markovianity", "deficit " + format_double(mr.deficit));
}

void run_ncgd(const ExperimentConfig& config, const DephasingTensorProvider& provider, Writer& writer,
              nlohmann::json& report) {
  const std::vector<double> times = config.grid.with_origin();
  std::string csv = "t_1,t_2,t_3,ncgd_deficit,strengthened_deficit\n";
  double max_ncgd = 0.0, max_strong = 0.0;
  for (std::size_t a = 0; a < times.size(); ++a) {
    for (std::size_t b = a + 1; b < times.size(); ++b) {
      for (std::size_t c = b + 1; c < times.size(); ++c) {
        const double ncgd = ncgd_deficit(provider, config.measurement, times[a], times[b], times[c]);
        const double strong = strengthened_ncgd_deficit(provider, config.measurement, times[b], times[a]);
        max_ncgd = std::max(max_ncgd, ncgd);
        max_strong = std::max(max_strong, strong);
        csv += format_double(times[a]) + "," + format_double(times[b]) + "," + format_double(times[c]) +
               "," + format_double(ncgd) + "," + format_double(strong) + "\n";
      }
    }
  }
  report["ncgd"] = {{"max_ncgd_deficit", max_ncgd},
                    {"max_strengthened_deficit", max_strong},
                    {"ncgd", max_ncgd <= config.analysis.tolerance}};
  writer.text("ncgd.csv", csv);
  writer.log("ncgd", "max deficit " + format_double(max_ncgd));
}

void run_theta_sweep(const ExperimentConfig& config, const DephasingTensorProvider& provider,
                     Writer& writer, nlohmann::json& report) {
  const AnalysisConfig& a = config.analysis;
  if (config.d() != 2) throw ValidationError("analysis.kind: theta-sweep needs d = 2");
  if (config.preparation.kind() != SystemPreparation::Kind::kDiagonal &&
      config.preparation.kind() != SystemPreparation::Kind::kMaximallyMixed) {
    throw ValidationError("preparation: theta-sweep needs a diagonal preparation");
  }
  if (config.grid.size() < 2) throw ValidationError("grid.times: theta-sweep needs two times t1, t2");
  if (a.theta_points < 2) throw ValidationError("analysis.theta_points: must be >= 2");
  const double p = config.preparation.density().matrix()(0, 0).real();
  std::vector<double> thetas(a.theta_points);
  for (std::size_t k = 0; k < a.theta_points; ++k) {
    thetas[k] = a.theta_min + (a.theta_max - a.theta_min) * static_cast<double>(k) /
                                  static_cast<double>(a.theta_points - 1);
  }
  const double t1 = config.grid.times()[0], t2 = config.grid.times()[1];
  const ThetaSweep sweep = theta_sweep(provider, p, config.measurement_phi, thetas, t2, t1, config.grid.t0());
  std::string csv = "theta,deficit\n";
  for (const auto& row : sweep.rows) csv += format_double(row.theta) + "," + format_double(row.deficit) + "\n";
  writer.text("theta_sweep.csv", csv);
  report["theta_sweep"] = {{"p", p},
                           {"phi", config.measurement_phi},
                           {"argmax_theta", sweep.argmax_theta},
                           {"max_deficit", sweep.max_deficit},
                           {"grid_step", thetas[1] - thetas[0]}};
  writer.log("theta-sweep", "argmax theta " + format_double(sweep.argmax_theta));
}

void run_oracle_check(const ExperimentConfig& config, const DephasingTensorProvider& provider,
                      ExecutionPolicy policy, Writer& writer, nlohmann::json& report) {
  const DephasingModel* exact = config.exact_model();
  if (exact == nullptr) throw ValidationError("model.kind: oracle-check needs an exact model");
  const std::vector<JointDistribution> dists = prefix_distributions(provider, config, policy);
  nlohmann::json per_order = nlohmann::json::array();
  double max_diff = 0.0;
  for (const JointDistribution& dist : dists) {
    const JointDistribution oracle =
        oracle_distribution(*exact, config.preparation, config.measurement, dist.grid());
    double diff = 0.0;
    for (std::size_t i = 0; i < dist.table().size(); ++i) {
      diff = std::max(diff, std::abs(dist.table()[i] - oracle.table()[i]));
    }
    max_diff = std::max(max_diff, diff);
    per_order.push_back({{"order", dist.order()}, {"max_abs_diff", diff}});
  }
  report["oracle_check"] = {{"max_abs_diff", max_diff}, {"orders", per_order}};
  emit_distributions(dists, config, writer, report);
  writer.log("oracle-check", "max |tensor - oracle| " + format_double(max_diff));
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  const std::filesystem::path dir = options.out_dir.value_or(config.output.path);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("output.path: cannot create " + dir.string());
  const std::uint64_t seed = options.seed.value_or(config.analysis.seed);

  RunResult result;
  Writer writer(dir, result, options.quiet);
  const auto provider = config.make_provider();
  nlohmann::json report = header(config, seed);
  switch (config.analysis.kind) {
    case AnalysisKind::kClassicality:
      run_classicality(config, *provider, seed, options.policy, writer, report);
      break;
    case AnalysisKind::kMarkovianity:
      run_markovianity(config, *provider, seed, writer, report);
      break;
    case AnalysisKind::kNcgd:
      run_ncgd(config, *provider, writer, report);
      break;
    case AnalysisKind::kThetaSweep:
      run_theta_sweep(config, *provider, writer, report);
      break;
    case AnalysisKind::kOracleCheck:
      run_oracle_check(config, *provider, options.policy, writer, report);
      break;
  }
  writer.json("report.json", report);
  result.report = std::move(report);
  return result;
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ValidationError*>(&error) || dynamic_cast<const ShapeError*>(&error)) {
    return kExitValidation;
  }
  if (dynamic_cast<const SizeError*>(&error)) return kExitNumericalCap;
  return kExitAnalysis;
}

nlohmann::json error_json(const std::exception& error) {
  std::string kind = "analysis";
  if (dynamic_cast<const ValidationError*>(&error) || dynamic_cast<const ShapeError*>(&error)) {
    kind = "validation";
  } else if (dynamic_cast<const SizeError*>(&error)) {
    kind = "numerical-cap";
  } else if (dynamic_cast<const NullEventError*>(&error)) {
    kind = "null-event";
  } else if (dynamic_cast<const NumericalError*>(&error)) {
    kind = "numerical";
  }
  return {{"error", {{"kind", kind}, {"exit_code", exit_code_for(error)}, {"message", error.what()}}}};
}

}  // namespace dephaser
