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

// Multitime joint distributions of repeated projective measurements on a
// pure-dephasing system.
//
// Outcome tuples (x_1, ..., x_n) are flattened with x_1 slowest. Time
// positions are 1-based: position j refers to t_j, the j-th measurement.

#include <cstdint>
#include <span>
#include <vector>

#include "dephaser/core.hpp"
#include "dephaser/dephasing.hpp"
#include "dephaser/measurement.hpp"

namespace dephaser {

class TimeGrid {
 public:
  TimeGrid(double t0, std::vector<double> times);

  double t0() const { return t0_; }
  const std::vector<double>& times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  /// {t0, t_1, ..., t_n}.
  std::vector<double> with_origin() const;
  /// The grid with measurement time t_position removed.
  TimeGrid without(std::size_t position) const;
  /// The first n measurement times.
  TimeGrid prefix(std::size_t n) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t0_;
  std::vector<double> times_;
};

class SystemPreparation {
 public:
  enum class Kind { kDiagonal, kMaximallyMixed, kPure, kExplicit };

  static SystemPreparation diagonal(const RealVector& weights);
  /// Qubit state p|e_0><e_0| + (1-p)|e_1><e_1|.
  static SystemPreparation qubit_diagonal(double p);
  static SystemPreparation maximally_mixed(int d);
  static SystemPreparation pure(const ComplexVector& psi);
  static SystemPreparation explicit_state(DensityOperator rho);

  Kind kind() const { return kind_; }
  int dim() const { return static_cast<int>(density_.dim()); }
  const DensityOperator& density() const { return density_; }

 private:
  SystemPreparation(Kind kind, DensityOperator density);

  Kind kind_;
  DensityOperator density_;
};

class JointDistribution {
 public:
  JointDistribution(int outcomes, TimeGrid grid, std::vector<double> table);

  int outcomes() const { return outcomes_; }
  std::size_t order() const { return grid_.size(); }
  const TimeGrid& grid() const { return grid_; }
  /// Unclipped probabilities; entries may dip to -1e-10 from roundoff.
  const std::vector<double>& table() const { return table_; }
  /// Probabilities clipped at zero, for presentation.
  std::vector<double> clipped() const;

  double at(std::span<const int> outcomes) const;
  std::size_t flat_index(std::span<const int> outcomes) const;
  std::vector<int> tuple(std::size_t flat) const;

  /// Sums out x_position (1-based) and drops t_position from the grid.
  JointDistribution marginalize(std::size_t position) const;

  static constexpr double kNegativeFloor = -1e-10;
  static constexpr double kNormalization = 1e-10;

 private:
  int outcomes_;
  TimeGrid grid_;
  std::vector<double> table_;
};

/// Default cap on d^(2n), the number of dephasing-tensor terms per outcome.
inline constexpr std::size_t kDefaultTermCap = 10'000'000;

/// Tensor-path distribution: Σ over index chains of the system factor
/// tr[P_{x_n} E^{j_n,l_n} ... P_{x_1} E^{j_1,l_1}(ρ)] times the dephasing tensor.
/// The serial and parallel policies are bitwise identical.
JointDistribution joint_distribution(const DephasingTensorProvider& provider,
                                     const SystemPreparation& prep,
                                     const ProjectiveMeasurement& measurement,
                                     const TimeGrid& grid,
                                     ExecutionPolicy policy = ExecutionPolicy::kParallel,
                                     std::size_t term_cap = kDefaultTermCap);

/// Brute-force distribution from the global unitary on the d*D space.
JointDistribution oracle_distribution(const DephasingModel& model, const SystemPreparation& prep,
                                      const ProjectiveMeasurement& measurement,
                                      const TimeGrid& grid);

/// Λ_{t,s} = Σ_{jl} φ_{jl}(t,s) E^{j,l}.
Superoperator reduced_map(const DephasingTensorProvider& provider, double t, double s);

/// ‖Δ Λ_{t3,t2} Δ Λ_{t2,t1} Δ - Δ Λ_{t3,t1} Δ‖_max.
double ncgd_deficit(const DephasingTensorProvider& provider,
                    const ProjectiveMeasurement& measurement, double t1, double t2, double t3);

/// ‖Δ Λ_{t,s} Δ - Λ_{t,s} Δ‖_max.
double strengthened_ncgd_deficit(const DephasingTensorProvider& provider,
                                 const ProjectiveMeasurement& measurement, double t, double s);

/// P(x_n | x_{n-1}, ..., x_1) for every x_n, given the n-1 earlier outcomes.
std::vector<double> conditional_probability(const JointDistribution& dist,
                                            std::span<const int> prefix,
                                            double null_floor = 1e-14);

}  // namespace dephaser
