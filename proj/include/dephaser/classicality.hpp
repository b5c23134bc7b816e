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

// Kolmogorov consistency checks on multitime statistics, plus closed-form
// deficit expressions for qubit dephasing used as cross-checks.
//
// A process is N-classical on a time pool if marginalising the n-time
// distribution over any interior time t_j (1 <= j <= n-1) reproduces the
// (n-1)-time distribution, for every n <= N. Marginalising over the last time
// always succeeds and is not checked; n = 1 reduces to normalisation.

#include <cstdint>
#include <vector>

#include "dephaser/dephasing.hpp"
#include "dephaser/measurement.hpp"
#include "dephaser/statistics.hpp"

namespace dephaser {

/// Default verdict tolerance.
inline constexpr double kClassicalityTolerance = 1e-9;

/// max over retained outcomes of |P_{n-1} - Σ_{x_j} P_n|; `position` is 1-based.
double kolmogorov_deficit(const JointDistribution& fine, const JointDistribution& coarse,
                          std::size_t position);

struct DeficitRecord {
  std::size_t order = 0;
  std::size_t position = 0;
  std::vector<double> times;
  double deficit = 0.0;
};

struct ClassicalityReport {
  std::size_t max_order_tested = 0;
  double tolerance = kClassicalityTolerance;
  double t0 = 0.0;
  std::vector<double> pool;
  std::vector<DeficitRecord> records;
  /// verdict[N - 1] is the N-classicality flag, N = 1..max_order_tested.
  std::vector<bool> verdict;

  bool classical_up_to(std::size_t n) const { return n >= 1 && n <= verdict.size() && verdict[n - 1]; }
  double max_deficit(std::size_t order) const;
};

/// Checks every order 2..max_order on every non-decreasing selection of times
/// from `pool` (repetition allowed) and every interior marginal position.
ClassicalityReport classicality_report(const DephasingTensorProvider& provider,
                                       const SystemPreparation& prep,
                                       const ProjectiveMeasurement& measurement, double t0,
                                       std::vector<double> pool, std::size_t max_order,
                                       double tolerance = kClassicalityTolerance,
                                       std::size_t tuple_cap = 100'000);

struct WitnessSearch {
  std::size_t order = 3;
  std::size_t position = 2;
  /// Candidate interval lengths are horizon * (k + 1 + jitter) / points_per_interval.
  double horizon = 2.0;
  std::size_t points_per_interval = 5;
  std::uint64_t seed = 0;
  double threshold = 1e-3;
};

struct Witness {
  bool found = false;
  std::vector<double> times;  // t_1..t_n of the best candidate
  double deficit = 0.0;
  std::size_t candidates = 0;
};

/// Coarse grid search for a nonclassicality witness at (order, position).
/// Not finding one is inconclusive, not evidence of classicality.
Witness search_witness(const DephasingTensorProvider& provider, const SystemPreparation& prep,
                       const ProjectiveMeasurement& measurement, double t0,
                       const WitnessSearch& options);

/// Σ_{x1} P_2(x2,t2; x1,t1) - P_1(x2,t2) for a qubit with diagonal preparation
/// weight p on |e_0> and measurement qubit_basis(theta, ·), in terms of the
/// two-step tensor values of `provider`.
double qubit_two_time_deficit_closed(const DephasingTensorProvider& provider, double p,
                                     double theta, int x2, double t2, double t1, double t0);

/// The same deficit when the dephasing is Markovian or the blocks commute:
/// (-1)^{x2} (1/2)(1/2 - p) sin2θ sin4θ (1 - Re φ_{t2,t1}).
double qubit_two_time_deficit_reduced(double p, double theta, double re_phi, int x2);

/// P_2(x3,t3; x1,t1) - Σ_{x2} P_3(x3,t3; x2,t2; x1,t1) for the Markovian qubit
/// with φ_{t,s} = exp(-(γ/2 + iε)(t - s)), diagonal preparation and a Fourier
/// MUB: -(1/4)(-1)^{x3-x1} e^{-γ(t3-t1)/2} sin[ε(t3-t2)] sin[ε(t2-t1)].
double markov_qubit_violation_closed(double epsilon, double gamma, int x3, int x1, double t3,
                                     double t2, double t1);

/// Σ_{j != l} Σ_{k=0,±1} δ_{j-l, h+kd} by enumeration; equals d for 0 < |h| < d.
int delta_count(int d, int h);

struct ThetaSweep {
  struct Row {
    double theta;
    double deficit;
  };
  std::vector<Row> rows;
  double argmax_theta = 0.0;
  double max_deficit = 0.0;
};

/// Two-time Kolmogorov deficit of a diagonal qubit preparation measured in
/// qubit_basis(theta, phi), for every theta in `thetas`.
ThetaSweep theta_sweep(const DephasingTensorProvider& provider, double p, double phi,
                       const std::vector<double>& thetas, double t2, double t1, double t0);

}  // namespace dephaser
