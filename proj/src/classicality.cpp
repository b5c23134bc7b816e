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

#include "dephaser/classicality.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "dephaser/errors.hpp"

namespace dephaser {

double kolmogorov_deficit(const JointDistribution& fine, const JointDistribution& coarse,
                          std::size_t position) {
  const std::size_t n = fine.order();
  if (position < 1 || position + 1 > n) {
    throw ValidationError("marginal position must satisfy 1 <= j <= n-1 (got j = " +
                          std::to_string(position) + ", n = " + std::to_string(n) + ")");
  }
  if (coarse.outcomes() != fine.outcomes() || !(coarse.grid() == fine.grid().without(position))) {
    throw ShapeError("coarse distribution grid does not match the fine grid without t_" +
                     std::to_string(position));
  }
  const JointDistribution marginal = fine.marginalize(position);
  double worst = 0.0;
  for (std::size_t k = 0; k < marginal.table().size(); ++k) {
    worst = std::max(worst, std::abs(coarse.table()[k] - marginal.table()[k]));
  }
  return worst;
}

double ClassicalityReport::max_deficit(std::size_t order) const {
  double worst = 0.0;
  for (const DeficitRecord& r : records) {
    if (r.order == order) worst = std::max(worst, r.deficit);
  }
  return worst;
}

namespace {

// All non-decreasing index selections of length n from {0..m-1}.
std::vector<std::vector<std::size_t>> multisets(std::size_t m, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    out.push_back(idx);
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == m - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t r = k; r < n; ++r) idx[r] = idx[k - 1];
  }
  return out;
}

}  // namespace

ClassicalityReport classicality_report(const DephasingTensorProvider& provider,
                                       const SystemPreparation& prep,
                                       const ProjectiveMeasurement& measurement, double t0,
                                       std::vector<double> pool, std::size_t max_order,
                                       double tolerance, std::size_t tuple_cap) {
  if (max_order < 2) throw ValidationError("classicality_report needs Nmax >= 2");
  if (pool.empty()) throw ValidationError("classicality_report needs a nonempty time pool");
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (pool.front() < t0) throw ValidationError("time pool entries must be >= t0");

  using Key = std::vector<std::size_t>;
  std::vector<Key> keys;
  for (std::size_t n = 1; n <= max_order; ++n) {
    auto level = multisets(pool.size(), n);
    keys.insert(keys.end(), level.begin(), level.end());
    if (keys.size() > tuple_cap) {
      throw SizeError(std::to_string(keys.size()) + "+ time tuples exceed the cap of " +
                      std::to_string(tuple_cap) + "; reduce the pool or Nmax");
    }
  }
  auto grid_of = [&](const Key& key) {
    std::vector<double> ts;
    for (std::size_t i : key) ts.push_back(pool[i]);
    return TimeGrid(t0, std::move(ts));
  };

  // Check the tensor-term cap up front so it surfaces as SizeError outside the
  // parallel region.
  chain_count(provider.dim(), max_order, kDefaultTermCap);

  std::vector<std::optional<JointDistribution>> dists(keys.size());
  const auto count = static_cast<std::int64_t>(keys.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto u = static_cast<std::size_t>(i);
    try {
      dists[u].emplace(joint_distribution(provider, prep, measurement, grid_of(keys[u]),
                                          ExecutionPolicy::kSerial));
    } catch (...) {
#pragma omp critical(dephaser_report_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::map<Key, std::size_t> where;
  for (std::size_t i = 0; i < keys.size(); ++i) where.emplace(keys[i], i);

  ClassicalityReport report;
  report.max_order_tested = max_order;
  report.tolerance = tolerance;
  report.t0 = t0;
  report.pool = pool;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const std::size_t n = keys[i].size();
    if (n < 2) continue;
    for (std::size_t j = 1; j < n; ++j) {
      Key coarse = keys[i];
      coarse.erase(coarse.begin() + static_cast<std::ptrdiff_t>(j - 1));
      const double deficit =
          kolmogorov_deficit(*dists[i], *dists[where.at(coarse)], j);
      report.records.push_back({n, j, dists[i]->grid().times(), deficit});
    }
  }

  report.verdict.assign(max_order, true);
  for (const DeficitRecord& r : report.records) {
    if (r.deficit > tolerance) {
      for (std::size_t big = r.order; big <= max_order; ++big) report.verdict[big - 1] = false;
    }
  }
  return report;
}

Witness search_witness(const DephasingTensorProvider& provider, const SystemPreparation& prep,
                       const ProjectiveMeasurement& measurement, double t0,
                       const WitnessSearch& options) {
  if (options.order < 2 || options.position < 1 || options.position >= options.order) {
    throw ValidationError("witness search needs order >= 2 and 1 <= position <= order-1");
  }
  if (options.points_per_interval < 1 || !(options.horizon > 0.0)) {
    throw ValidationError("witness search needs a positive horizon and at least one point");
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  const std::size_t points = options.points_per_interval;
  std::vector<std::vector<double>> lengths(options.order);
  for (auto& candidates : lengths) {
    for (std::size_t k = 0; k < points; ++k) {
      candidates.push_back(options.horizon * (static_cast<double>(k) + 1.0 + jitter(rng)) /
                           static_cast<double>(points));
    }
  }

  Witness best;
  std::vector<std::size_t> pick(options.order, 0);
  while (true) {
    std::vector<double> times;
    double t = t0;
    for (std::size_t k = 0; k < options.order; ++k) {
      t += lengths[k][pick[k]];
      times.push_back(t);
    }
    const TimeGrid grid(t0, times);
    const JointDistribution fine = joint_distribution(provider, prep, measurement, grid);
    const JointDistribution coarse =
        joint_distribution(provider, prep, measurement, grid.without(options.position));
    const double deficit = kolmogorov_deficit(fine, coarse, options.position);
    ++best.candidates;
    if (deficit > best.deficit) {
      best.deficit = deficit;
      best.times = times;
    }
    std::size_t k = options.order;
    while (k > 0 && pick[k - 1] + 1 == points) pick[--k] = 0;
    if (k == 0) break;
    ++pick[k - 1];
  }
  best.found = best.deficit >= options.threshold;
  return best;
}

double qubit_two_time_deficit_closed(const DephasingTensorProvider& provider, double p,
                                     double theta, int x2, double t2, double t1, double t0) {
  if (provider.dim() != 2) throw ValidationError("the closed-form deficit is defined for d = 2");
  if (x2 != 0 && x2 != 1) throw ValidationError("qubit outcome must be 0 or 1");
  const std::vector<double> times{t0, t1, t2};
  auto tensor = [&](int j2, int l2, int c) {
    return provider.tensor(IndexPairChain({{c, c}, {j2, l2}}, times));
  };
  const Complex bracket = p * tensor(0, 1, 0) + p * tensor(1, 0, 0) +
                          (p - 1.0) * tensor(0, 1, 1) + (p - 1.0) * tensor(1, 0, 1) -
                          2.0 * (2.0 * p - 1.0);
  const double sign = x2 == 0 ? 1.0 : -1.0;
  return sign * 0.125 * std::sin(2.0 * theta) * std::sin(4.0 * theta) * bracket.real();
}

double qubit_two_time_deficit_reduced(double p, double theta, double re_phi, int x2) {
  const double sign = x2 % 2 == 0 ? 1.0 : -1.0;
  return sign * 0.5 * (0.5 - p) * std::sin(2.0 * theta) * std::sin(4.0 * theta) * (1.0 - re_phi);
}

double markov_qubit_violation_closed(double epsilon, double gamma, int x3, int x1, double t3,
                                     double t2, double t1) {
  const double sign = (x3 - x1) % 2 == 0 ? 1.0 : -1.0;
  return -0.25 * sign * std::exp(-0.5 * gamma * (t3 - t1)) * std::sin(epsilon * (t3 - t2)) *
         std::sin(epsilon * (t2 - t1));
}

int delta_count(int d, int h) {
  if (d < 2 || h == 0 || std::abs(h) >= d) {
    throw ValidationError("delta_count needs 0 < |h| < d");
  }
  int count = 0;
  for (int j = 0; j < d; ++j) {
    for (int l = 0; l < d; ++l) {
      if (j == l) continue;
      for (int k = -1; k <= 1; ++k) {
        if (j - l == h + k * d) ++count;
      }
    }
  }
  return count;
}

ThetaSweep theta_sweep(const DephasingTensorProvider& provider, double p, double phi,
                       const std::vector<double>& thetas, double t2, double t1, double t0) {
  if (provider.dim() != 2) throw ValidationError("theta_sweep is defined for d = 2");
  const SystemPreparation prep = SystemPreparation::qubit_diagonal(p);
  const TimeGrid grid(t0, {t1, t2});
  ThetaSweep sweep;
  for (double theta : thetas) {
    const ProjectiveMeasurement m = qubit_basis(theta, phi);
    const JointDistribution two = joint_distribution(provider, prep, m, grid);
    const JointDistribution one = joint_distribution(provider, prep, m, grid.without(1));
    const double deficit = kolmogorov_deficit(two, one, 1);
    sweep.rows.push_back({theta, deficit});
    // |deficit| is mirror-symmetric about π/4; near-ties keep the earlier angle.
    if (deficit > sweep.max_deficit + 1e-13) {
      sweep.max_deficit = deficit;
      sweep.argmax_theta = theta;
    }
  }
  return sweep;
}

}  // namespace dephaser
