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

#include "dephaser/statistics.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "dephaser/errors.hpp"

namespace dephaser {

TimeGrid::TimeGrid(double t0, std::vector<double> times) : t0_(t0), times_(std::move(times)) {
  if (!std::isfinite(t0_)) throw ValidationError("t0 must be finite");
  double prev = t0_;
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (!std::isfinite(times_[k])) throw ValidationError("measurement times must be finite");
    if (times_[k] < prev) {
      throw ValidationError("measurement times must be non-decreasing and >= t0 (t_" +
                            std::to_string(k + 1) + " = " + std::to_string(times_[k]) + ")");
    }
    prev = times_[k];
  }
}

std::vector<double> TimeGrid::with_origin() const {
  std::vector<double> out{t0_};
  out.insert(out.end(), times_.begin(), times_.end());
  return out;
}

TimeGrid TimeGrid::without(std::size_t position) const {
  if (position < 1 || position > times_.size()) {
    throw ValidationError("time position " + std::to_string(position) + " out of range");
  }
  std::vector<double> out = times_;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(position - 1));
  return TimeGrid(t0_, std::move(out));
}

TimeGrid TimeGrid::prefix(std::size_t n) const {
  if (n > times_.size()) throw ValidationError("grid prefix longer than the grid");
  return TimeGrid(t0_, std::vector<double>(times_.begin(), times_.begin() + static_cast<std::ptrdiff_t>(n)));
}

SystemPreparation::SystemPreparation(Kind kind, DensityOperator density)
    : kind_(kind), density_(std::move(density)) {}

SystemPreparation SystemPreparation::diagonal(const RealVector& weights) {
  return SystemPreparation(Kind::kDiagonal, DensityOperator::diagonal(weights));
}

SystemPreparation SystemPreparation::qubit_diagonal(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("population p must lie in [0, 1]");
  RealVector w(2);
  w << p, 1.0 - p;
  return diagonal(w);
}

SystemPreparation SystemPreparation::maximally_mixed(int d) {
  return SystemPreparation(Kind::kMaximallyMixed, DensityOperator::maximally_mixed(d));
}

SystemPreparation SystemPreparation::pure(const ComplexVector& psi) {
  return SystemPreparation(Kind::kPure, DensityOperator::pure(psi));
}

SystemPreparation SystemPreparation::explicit_state(DensityOperator rho) {
  return SystemPreparation(Kind::kExplicit, std::move(rho));
}

JointDistribution::JointDistribution(int outcomes, TimeGrid grid, std::vector<double> table)
    : outcomes_(outcomes), grid_(std::move(grid)), table_(std::move(table)) {
  if (outcomes_ < 1) throw ValidationError("a distribution needs at least one outcome");
  std::size_t expected = 1;
  for (std::size_t k = 0; k < grid_.size(); ++k) expected *= static_cast<std::size_t>(outcomes_);
  if (table_.size() != expected) {
    throw ShapeError("distribution table has " + std::to_string(table_.size()) +
                     " entries, expected " + std::to_string(expected));
  }
  double total = 0.0;
  for (double p : table_) {
    if (!(p >= kNegativeFloor)) {
      throw NumericalError("probability " + std::to_string(p) + " below the negativity floor");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalization) {
    throw NumericalError("distribution sums to " + std::to_string(total));
  }
}

std::vector<double> JointDistribution::clipped() const {
  std::vector<double> out = table_;
  for (double& p : out) p = p < 0.0 ? 0.0 : p;
  return out;
}

std::size_t JointDistribution::flat_index(std::span<const int> xs) const {
  if (xs.size() != order()) throw ShapeError("outcome tuple has the wrong length");
  std::size_t flat = 0;
  for (int x : xs) {
    if (x < 0 || x >= outcomes_) throw ValidationError("outcome label out of range");
    flat = flat * static_cast<std::size_t>(outcomes_) + static_cast<std::size_t>(x);
  }
  return flat;
}

std::vector<int> JointDistribution::tuple(std::size_t flat) const {
  std::vector<int> xs(order());
  for (std::size_t k = xs.size(); k-- > 0;) {
    xs[k] = static_cast<int>(flat % static_cast<std::size_t>(outcomes_));
    flat /= static_cast<std::size_t>(outcomes_);
  }
  return xs;
}

double JointDistribution::at(std::span<const int> xs) const { return table_[flat_index(xs)]; }

JointDistribution JointDistribution::marginalize(std::size_t position) const {
  TimeGrid coarse = grid_.without(position);
  const auto m = static_cast<std::size_t>(outcomes_);
  // Split the flat index into (outer, x_position, inner) blocks.
  std::size_t inner = 1;
  for (std::size_t k = position; k < order(); ++k) inner *= m;
  const std::size_t outer = table_.size() / (inner * m);
  std::vector<double> out(outer * inner, 0.0);
  for (std::size_t a = 0; a < outer; ++a) {
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t b = 0; b < inner; ++b) {
        out[a * inner + b] += table_[(a * m + x) * inner + b];
      }
    }
  }
  return JointDistribution(outcomes_, std::move(coarse), std::move(out));
}

namespace {

struct SystemFactorContext {
  const std::vector<ComplexMatrix>* projectors;
  const ComplexMatrix* rho;
  const std::vector<Complex>* tensor;
  std::vector<std::size_t> stride;  // chain-index stride per step
  int d;
};

// Σ over chains of the system factor times the tensor, for one outcome tuple.
// Step k contributes (P_{x_{k-1}})_{j_k j_{k-1}} (P_{x_{k-1}})_{l_{k-1} l_k}; the
// last step closes with (P_{x_n})_{l_n j_n}.
Complex accumulate(const SystemFactorContext& ctx, const std::vector<int>& xs, std::size_t step,
                   int prev_j, int prev_l, Complex prefix, std::size_t offset) {
  const std::size_t n = xs.size();
  const int d = ctx.d;
  const ComplexMatrix& closing = (*ctx.projectors)[static_cast<std::size_t>(xs[n - 1])];
  Complex sum = 0.0;
  if (step == n) {
    return prefix * closing(prev_l, prev_j) * (*ctx.tensor)[offset];
  }
  const ComplexMatrix& p = (*ctx.projectors)[static_cast<std::size_t>(xs[step - 1])];
  for (int j = 0; j < d; ++j) {
    const Complex left = p(j, prev_j);
    if (left == 0.0) continue;
    for (int l = 0; l < d; ++l) {
      const Complex w = prefix * left * p(prev_l, l);
      if (w == 0.0) continue;
      sum += accumulate(ctx, xs, step + 1, j, l, w,
                        offset + static_cast<std::size_t>(j * d + l) * ctx.stride[step]);
    }
  }
  return sum;
}

double outcome_probability(const SystemFactorContext& ctx, const std::vector<int>& xs) {
  const int d = ctx.d;
  Complex sum = 0.0;
  for (int j = 0; j < d; ++j) {
    for (int l = 0; l < d; ++l) {
      const Complex w = (*ctx.rho)(j, l);
      if (w == 0.0) continue;
      sum += accumulate(ctx, xs, 1, j, l, w, static_cast<std::size_t>(j * d + l) * ctx.stride[0]);
    }
  }
  return sum.real();
}

void check_dimensions(int d, const SystemPreparation& prep, const ProjectiveMeasurement& m) {
  if (prep.dim() != d) {
    throw ShapeError("preparation has dimension " + std::to_string(prep.dim()) +
                     " but the model has d = " + std::to_string(d));
  }
  if (m.dim() != d) {
    throw ShapeError("measurement has dimension " + std::to_string(m.dim()) +
                     " but the model has d = " + std::to_string(d));
  }
}

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= base;
  return r;
}

}  // namespace

JointDistribution joint_distribution(const DephasingTensorProvider& provider,
                                     const SystemPreparation& prep,
                                     const ProjectiveMeasurement& measurement,
                                     const TimeGrid& grid, ExecutionPolicy policy,
                                     std::size_t term_cap) {
  const int d = provider.dim();
  check_dimensions(d, prep, measurement);
  const std::size_t n = grid.size();
  if (n < 1) throw ValidationError("joint_distribution needs at least one measurement time");
  const std::size_t chains = chain_count(d, n, term_cap);
  const std::vector<double> times = grid.with_origin();
  const std::vector<Complex> tensor = provider.tensor_table(times, policy, term_cap);

  SystemFactorContext ctx{&measurement.projectors(), &prep.density().matrix(), &tensor, {}, d};
  ctx.stride.resize(n);
  for (std::size_t k = 0; k < n; ++k) ctx.stride[k] = chains / power(static_cast<std::size_t>(d * d), k + 1);

  const auto m = static_cast<std::size_t>(measurement.outcomes());
  const std::size_t tuples = power(m, n);
  std::vector<double> table(tuples);
  const auto total = static_cast<std::int64_t>(tuples);
#pragma omp parallel for schedule(dynamic, 4) if (policy == ExecutionPolicy::kParallel)
  for (std::int64_t flat = 0; flat < total; ++flat) {
    std::vector<int> xs(n);
    auto rest = static_cast<std::size_t>(flat);
    for (std::size_t k = n; k-- > 0;) {
      xs[k] = static_cast<int>(rest % m);
      rest /= m;
    }
    table[static_cast<std::size_t>(flat)] = outcome_probability(ctx, xs);
  }
  return JointDistribution(measurement.outcomes(), grid, std::move(table));
}

namespace {

void oracle_branch(const std::vector<ComplexMatrix>& lifted, const std::vector<ComplexMatrix>& props,
                   const ComplexMatrix& state, std::size_t step, std::size_t offset,
                   std::vector<double>& table) {
  const std::size_t m = lifted.size();
  const ComplexMatrix evolved = props[step] * state * props[step].adjoint();
  for (std::size_t x = 0; x < m; ++x) {
    const ComplexMatrix projected = lifted[x] * evolved * lifted[x];
    const std::size_t slot = offset * m + x;
    if (step + 1 == props.size()) {
      table[slot] = projected.trace().real();
    } else {
      oracle_branch(lifted, props, projected, step + 1, slot, table);
    }
  }
}

}  // namespace

JointDistribution oracle_distribution(const DephasingModel& model, const SystemPreparation& prep,
                                      const ProjectiveMeasurement& measurement,
                                      const TimeGrid& grid) {
  const int d = model.d();
  check_dimensions(d, prep, measurement);
  const std::size_t n = grid.size();
  if (n < 1) throw ValidationError("oracle_distribution needs at least one measurement time");
  const Index env = model.env_dim();
  const SpectralDecomposition global(model.global_hamiltonian(), "global Hamiltonian");

  const std::vector<double> times = grid.with_origin();
  std::vector<ComplexMatrix> props;
  for (std::size_t k = 0; k < n; ++k) props.push_back(global.propagator(times[k + 1] - times[k]).matrix());

  std::vector<ComplexMatrix> lifted;
  const ComplexMatrix env_id = ComplexMatrix::Identity(env, env);
  for (const ComplexMatrix& p : measurement.projectors()) lifted.push_back(kron(p, env_id));

  const ComplexMatrix initial = kron(prep.density().matrix(), model.env_state.matrix());
  std::vector<double> table(power(static_cast<std::size_t>(measurement.outcomes()), n));
  oracle_branch(lifted, props, initial, 0, 0, table);
  return JointDistribution(measurement.outcomes(), grid, std::move(table));
}

Superoperator reduced_map(const DephasingTensorProvider& provider, double t, double s) {
  const ComplexMatrix phi = dephasing_matrix(provider, t, s);
  // Λ acts entrywise in the dephasing basis, so it is diagonal on vec(ρ).
  return Superoperator(phi.rows(), vec(phi).asDiagonal().toDenseMatrix());
}

double ncgd_deficit(const DephasingTensorProvider& provider,
                    const ProjectiveMeasurement& measurement, double t1, double t2, double t3) {
  if (!(t1 <= t2 && t2 <= t3)) throw ValidationError("ncgd_deficit needs t1 <= t2 <= t3");
  if (measurement.dim() != provider.dim()) throw ShapeError("measurement dimension mismatch");
  const Superoperator delta = dephasing_channel(measurement);
  const Superoperator late = reduced_map(provider, t3, t2);
  const Superoperator early = reduced_map(provider, t2, t1);
  const Superoperator whole = reduced_map(provider, t3, t1);
  const Superoperator lhs = delta.after(late).after(delta).after(early).after(delta);
  const Superoperator rhs = delta.after(whole).after(delta);
  return max_abs(lhs.matrix() - rhs.matrix());
}

double strengthened_ncgd_deficit(const DephasingTensorProvider& provider,
                                 const ProjectiveMeasurement& measurement, double t, double s) {
  if (measurement.dim() != provider.dim()) throw ShapeError("measurement dimension mismatch");
  const Superoperator delta = dephasing_channel(measurement);
  const Superoperator lambda = reduced_map(provider, t, s);
  return max_abs(delta.after(lambda).after(delta).matrix() - lambda.after(delta).matrix());
}

std::vector<double> conditional_probability(const JointDistribution& dist,
                                            std::span<const int> prefix, double null_floor) {
  const std::size_t n = dist.order();
  if (n < 1) throw ValidationError("conditional probability needs at least one time");
  if (prefix.size() + 1 != n) {
    throw ShapeError("conditioning prefix must have length n - 1 = " + std::to_string(n - 1));
  }
  const int m = dist.outcomes();
  std::vector<int> xs(prefix.begin(), prefix.end());
  xs.push_back(0);
  std::vector<double> joint(static_cast<std::size_t>(m));
  for (int x = 0; x < m; ++x) {
    xs.back() = x;
    joint[static_cast<std::size_t>(x)] = dist.at(xs);
  }
  const double evidence = std::accumulate(joint.begin(), joint.end(), 0.0);
  if (evidence < null_floor) {
    throw NullEventError("conditioning event has probability " + std::to_string(evidence) +
                         " below the null floor");
  }
  for (double& p : joint) p = std::max(p, 0.0) / evidence;
  return joint;
}

}  // namespace dephaser
