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

#include "dephaser/dephasing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "dephaser/errors.hpp"

namespace dephaser {

IndexPairChain::IndexPairChain(std::vector<IndexPair> pairs, std::vector<double> times)
    : pairs_(std::move(pairs)), times_(std::move(times)) {
  if (times_.size() != pairs_.size() + 1) {
    throw ShapeError("index chain with " + std::to_string(pairs_.size()) + " pairs needs " +
                     std::to_string(pairs_.size() + 1) + " times, got " +
                     std::to_string(times_.size()));
  }
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (!std::isfinite(times_[k])) throw ValidationError("index chain times must be finite");
    if (k > 0 && times_[k] < times_[k - 1]) {
      throw ValidationError("index chain times must be non-decreasing (t_" + std::to_string(k) +
                            " < t_" + std::to_string(k - 1) + ")");
    }
  }
}

void IndexPairChain::check_indices(int d) const {
  for (const IndexPair& p : pairs_) {
    if (p.j < 0 || p.j >= d || p.l < 0 || p.l >= d) {
      throw ValidationError("index pair (" + std::to_string(p.j) + "," + std::to_string(p.l) +
                            ") out of range for d = " + std::to_string(d));
    }
  }
}

IndexPairChain IndexPairChain::swapped() const {
  std::vector<IndexPair> out;
  out.reserve(pairs_.size());
  for (const IndexPair& p : pairs_) out.push_back({p.l, p.j});
  return IndexPairChain(std::move(out), times_);
}

std::size_t chain_count(int d, std::size_t n, std::size_t cap) {
  const std::size_t per_step = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (total > cap / per_step) {
      throw SizeError("d^(2n) = " + std::to_string(d) + "^" + std::to_string(2 * n) +
                      " index chains exceeds the cap of " + std::to_string(cap) +
                      "; use fewer measurement times");
    }
    total *= per_step;
  }
  return total;
}

std::vector<IndexPair> decode_chain(std::size_t index, int d, std::size_t n) {
  std::vector<IndexPair> pairs(n);
  const std::size_t ud = static_cast<std::size_t>(d);
  for (std::size_t k = n; k-- > 0;) {
    pairs[k].l = static_cast<int>(index % ud);
    index /= ud;
    pairs[k].j = static_cast<int>(index % ud);
    index /= ud;
  }
  return pairs;
}

Complex DephasingTensorProvider::dephasing_element(int j, int l, double t, double s) const {
  return tensor(IndexPairChain({{j, l}}, {s, t}));
}

std::vector<Complex> DephasingTensorProvider::tensor_table(std::span<const double> times,
                                                           ExecutionPolicy policy,
                                                           std::size_t cap) const {
  if (times.empty()) throw ShapeError("tensor table needs at least the initial time");
  const std::size_t n = times.size() - 1;
  const int d = dim();
  const std::size_t count = chain_count(d, n, cap);
  const std::vector<double> grid(times.begin(), times.end());
  IndexPairChain(std::vector<IndexPair>(n), grid);  // validates ordering
  std::vector<Complex> table(count);
  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static) if (policy == ExecutionPolicy::kParallel)
  for (std::int64_t c = 0; c < total; ++c) {
    table[static_cast<std::size_t>(c)] =
        tensor(IndexPairChain(decode_chain(static_cast<std::size_t>(c), d, n), grid));
  }
  return table;
}

DephasingModel::DephasingModel(std::vector<HermitianOperator> blocks_in, DensityOperator env)
    : blocks(std::move(blocks_in)), env_state(std::move(env)) {
  if (blocks.empty()) throw ValidationError("dephasing model needs at least one block");
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (blocks[j].dim() != env_state.dim()) {
      throw ShapeError("block H_" + std::to_string(j) + " has dim " +
                       std::to_string(blocks[j].dim()) + " but the environment state has dim " +
                       std::to_string(env_state.dim()));
    }
  }
  if (static_cast<Index>(blocks.size()) * env_state.dim() > kMaxHilbertDim) {
    throw SizeError("total dimension d*D exceeds the cap " + std::to_string(kMaxHilbertDim));
  }
}

HermitianOperator DephasingModel::global_hamiltonian() const {
  const Index dd = d();
  const Index env = env_dim();
  ComplexMatrix h = ComplexMatrix::Zero(dd * env, dd * env);
  for (Index j = 0; j < dd; ++j) {
    ComplexMatrix proj = ComplexMatrix::Zero(dd, dd);
    proj(j, j) = 1.0;
    h += kron(proj, blocks[static_cast<std::size_t>(j)].matrix());
  }
  return HermitianOperator(std::move(h));
}

ExactTensorProvider::ExactTensorProvider(DephasingModel model) : model_(std::move(model)) {
  spectra_.reserve(model_.blocks.size());
  for (std::size_t j = 0; j < model_.blocks.size(); ++j) {
    spectra_.emplace_back(model_.blocks[j], "H_" + std::to_string(j));
  }
}

ComplexMatrix ExactTensorProvider::block_propagator(int j, double tau) const {
  return spectra_.at(static_cast<std::size_t>(j)).propagator(tau).matrix();
}

Complex ExactTensorProvider::tensor(const IndexPairChain& chain) const {
  chain.check_indices(dim());
  if (chain.length() == 0) return 1.0;
  const auto& times = chain.times();
  ComplexMatrix x = model_.env_state.matrix();
  for (std::size_t k = 0; k < chain.length(); ++k) {
    const double tau = times[k + 1] - times[k];
    const IndexPair p = chain.pairs()[k];
    const ComplexMatrix uj = block_propagator(p.j, tau);
    if (p.j == p.l) {
      x = uj * x * uj.adjoint();
    } else {
      x = uj * x * block_propagator(p.l, tau).adjoint();
    }
  }
  return x.trace();
}

namespace {

// Depth-first expansion of the chain tree; X at each node is shared by all
// chains with that prefix.
void expand_exact(const std::vector<std::vector<ComplexMatrix>>& props, const ComplexMatrix& x,
                  std::size_t step, std::size_t offset, std::vector<Complex>& table) {
  const std::size_t d = props[step].size();
  const std::size_t n = props.size();
  const std::size_t stride = [&] {
    std::size_t s = 1;
    for (std::size_t k = step + 1; k < n; ++k) s *= d * d;
    return s;
  }();
  for (std::size_t j = 0; j < d; ++j) {
    const ComplexMatrix left = props[step][j] * x;
    for (std::size_t l = 0; l < d; ++l) {
      const ComplexMatrix next = left * props[step][l].adjoint();
      const std::size_t slot = offset + (j * d + l) * stride;
      if (step + 1 == n) {
        table[slot] = next.trace();
      } else {
        expand_exact(props, next, step + 1, slot, table);
      }
    }
  }
}

}  // namespace

std::vector<Complex> ExactTensorProvider::tensor_table(std::span<const double> times,
                                                       ExecutionPolicy policy,
                                                       std::size_t cap) const {
  if (times.empty()) throw ShapeError("tensor table needs at least the initial time");
  const std::size_t n = times.size() - 1;
  const int d = dim();
  const std::size_t count = chain_count(d, n, cap);
  IndexPairChain(std::vector<IndexPair>(n), std::vector<double>(times.begin(), times.end()));
  if (n == 0) return {Complex(1.0)};

  std::vector<std::vector<ComplexMatrix>> props(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double tau = times[k + 1] - times[k];
    for (int j = 0; j < d; ++j) props[k].push_back(block_propagator(j, tau));
  }

  std::vector<Complex> table(count);
  const std::size_t stride = count / static_cast<std::size_t>(d * d);
  const ComplexMatrix& rho = model_.env_state.matrix();
  const auto top = static_cast<std::int64_t>(d) * d;
#pragma omp parallel for schedule(dynamic, 1) if (policy == ExecutionPolicy::kParallel)
  for (std::int64_t pair = 0; pair < top; ++pair) {
    const auto j = static_cast<std::size_t>(pair / d);
    const auto l = static_cast<std::size_t>(pair % d);
    const ComplexMatrix next = props[0][j] * rho * props[0][l].adjoint();
    const std::size_t slot = static_cast<std::size_t>(pair) * stride;
    if (n == 1) {
      table[slot] = next.trace();
    } else {
      expand_exact(props, next, 1, slot, table);
    }
  }
  return table;
}

MarkovianAnalyticModel::MarkovianAnalyticModel(RealMatrix eps_in, RealMatrix gamma_in)
    : eps(std::move(eps_in)), gamma(std::move(gamma_in)) {
  if (eps.rows() < 1 || eps.rows() != eps.cols() || gamma.rows() != eps.rows() ||
      gamma.cols() != eps.cols()) {
    throw ShapeError("eps and gamma must be square matrices of the same size");
  }
  if (!eps.allFinite() || !gamma.allFinite()) {
    throw ValidationError("eps and gamma must be finite");
  }
  constexpr double kSym = 1e-12;
  for (Index j = 0; j < eps.rows(); ++j) {
    if (eps(j, j) != 0.0 || gamma(j, j) != 0.0) {
      throw ValidationError("eps and gamma must have zero diagonal (entry " + std::to_string(j) +
                            ")");
    }
    for (Index l = 0; l < eps.cols(); ++l) {
      if (gamma(j, l) < 0.0) {
        throw ValidationError("gamma must be nonnegative (entry " + std::to_string(j) + "," +
                              std::to_string(l) + ")");
      }
      if (std::abs(eps(j, l) + eps(l, j)) > kSym) {
        throw ValidationError("eps must be antisymmetric");
      }
      if (std::abs(gamma(j, l) - gamma(l, j)) > kSym) {
        throw ValidationError("gamma must be symmetric");
      }
    }
  }
}

MarkovianAnalyticModel MarkovianAnalyticModel::qubit(double epsilon, double gamma_rate) {
  RealMatrix e(2, 2);
  e << 0.0, epsilon, -epsilon, 0.0;
  RealMatrix g(2, 2);
  g << 0.0, gamma_rate, gamma_rate, 0.0;
  return MarkovianAnalyticModel(std::move(e), std::move(g));
}

MarkovianAnalyticModel MarkovianAnalyticModel::uniform_real(int d, double gamma_rate) {
  RealMatrix g = RealMatrix::Constant(d, d, gamma_rate);
  g.diagonal().setZero();
  return MarkovianAnalyticModel(RealMatrix::Zero(d, d), std::move(g));
}

MarkovianTensorProvider::MarkovianTensorProvider(MarkovianAnalyticModel model)
    : model_(std::move(model)) {}

Complex MarkovianTensorProvider::dephasing_element(int j, int l, double t, double s) const {
  if (t < s) throw ValidationError("dephasing element needs t >= s");
  if (j == l) return 1.0;
  const Complex rate(0.5 * model_.gamma(j, l), model_.eps(j, l));
  return std::exp(-rate * (t - s));
}

Complex MarkovianTensorProvider::tensor(const IndexPairChain& chain) const {
  chain.check_indices(dim());
  Complex out = 1.0;
  const auto& times = chain.times();
  for (std::size_t k = 0; k < chain.length(); ++k) {
    const IndexPair p = chain.pairs()[k];
    if (p.j != p.l) out *= dephasing_element(p.j, p.l, times[k + 1], times[k]);
  }
  return out;
}

Complex exact_tensor(const DephasingModel& model, const IndexPairChain& chain) {
  return ExactTensorProvider(model).tensor(chain);
}

Complex markovian_tensor(const MarkovianAnalyticModel& model, const IndexPairChain& chain) {
  return MarkovianTensorProvider(model).tensor(chain);
}

ComplexMatrix dephasing_matrix(const DephasingTensorProvider& provider, double t, double s) {
  if (t < s) throw ValidationError("dephasing matrix needs t >= s");
  const int d = provider.dim();
  ComplexMatrix phi(d, d);
  for (int j = 0; j < d; ++j) {
    phi(j, j) = 1.0;
    for (int l = 0; l < d; ++l) {
      if (l != j) phi(j, l) = provider.dephasing_element(j, l, t, s);
    }
  }
  return phi;
}

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Advances a sorted index combination; false after the last one.
bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < m - k + i) {
      ++idx[i];
      for (std::size_t r = i + 1; r < k; ++r) idx[r] = idx[r - 1] + 1;
      return true;
    }
  }
  return false;
}

Complex factorized(const std::vector<ComplexMatrix>& phis, const std::vector<IndexPair>& pairs) {
  Complex out = 1.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) out *= phis[k](pairs[k].j, pairs[k].l);
  return out;
}

}  // namespace

MarkovianityReport markovianity_deficit(const DephasingTensorProvider& provider,
                                        std::span<const double> times, int max_order,
                                        std::uint64_t seed, std::size_t exhaustive_cap,
                                        std::size_t sample_size) {
  if (max_order < 2) throw ValidationError("markovianity_deficit needs max_order >= 2");
  if (times.size() < 2) throw ValidationError("markovianity_deficit needs at least two times");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (times[k] < times[k - 1]) throw ValidationError("times must be non-decreasing");
  }
  const int d = provider.dim();
  const std::size_t m = times.size();
  const auto top_order = std::min<std::size_t>(static_cast<std::size_t>(max_order), m - 1);
  chain_count(d, static_cast<std::size_t>(max_order), DephasingTensorProvider::kDefaultChainCap);

  std::size_t total = 0;
  for (std::size_t n = 1; n <= top_order; ++n) {
    total += binomial(m, n + 1) * chain_count(d, n, DephasingTensorProvider::kDefaultChainCap);
  }

  MarkovianityReport report;
  report.max_order = max_order;

  if (total <= exhaustive_cap) {
    for (std::size_t n = 1; n <= top_order; ++n) {
      std::vector<std::size_t> idx(n + 1);
      std::iota(idx.begin(), idx.end(), 0);
      do {
        std::vector<double> sub;
        for (std::size_t i : idx) sub.push_back(times[i]);
        std::vector<ComplexMatrix> phis;
        for (std::size_t k = 0; k < n; ++k) {
          phis.push_back(dephasing_matrix(provider, sub[k + 1], sub[k]));
        }
        const std::vector<Complex> table = provider.tensor_table(sub);
        for (std::size_t c = 0; c < table.size(); ++c) {
          const std::vector<IndexPair> pairs = decode_chain(c, d, n);
          const double gap = std::abs(table[c] - factorized(phis, pairs));
          ++report.tuples_checked;
          if (gap > report.deficit) {
            report.deficit = gap;
            report.worst = IndexPairChain(pairs, sub);
          }
        }
      } while (next_combination(idx, m));
    }
    return report;
  }

  report.subsampled = true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> order_dist(1, top_order);
  std::uniform_int_distribution<int> index_dist(0, d - 1);
  std::vector<std::size_t> all(m);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t s = 0; s < sample_size; ++s) {
    const std::size_t n = order_dist(rng);
    std::vector<std::size_t> idx;
    std::sample(all.begin(), all.end(), std::back_inserter(idx), n + 1, rng);
    std::vector<double> sub;
    for (std::size_t i : idx) sub.push_back(times[i]);
    std::vector<IndexPair> pairs(n);
    for (IndexPair& p : pairs) p = {index_dist(rng), index_dist(rng)};
    std::vector<ComplexMatrix> phis;
    for (std::size_t k = 0; k < n; ++k) phis.push_back(dephasing_matrix(provider, sub[k + 1], sub[k]));
    IndexPairChain chain(pairs, sub);
    const double gap = std::abs(provider.tensor(chain) - factorized(phis, pairs));
    ++report.tuples_checked;
    if (gap > report.deficit) {
      report.deficit = gap;
      report.worst = std::move(chain);
    }
  }
  return report;
}

double semigroup_deficit(const DephasingTensorProvider& provider, double t0, double t1,
                         double t2) {
  if (!(t0 <= t1 && t1 <= t2)) throw ValidationError("semigroup_deficit needs t0 <= t1 <= t2");
  const ComplexMatrix whole = dephasing_matrix(provider, t2, t0);
  const ComplexMatrix later = dephasing_matrix(provider, t2, t1);
  const ComplexMatrix earlier = dephasing_matrix(provider, t1, t0);
  return max_abs(whole - later.cwiseProduct(earlier));
}

bool commutativity_check(const DephasingModel& model, double tolerance) {
  for (std::size_t j = 0; j < model.blocks.size(); ++j) {
    for (std::size_t l = j + 1; l < model.blocks.size(); ++l) {
      const ComplexMatrix& a = model.blocks[j].matrix();
      const ComplexMatrix& b = model.blocks[l].matrix();
      if (max_abs(a * b - b * a) > tolerance) return false;
    }
  }
  return true;
}

bool triviality_check(const DephasingTensorProvider& provider, std::span<const double> grid,
                      double tolerance) {
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = 0; b < grid.size(); ++b) {
      if (grid[b] < grid[a]) continue;
      const ComplexMatrix phi = dephasing_matrix(provider, grid[b], grid[a]);
      if ((phi.cwiseAbs().array() - 1.0).abs().maxCoeff() > tolerance) return false;
    }
  }
  return true;
}

double tensor_collapse_check(const DephasingTensorProvider& provider, const IndexPairChain& chain,
                             std::size_t k) {
  if (k >= chain.length()) throw ValidationError("tensor_collapse_check: pair index out of range");
  if (!chain.pairs()[k].diagonal()) {
    throw ValidationError("tensor_collapse_check: pair " + std::to_string(k) +
                          " is not diagonal");
  }
  const auto& times = chain.times();
  const double removed = times[k + 1] - times[k];
  std::vector<IndexPair> pairs;
  std::vector<double> shifted(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(k) + 1);
  for (std::size_t i = 0; i < chain.length(); ++i) {
    if (i != k) pairs.push_back(chain.pairs()[i]);
  }
  for (std::size_t i = k + 2; i < times.size(); ++i) shifted.push_back(times[i] - removed);
  const IndexPairChain reduced(std::move(pairs), std::move(shifted));
  return std::abs(provider.tensor(chain) - provider.tensor(reduced));
}

}  // namespace dephaser
