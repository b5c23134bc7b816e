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

// Pure-dephasing models H = Σ_j |e_j><e_j| ⊗ H_j and the dephasing tensor
//
//   T[(j_1,l_1)...(j_n,l_n); t_0..t_n] = tr[U^{j_n,l_n}_{t_n,t_{n-1}} ... U^{j_1,l_1}_{t_1,t_0}(ρ_B)],
//
// with U^{j,l}_{t,s}(X) = U^j_{t,s} X (U^l_{t,s})^dagger. The dephasing basis is
// the computational basis of the system.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dephaser/core.hpp"

namespace dephaser {

enum class ExecutionPolicy { kSerial, kParallel };

struct IndexPair {
  int j = 0;
  int l = 0;

  bool diagonal() const { return j == l; }
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Index pairs (j_k, l_k) attached to the intervals [t_{k-1}, t_k].
class IndexPairChain {
 public:
  IndexPairChain() : times_{0.0} {}
  IndexPairChain(std::vector<IndexPair> pairs, std::vector<double> times);

  const std::vector<IndexPair>& pairs() const { return pairs_; }
  const std::vector<double>& times() const { return times_; }
  std::size_t length() const { return pairs_.size(); }

  /// Throws ValidationError if any index is outside [0, d).
  void check_indices(int d) const;
  /// Every pair (j, l) replaced by (l, j).
  IndexPairChain swapped() const;

 private:
  std::vector<IndexPair> pairs_;
  std::vector<double> times_;
};

/// Number of index chains of length n, d^(2n); throws SizeError above `cap`.
std::size_t chain_count(int d, std::size_t n, std::size_t cap);
/// Decodes a flat chain index with (j_1, l_1) slowest.
std::vector<IndexPair> decode_chain(std::size_t index, int d, std::size_t n);

class DephasingTensorProvider {
 public:
  virtual ~DephasingTensorProvider() = default;

  virtual int dim() const = 0;
  virtual bool markovian_by_construction() const = 0;
  virtual Complex tensor(const IndexPairChain& chain) const = 0;

  /// φ_{jl}(t, s): the single-interval tensor.
  virtual Complex dephasing_element(int j, int l, double t, double s) const;

  /// All d^(2n) tensor values over `times` (n = times.size() - 1), flat with
  /// (j_1, l_1) slowest. Both policies return bitwise-identical tables.
  virtual std::vector<Complex> tensor_table(std::span<const double> times,
                                            ExecutionPolicy policy = ExecutionPolicy::kParallel,
                                            std::size_t cap = kDefaultChainCap) const;

  static constexpr std::size_t kDefaultChainCap = 10'000'000;
};

struct DephasingModel {
  DephasingModel(std::vector<HermitianOperator> blocks, DensityOperator env_state);

  int d() const { return static_cast<int>(blocks.size()); }
  Index env_dim() const { return env_state.dim(); }
  /// Σ_j |e_j><e_j| ⊗ H_j on the d*D space.
  HermitianOperator global_hamiltonian() const;

  std::vector<HermitianOperator> blocks;
  DensityOperator env_state;
};

/// Exact tensor for a finite environment, by propagating ρ_B through the chain.
class ExactTensorProvider final : public DephasingTensorProvider {
 public:
  explicit ExactTensorProvider(DephasingModel model);

  int dim() const override { return model_.d(); }
  bool markovian_by_construction() const override { return false; }
  Complex tensor(const IndexPairChain& chain) const override;
  std::vector<Complex> tensor_table(std::span<const double> times,
                                    ExecutionPolicy policy = ExecutionPolicy::kParallel,
                                    std::size_t cap = kDefaultChainCap) const override;

  const DephasingModel& model() const { return model_; }
  /// U^j over a duration tau.
  ComplexMatrix block_propagator(int j, double tau) const;

 private:
  DephasingModel model_;
  std::vector<SpectralDecomposition> spectra_;
};

/// φ_{jl}(t,s) = exp(-(i ε_{jl} + γ_{jl}/2)(t - s)); ε antisymmetric, γ symmetric
/// and nonnegative, both with zero diagonal.
struct MarkovianAnalyticModel {
  MarkovianAnalyticModel(RealMatrix eps, RealMatrix gamma);

  /// Qubit specialisation with ε_{01} = epsilon, γ_{01} = gamma.
  static MarkovianAnalyticModel qubit(double epsilon, double gamma);
  /// ε = 0 and γ_{jl} = gamma for every j != l.
  static MarkovianAnalyticModel uniform_real(int d, double gamma);

  int d() const { return static_cast<int>(eps.rows()); }

  RealMatrix eps;
  RealMatrix gamma;
};

class MarkovianTensorProvider final : public DephasingTensorProvider {
 public:
  explicit MarkovianTensorProvider(MarkovianAnalyticModel model);

  int dim() const override { return model_.d(); }
  bool markovian_by_construction() const override { return true; }
  Complex tensor(const IndexPairChain& chain) const override;
  Complex dephasing_element(int j, int l, double t, double s) const override;

  const MarkovianAnalyticModel& model() const { return model_; }

 private:
  MarkovianAnalyticModel model_;
};

Complex exact_tensor(const DephasingModel& model, const IndexPairChain& chain);
Complex markovian_tensor(const MarkovianAnalyticModel& model, const IndexPairChain& chain);

/// d x d matrix of φ_{jl}(t, s).
ComplexMatrix dephasing_matrix(const DephasingTensorProvider& provider, double t, double s);

struct MarkovianityReport {
  double deficit = 0.0;
  int max_order = 0;
  std::size_t tuples_checked = 0;
  bool subsampled = false;
  IndexPairChain worst;
};

/// Largest |T(chain) - Π_k φ_{j_k l_k}(t_k, t_{k-1})| over every strictly
/// increasing (n+1)-subset of `times` and every chain, for orders 1..max_order.
/// Above `exhaustive_cap` tuples a seeded subsample of `sample_size` is used.
MarkovianityReport markovianity_deficit(const DephasingTensorProvider& provider,
                                        std::span<const double> times, int max_order,
                                        std::uint64_t seed = 0,
                                        std::size_t exhaustive_cap = 1'000'000,
                                        std::size_t sample_size = 100'000);

/// max_{jl} |φ(t2,t0) - φ(t2,t1) φ(t1,t0)|.
double semigroup_deficit(const DephasingTensorProvider& provider, double t0, double t1,
                         double t2);

bool commutativity_check(const DephasingModel& model, double tolerance);

/// True iff every |φ_{jl}(t,s)| is within `tolerance` of 1 for all grid pairs s <= t.
bool triviality_check(const DephasingTensorProvider& provider, std::span<const double> grid,
                      double tolerance);

/// |T(chain) - T(chain without pair k)| where pair k (0-based) must be diagonal.
/// Removing the pair removes its interval and shifts the later times back.
double tensor_collapse_check(const DephasingTensorProvider& provider, const IndexPairChain& chain,
                             std::size_t k);

}  // namespace dephaser
