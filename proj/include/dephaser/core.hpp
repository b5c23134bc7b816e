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

// Dense complex linear algebra for finite-dimensional Hilbert spaces.
//
// All operator types are immutable after construction and validate their
// invariants once, in the constructor. Vectorization of operators follows
// the column-stacking convention: vec(X)[i + j*d] = X(i, j).

#include <complex>
#include <cstdint>
#include <functional>
#include <string_view>

#include <Eigen/Dense>

namespace dephaser {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tol {
inline constexpr double kHermiticity = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kPositivity = 1e-10;
}  // namespace tol

/// Largest total Hilbert-space dimension any kernel will build.
inline constexpr Index kMaxHilbertDim = 4096;

double max_abs(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);
/// Smallest eigenvalue of the Hermitian part of `m`.
double min_eigenvalue(const ComplexMatrix& m);

class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m);

  static DensityOperator maximally_mixed(Index dim);
  static DensityOperator pure(const ComplexVector& psi);
  static DensityOperator diagonal(const RealVector& weights);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(ComplexMatrix m);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, Index dim);

/// Linear map on d x d operators, stored as a d^2 x d^2 matrix acting on
/// column-stacked vectorizations.
class Superoperator {
 public:
  Superoperator(Index dim, ComplexMatrix m);

  static Superoperator identity(Index dim);
  static Superoperator from_map(Index dim,
                                const std::function<ComplexMatrix(const ComplexMatrix&)>& map);

  Index dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return m_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  /// Returns this ∘ inner (inner applied first).
  Superoperator after(const Superoperator& inner) const;

 private:
  Index dim_;
  ComplexMatrix m_;
};

/// Cached spectral decomposition H = V diag(λ) V†, reused for propagators at
/// many durations.
class SpectralDecomposition {
 public:
  explicit SpectralDecomposition(const HermitianOperator& h, std::string_view name = "operator");

  Index dim() const { return values_.size(); }
  const RealVector& eigenvalues() const { return values_; }
  const ComplexMatrix& eigenvectors() const { return vectors_; }

  /// e^{-i tau H}.
  UnitaryOperator propagator(double tau) const;

 private:
  RealVector values_;
  ComplexMatrix vectors_;
};

/// e^{-i tau H} from the spectral decomposition of H.
UnitaryOperator hermitian_expm(const HermitianOperator& h, double tau,
                               std::string_view name = "operator");

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, Index max_dim = kMaxHilbertDim);

/// Traces out the second factor of an operator on C^d ⊗ C^D.
ComplexMatrix partial_trace_env(const ComplexMatrix& m, Index d, Index env_dim);

/// Choi matrix Σ_ij E_ij ⊗ S(E_ij), with system index slowest.
ComplexMatrix choi_matrix(const Superoperator& s);

bool is_completely_positive(const Superoperator& s, double tolerance = tol::kPositivity);
bool is_trace_preserving(const Superoperator& s, double tolerance = tol::kUnitarity);

HermitianOperator random_hermitian(Index dim, std::uint64_t seed);
DensityOperator random_density(Index dim, std::uint64_t seed);
/// Haar-distributed unitary from the QR decomposition of a Ginibre matrix.
UnitaryOperator random_unitary(Index dim, std::uint64_t seed);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace dephaser
