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

#include "dephaser/core.hpp"

#include <cmath>
#include <random>
#include <string>

#include "dephaser/errors.hpp"

namespace dephaser {

namespace {

void require_square(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ShapeError(std::string(what) + " must be a non-empty square matrix, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!all_finite(m)) {
    throw ValidationError(std::string(what) + " has non-finite entries");
  }
}

ComplexMatrix ginibre(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
  for (Index k = 0; k < m.size(); ++k) {
    const Complex z = m.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double min_eigenvalue(const ComplexMatrix& m) {
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue computation did not converge");
  }
  return solver.eigenvalues().minCoeff();
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_, "Hermitian operator");
  const double asym = max_abs(m_ - m_.adjoint());
  if (asym > tol::kHermiticity) {
    throw ValidationError("operator is not Hermitian: max |M - M^dagger| = " +
                          std::to_string(asym));
  }
}

DensityOperator::DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_, "density operator");
  const double asym = max_abs(m_ - m_.adjoint());
  if (asym > tol::kHermiticity) {
    throw ValidationError("density operator is not Hermitian: max |M - M^dagger| = " +
                          std::to_string(asym));
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    throw ValidationError("density operator trace is " + std::to_string(tr.real()) +
                          ", expected 1");
  }
  const double lo = min_eigenvalue(m_);
  if (lo < -tol::kPositivity) {
    throw ValidationError("density operator has negative eigenvalue " + std::to_string(lo));
  }
}

DensityOperator DensityOperator::maximally_mixed(Index dim) {
  return DensityOperator(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw ValidationError("pure state vector has zero norm");
  const ComplexVector unit = psi / norm;
  return DensityOperator(unit * unit.adjoint());
}

DensityOperator DensityOperator::diagonal(const RealVector& weights) {
  if (weights.size() == 0) throw ShapeError("diagonal state needs at least one weight");
  if ((weights.array() < 0.0).any()) {
    throw ValidationError("diagonal state weights must be nonnegative");
  }
  return DensityOperator(weights.cast<Complex>().asDiagonal().toDenseMatrix());
}

UnitaryOperator::UnitaryOperator(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_, "unitary operator");
  const Index n = m_.rows();
  const double defect = max_abs(m_ * m_.adjoint() - ComplexMatrix::Identity(n, n));
  if (defect > tol::kUnitarity) {
    throw ValidationError("operator is not unitary: max |U U^dagger - 1| = " +
                          std::to_string(defect));
  }
}

ComplexVector vec(const ComplexMatrix& x) {
  // Eigen storage is column-major, so the raw buffer is already column-stacked.
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index dim) {
  if (v.size() != dim * dim) throw ShapeError("unvec: length is not dim^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

Superoperator::Superoperator(Index dim, ComplexMatrix m) : dim_(dim), m_(std::move(m)) {
  if (dim <= 0 || m_.rows() != dim * dim || m_.cols() != dim * dim) {
    throw ShapeError("superoperator matrix must be d^2 x d^2");
  }
  if (!all_finite(m_)) throw ValidationError("superoperator has non-finite entries");
}

Superoperator Superoperator::identity(Index dim) {
  return Superoperator(dim, ComplexMatrix::Identity(dim * dim, dim * dim));
}

Superoperator Superoperator::from_map(
    Index dim, const std::function<ComplexMatrix(const ComplexMatrix&)>& map) {
  ComplexMatrix m(dim * dim, dim * dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) {
      ComplexMatrix unit = ComplexMatrix::Zero(dim, dim);
      unit(i, j) = 1.0;
      m.col(i + j * dim) = vec(map(unit));
    }
  }
  return Superoperator(dim, std::move(m));
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw ShapeError("superoperator input has wrong shape");
  return unvec(m_ * vec(x), dim_);
}

Superoperator Superoperator::after(const Superoperator& inner) const {
  if (inner.dim_ != dim_) throw ShapeError("cannot compose superoperators of different dims");
  return Superoperator(dim_, m_ * inner.m_);
}

SpectralDecomposition::SpectralDecomposition(const HermitianOperator& h, std::string_view name) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of " + std::string(name) + " did not converge");
  }
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

UnitaryOperator SpectralDecomposition::propagator(double tau) const {
  if (!std::isfinite(tau)) throw ValidationError("propagator duration must be finite");
  ComplexVector phases(values_.size());
  for (Index k = 0; k < values_.size(); ++k) {
    phases(k) = std::polar(1.0, -tau * values_(k));
  }
  return UnitaryOperator(vectors_ * phases.asDiagonal() * vectors_.adjoint());
}

UnitaryOperator hermitian_expm(const HermitianOperator& h, double tau, std::string_view name) {
  return SpectralDecomposition(h, name).propagator(tau);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, Index max_dim) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (rows > max_dim || cols > max_dim) {
    throw SizeError("Kronecker product of size " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " exceeds the dimension cap " +
                    std::to_string(max_dim));
  }
  ComplexMatrix out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace_env(const ComplexMatrix& m, Index d, Index env_dim) {
  if (d <= 0 || env_dim <= 0 || m.rows() != d * env_dim || m.cols() != d * env_dim) {
    throw ShapeError("partial trace: operator is " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + ", expected " + std::to_string(d * env_dim) +
                     " square");
  }
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      out(i, j) = m.block(i * env_dim, j * env_dim, env_dim, env_dim).trace();
    }
  }
  return out;
}

ComplexMatrix choi_matrix(const Superoperator& s) {
  const Index d = s.dim();
  ComplexMatrix choi(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(d, d);
      unit(i, j) = 1.0;
      choi.block(i * d, j * d, d, d) = s.apply(unit);
    }
  }
  return choi;
}

bool is_completely_positive(const Superoperator& s, double tolerance) {
  const ComplexMatrix choi = choi_matrix(s);
  if (max_abs(choi - choi.adjoint()) > tolerance) return false;
  return min_eigenvalue(choi) >= -tolerance;
}

bool is_trace_preserving(const Superoperator& s, double tolerance) {
  // tr S(X) = tr X for all X  <=>  vec(1)^dagger S = vec(1)^dagger.
  const Index d = s.dim();
  const ComplexVector id = vec(ComplexMatrix::Identity(d, d));
  const ComplexVector row = s.matrix().adjoint() * id;
  return max_abs(row - id) <= tolerance;
}

HermitianOperator random_hermitian(Index dim, std::uint64_t seed) {
  if (dim < 1) throw ValidationError("random_hermitian: dim must be >= 1");
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = ginibre(dim, rng);
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

DensityOperator random_density(Index dim, std::uint64_t seed) {
  if (dim < 1) throw ValidationError("random_density: dim must be >= 1");
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = ginibre(dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Remove the roundoff anti-Hermitian part so the result is exactly Hermitian.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(std::move(rho));
}

UnitaryOperator random_unitary(Index dim, std::uint64_t seed) {
  if (dim < 1) throw ValidationError("random_unitary: dim must be >= 1");
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = ginibre(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < dim; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return UnitaryOperator(std::move(q));
}

namespace pauli {
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

}  // namespace dephaser
