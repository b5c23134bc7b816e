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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dephaser/core.hpp"
#include "dephaser/errors.hpp"
#include "oracles.hpp"

namespace dephaser {
namespace {

using std::numbers::pi;
const Complex I(0.0, 1.0);

TEST(Operators, RejectNonHermitian) {
  ComplexMatrix m(2, 2);
  m << 1, 1, 0, 1;
  EXPECT_THROW(HermitianOperator{m}, ValidationError);
  EXPECT_THROW(HermitianOperator{ComplexMatrix::Zero(2, 3)}, ShapeError);
}

TEST(Operators, DensityInvariants) {
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityOperator{neg}, ValidationError);
  EXPECT_THROW(DensityOperator{ComplexMatrix::Identity(2, 2)}, ValidationError);
  const DensityOperator mixed = DensityOperator::maximally_mixed(3);
  EXPECT_NEAR(mixed.matrix().trace().real(), 1.0, 1e-15);
}

TEST(Operators, UnitaryCheck) {
  EXPECT_THROW(UnitaryOperator{2.0 * ComplexMatrix::Identity(2, 2)}, ValidationError);
  EXPECT_NO_THROW(UnitaryOperator{pauli::x()});
}

TEST(Expm, ZeroGenerator) {
  const UnitaryOperator u = hermitian_expm(HermitianOperator(ComplexMatrix::Zero(3, 3)), 1.7);
  EXPECT_LE(max_abs(u.matrix() - ComplexMatrix::Identity(3, 3)), 1e-15);
}

TEST(Expm, PauliZAtPi) {
  const UnitaryOperator u = hermitian_expm(HermitianOperator(pauli::z()), pi);
  EXPECT_LE(max_abs(u.matrix() + ComplexMatrix::Identity(2, 2)), 1e-15);
}

TEST(Expm, PauliXMatchesTaylorOracle) {
  const ComplexMatrix u = hermitian_expm(HermitianOperator(pauli::x()), pi / 4).matrix();
  ComplexMatrix expected(2, 2);
  expected << std::cos(pi / 4), -I * std::sin(pi / 4), -I * std::sin(pi / 4), std::cos(pi / 4);
  EXPECT_LE(max_abs(u - expected), 1e-12);
  EXPECT_LE(max_abs(u - oracle::expm(-I * (pi / 4) * pauli::x())), 1e-12);
}

TEST(Expm, RandomHermitianMatchesTaylorOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const HermitianOperator h = random_hermitian(4, seed);
    const double tau = 0.3 + 0.2 * static_cast<double>(seed);
    EXPECT_LE(max_abs(hermitian_expm(h, tau).matrix() - oracle::expm(-I * tau * h.matrix())), 1e-11);
  }
}

TEST(Kron, IdentityBlocks) {
  EXPECT_LE(max_abs(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)) -
                    ComplexMatrix::Identity(6, 6)),
            0.0);
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 2.0;
  diag(1, 1) = 5.0;
  const ComplexMatrix k = kron(diag, ComplexMatrix::Identity(2, 2));
  EXPECT_EQ(k.diagonal(), (ComplexVector(4) << 2.0, 2.0, 5.0, 5.0).finished());
}

TEST(Kron, TraceMultiplicative) {
  const ComplexMatrix a = random_unitary(2, 1).matrix();
  const ComplexMatrix b = random_unitary(3, 2).matrix();
  EXPECT_LE(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 1e-12);
  EXPECT_LE(max_abs(kron(a, b) - oracle::kron(a, b)), 0.0);
}

TEST(Kron, DimensionCap) {
  EXPECT_THROW(kron(ComplexMatrix::Identity(64, 64), ComplexMatrix::Identity(128, 128)), SizeError);
}

TEST(PartialTrace, ProductState) {
  const ComplexMatrix rho = random_density(2, 3).matrix();
  const ComplexMatrix sigma = random_density(3, 4).matrix();
  EXPECT_LE(max_abs(partial_trace_env(kron(rho, sigma), 2, 3) - rho), 1e-14);
}

TEST(PartialTrace, IdentityAndOracle) {
  EXPECT_LE(max_abs(partial_trace_env(ComplexMatrix::Identity(6, 6), 2, 3) -
                    3.0 * ComplexMatrix::Identity(2, 2)),
            0.0);
  const ComplexMatrix m = random_density(6, 9).matrix();
  EXPECT_LE(max_abs(partial_trace_env(m, 3, 2) - oracle::partial_trace(m, 3, 2)), 1e-15);
}

TEST(PartialTrace, MaximallyEntangled) {
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix reduced = partial_trace_env(bell * bell.adjoint(), 2, 2);
  EXPECT_LE(max_abs(reduced - 0.5 * ComplexMatrix::Identity(2, 2)), 1e-15);
  EXPECT_LE(max_abs(reduced - oracle::partial_trace(bell * bell.adjoint(), 2, 2)), 1e-15);
}

TEST(PartialTrace, ShapeMismatch) {
  EXPECT_THROW(partial_trace_env(ComplexMatrix::Identity(6, 6), 4, 2), ShapeError);
}

TEST(Vectorization, ColumnStackingIdentity) {
  const ComplexMatrix a = random_unitary(3, 5).matrix();
  const ComplexMatrix b = random_unitary(3, 6).matrix();
  const ComplexMatrix x = random_density(3, 7).matrix();
  EXPECT_LE((vec(a * x * b) - kron(b.transpose(), a) * vec(x)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE(max_abs(unvec(vec(x), 3) - x), 0.0);
}

TEST(Choi, IdentityChannel) {
  const ComplexMatrix c = choi_matrix(Superoperator::identity(2));
  EXPECT_NEAR(c.trace().real(), 2.0, 1e-15);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(c);
  EXPECT_NEAR(es.eigenvalues()(3), 2.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues().head(3).cwiseAbs().maxCoeff(), 0.0, 1e-14);
}

TEST(Choi, CompletelyDephasingChannel) {
  const Superoperator delta = Superoperator::from_map(2, [](const ComplexMatrix& x) {
    return ComplexMatrix(x.diagonal().asDiagonal());
  });
  // Assemble Σ E_ij ⊗ Δ(E_ij) directly.
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(2, 2);
      e(i, j) = 1.0;
      expected += oracle::kron(e, ComplexMatrix(e.diagonal().asDiagonal()));
    }
  }
  const ComplexMatrix c = choi_matrix(delta);
  EXPECT_LE(max_abs(c - expected), 0.0);
  EXPECT_EQ(c.diagonal().real(), (RealVector(4) << 1, 0, 0, 1).finished());
  EXPECT_TRUE(is_completely_positive(delta));
  EXPECT_TRUE(is_trace_preserving(delta));
}

TEST(Choi, TransposeIsNotCompletelyPositive) {
  const Superoperator t = Superoperator::from_map(2, [](const ComplexMatrix& x) {
    return ComplexMatrix(x.transpose());
  });
  EXPECT_NEAR(min_eigenvalue(choi_matrix(t)), -1.0, 1e-14);
  EXPECT_FALSE(is_completely_positive(t));
  EXPECT_TRUE(is_trace_preserving(t));
}

TEST(Superoperator, CompositionOrder) {
  const ComplexMatrix u = random_unitary(2, 11).matrix();
  const Superoperator conj = Superoperator::from_map(2, [&](const ComplexMatrix& x) {
    return ComplexMatrix(u * x * u.adjoint());
  });
  const Superoperator transpose = Superoperator::from_map(2, [](const ComplexMatrix& x) {
    return ComplexMatrix(x.transpose());
  });
  const ComplexMatrix x = random_density(2, 12).matrix();
  // after(inner) applies inner first.
  EXPECT_LE(max_abs(transpose.after(conj).apply(x) - (u * x * u.adjoint()).transpose()), 1e-14);
}

TEST(Random, Determinism) {
  EXPECT_EQ(random_hermitian(3, 42).matrix(), random_hermitian(3, 42).matrix());
  EXPECT_EQ(random_density(3, 42).matrix(), random_density(3, 42).matrix());
  EXPECT_EQ(random_unitary(3, 42).matrix(), random_unitary(3, 42).matrix());
  EXPECT_NE(random_unitary(3, 42).matrix(), random_unitary(3, 43).matrix());
}

TEST(Random, DensityIsState) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const ComplexMatrix rho = random_density(3, s).matrix();
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
    EXPECT_GE(min_eigenvalue(rho), -1e-14);
  }
}

TEST(Random, HermitianSpectrumReal) {
  const ComplexMatrix h = random_hermitian(4, 8).matrix();
  Eigen::ComplexEigenSolver<ComplexMatrix> es(h);
  EXPECT_LE(es.eigenvalues().imag().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Random, UnitaryIsUnitary) {
  const ComplexMatrix u = random_unitary(5, 9).matrix();
  EXPECT_LE(max_abs(u * u.adjoint() - ComplexMatrix::Identity(5, 5)), 1e-13);
}

}  // namespace
}  // namespace dephaser
