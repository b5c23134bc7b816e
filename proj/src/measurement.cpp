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

#include "dephaser/measurement.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dephaser/errors.hpp"

namespace dephaser {

PhaseVector::PhaseVector(std::vector<double> phases) : phases_(std::move(phases)) {
  if (phases_.empty()) throw ValidationError("phase vector must not be empty");
  for (double p : phases_) {
    if (!std::isfinite(p)) throw ValidationError("phases must be finite");
  }
  const double gauge = phases_.front();
  for (double& p : phases_) p -= gauge;
}

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<ComplexMatrix> projectors,
                                             std::optional<std::vector<ComplexVector>> vectors)
    : projectors_(std::move(projectors)), vectors_(std::move(vectors)) {}

const std::vector<ComplexVector>& ProjectiveMeasurement::vectors() const {
  if (!vectors_) throw ValidationError("measurement is not rank-one; no basis vectors");
  return *vectors_;
}

ProjectiveMeasurement ProjectiveMeasurement::from_vectors(std::vector<ComplexVector> vectors) {
  const auto d = static_cast<Index>(vectors.size());
  if (d < 1) throw ValidationError("a basis needs at least one vector");
  ComplexMatrix basis(d, d);
  for (Index x = 0; x < d; ++x) {
    const ComplexVector& v = vectors[static_cast<std::size_t>(x)];
    if (v.size() != d) {
      throw ShapeError("basis vector " + std::to_string(x) + " has length " +
                       std::to_string(v.size()) + ", expected " + std::to_string(d));
    }
    basis.col(x) = v;
  }
  if (!all_finite(basis)) throw ValidationError("basis vectors must be finite");
  const double gram = max_abs(basis.adjoint() * basis - ComplexMatrix::Identity(d, d));
  if (gram > 1e-12) {
    throw ValidationError("basis vectors are not orthonormal: max |G - 1| = " +
                          std::to_string(gram));
  }
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(vectors.size());
  for (const ComplexVector& v : vectors) projectors.push_back(v * v.adjoint());
  return ProjectiveMeasurement(std::move(projectors), std::move(vectors));
}

ProjectiveMeasurement ProjectiveMeasurement::from_projectors(std::vector<ComplexMatrix> projectors) {
  if (projectors.empty()) throw ValidationError("a PVM needs at least one projector");
  const Index d = projectors.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t x = 0; x < projectors.size(); ++x) {
    const ComplexMatrix& p = projectors[x];
    if (p.rows() != d || p.cols() != d) {
      throw ShapeError("projector " + std::to_string(x) + " is not " + std::to_string(d) + "x" +
                       std::to_string(d));
    }
    if (!all_finite(p)) throw ValidationError("projectors must be finite");
    for (std::size_t y = 0; y < projectors.size(); ++y) {
      const ComplexMatrix expected = x == y ? p : ComplexMatrix::Zero(d, d);
      if (max_abs(p * projectors[y] - expected) > tol::kUnitarity) {
        throw ValidationError("projectors " + std::to_string(x) + " and " + std::to_string(y) +
                              " violate P_x P_y = δ_xy P_x");
      }
    }
    if (max_abs(p - p.adjoint()) > tol::kUnitarity) {
      throw ValidationError("projector " + std::to_string(x) + " is not Hermitian");
    }
    sum += p;
  }
  if (max_abs(sum - ComplexMatrix::Identity(d, d)) > tol::kUnitarity) {
    throw ValidationError("projectors do not sum to the identity");
  }
  return ProjectiveMeasurement(std::move(projectors), std::nullopt);
}

ProjectiveMeasurement dephasing_basis(int d) {
  if (d < 2) throw ValidationError("dephasing_basis needs d >= 2");
  std::vector<ComplexVector> vectors;
  for (int j = 0; j < d; ++j) vectors.push_back(ComplexVector::Unit(d, j));
  return ProjectiveMeasurement::from_vectors(std::move(vectors));
}

ProjectiveMeasurement fourier_mub(int d, const PhaseVector& phases) {
  if (d < 2) throw ValidationError("fourier_mub needs d >= 2");
  if (phases.size() != d) {
    throw ShapeError("phase vector has " + std::to_string(phases.size()) +
                     " entries but the system dimension is " + std::to_string(d));
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<ComplexVector> vectors;
  for (int x = 0; x < d; ++x) {
    ComplexVector v(d);
    for (int j = 0; j < d; ++j) {
      // Reduce jx mod d before forming ω^{jx} to keep the angle small.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * x) % d) / d +
                           phases.values()[static_cast<std::size_t>(j)];
      v(j) = std::polar(norm, angle);
    }
    vectors.push_back(std::move(v));
  }
  return ProjectiveMeasurement::from_vectors(std::move(vectors));
}

ProjectiveMeasurement qubit_basis(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw ValidationError("qubit_basis angles must be finite");
  }
  const Complex e = std::polar(1.0, phi);
  ComplexVector m0(2);
  m0 << std::cos(theta), e * std::sin(theta);
  ComplexVector m1(2);
  m1 << std::sin(theta), -e * std::cos(theta);
  return ProjectiveMeasurement::from_vectors({m0, m1});
}

ProjectiveMeasurement random_basis(int d, std::uint64_t seed) {
  const ComplexMatrix u = random_unitary(d, seed).matrix();
  std::vector<ComplexVector> vectors;
  for (int x = 0; x < d; ++x) vectors.push_back(u.col(x));
  return ProjectiveMeasurement::from_vectors(std::move(vectors));
}

double mub_deviation(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b) {
  if (!a.rank_one() || !b.rank_one()) {
    throw ValidationError("unbiasedness is only defined here for rank-one measurements");
  }
  if (a.dim() != b.dim()) throw ShapeError("mub check: measurements have different dimensions");
  const double target = 1.0 / a.dim();
  double worst = 0.0;
  for (const ComplexVector& u : a.vectors()) {
    for (const ComplexVector& v : b.vectors()) {
      worst = std::max(worst, std::abs(std::norm(u.dot(v)) - target));
    }
  }
  return worst;
}

bool mub_check(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b, double tolerance) {
  return mub_deviation(a, b) <= tolerance;
}

Superoperator dephasing_channel(const ProjectiveMeasurement& m) {
  const Index d = m.dim();
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  // vec(P X P) = (P^T ⊗ P) vec(X).
  for (const ComplexMatrix& p : m.projectors()) s += kron(p.transpose(), p);
  return Superoperator(d, std::move(s));
}

}  // namespace dephaser
