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

#include <cstdint>
#include <optional>
#include <vector>

#include "dephaser/core.hpp"

namespace dephaser {

/// Phases φ_0..φ_{d-1} in radians, gauge-fixed so that φ_0 = 0.
class PhaseVector {
 public:
  explicit PhaseVector(std::vector<double> phases);
  static PhaseVector zeros(int d) { return PhaseVector(std::vector<double>(static_cast<std::size_t>(d), 0.0)); }

  int size() const { return static_cast<int>(phases_.size()); }
  const std::vector<double>& values() const { return phases_; }

 private:
  std::vector<double> phases_;
};

/// A projection-valued measure on C^d. Outcome x is labelled by its position.
/// Rank-one measurements also keep their basis vectors.
class ProjectiveMeasurement {
 public:
  static ProjectiveMeasurement from_vectors(std::vector<ComplexVector> vectors);
  static ProjectiveMeasurement from_projectors(std::vector<ComplexMatrix> projectors);

  int dim() const { return static_cast<int>(projectors_.front().rows()); }
  int outcomes() const { return static_cast<int>(projectors_.size()); }
  bool rank_one() const { return vectors_.has_value(); }

  const ComplexMatrix& projector(int x) const { return projectors_.at(static_cast<std::size_t>(x)); }
  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }
  /// Throws ValidationError for a general (non-rank-one) measurement.
  const std::vector<ComplexVector>& vectors() const;

 private:
  explicit ProjectiveMeasurement(std::vector<ComplexMatrix> projectors,
                                 std::optional<std::vector<ComplexVector>> vectors);

  std::vector<ComplexMatrix> projectors_;
  std::optional<std::vector<ComplexVector>> vectors_;
};

ProjectiveMeasurement dephasing_basis(int d);

/// |m_x> = d^{-1/2} Σ_j ω^{jx} e^{iφ_j} |e_j>, ω = e^{2πi/d}.
ProjectiveMeasurement fourier_mub(int d, const PhaseVector& phases);

/// {cosθ|e_0> + e^{iφ} sinθ|e_1>,  sinθ|e_0> - e^{iφ} cosθ|e_1>}.
ProjectiveMeasurement qubit_basis(double theta, double phi);

/// Columns of a Haar-random unitary.
ProjectiveMeasurement random_basis(int d, std::uint64_t seed);

/// max_{x,j} | |<a_x|b_j>|^2 - 1/d |. Both measurements must be rank-one.
double mub_deviation(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b);
bool mub_check(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b, double tolerance);

/// Δ = Σ_x P_x (·) P_x.
Superoperator dephasing_channel(const ProjectiveMeasurement& m);

}  // namespace dephaser
