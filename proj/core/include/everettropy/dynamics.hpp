// Copyright 2026 The Everettropy Authors
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

#include <optional>
#include <string_view>
#include <vector>

#include "everettropy/operator.hpp"
#include "everettropy/spectral.hpp"
#include "everettropy/state.hpp"

namespace everettropy {

enum class Picture { heisenberg, schrodinger };

/// One discrete unitary step between two time tags. Time tags are
/// bookkeeping only.
class EvolutionStep {
 public:
  /// Throws ValidationError if `unitary` is not unitary within `tol` or if
  /// t_to == t_from.
  EvolutionStep(Operator unitary, Picture picture, double t_from, double t_to,
                double tol = kOperatorTol);

  const Operator& unitary() const { return unitary_; }
  Picture picture() const { return picture_; }
  double t_from() const { return t_from_; }
  double t_to() const { return t_to_; }

  /// Heisenberg step: U^dag A U.
  Operator apply(const Operator& observable) const;
  /// Schrodinger step: U rho U^dag.
  DensityState apply(const DensityState& state) const;

 private:
  Operator unitary_;
  Picture picture_;
  double t_from_;
  double t_to_;
};

/// U^dag A U. Throws ValidationError for a non-unitary U or layout mismatch.
Operator evolve_heisenberg(const Operator& obs, const Operator& unitary,
                           double tol = kOperatorTol);

/// U rho U^dag.
DensityState evolve_schrodinger(const DensityState& state, const Operator& unitary,
                                double tol = kOperatorTol);

/// U = sum_b |v_perm(b)><v_b| on `subsystem`, where v_b are the columns of
/// `basis` (computational basis when omitted).
Operator permutation_unitary(const SystemLayout& layout, std::string_view subsystem,
                             const Permutation& perm,
                             const std::optional<Matrix>& basis = std::nullopt);

/// Premeasurement |a>_source |b>_target -> |a>_source |(a + b) mod N>_target,
/// with |a> taken from `source_basis` and |b> from `target_basis`
/// (computational bases when omitted). Source and target must have equal
/// dimension.
Operator perfect_measurement_unitary(const SystemLayout& layout,
                                     std::string_view source, std::string_view target,
                                     const std::optional<Matrix>& source_basis = std::nullopt,
                                     const std::optional<Matrix>& target_basis = std::nullopt);

/// The permutation pi with U P_a U^dag = P_pi(a) for every projector of a
/// nondegenerate observable, or nullopt when U does not permute them. Indices
/// refer to obs.projectors() order. Throws ValidationError for degenerate
/// observables ("ambiguous projector matching"), non-unitary U, or layout
/// mismatch.
std::optional<Permutation> detect_branching(const Operator& unitary, const Observable& obs,
                                            double tol = kOperatorTol);

/// sum_c P_c rho P_c for a complete set of orthogonal projectors.
DensityState dephase(const DensityState& state, const std::vector<Matrix>& projectors,
                     double tol = kOperatorTol);

/// Measure, rotate the source, measure again: the second premeasurement reads
/// out the rotated observable whose eigenvectors are the columns of
/// rotation^dag.
struct RepeatedMeasurement {
  Operator first;
  Operator second;
  Operator composite;  // second * first
  Matrix rotated_basis;
};

RepeatedMeasurement repeated_measurement(const SystemLayout& layout, std::string_view source,
                                         std::string_view target, const Matrix& rotation);

}  // namespace everettropy
