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
#include <utility>
#include <vector>

#include "everettropy/operator.hpp"
#include "everettropy/state.hpp"

namespace everettropy {

enum class CopyMode {
  /// Any normal operator (complex combination of one projector family).
  normal,
  /// Only Hermitian operators (real combinations).
  hermitian_only,
};

struct CopyVerdict {
  bool copyable = false;
  /// Some eigenvalue has multiplicity above one.
  bool degenerate = false;
  /// Orthonormal eigenvectors as columns, ordered by leading basis index.
  std::optional<Matrix> eigenbasis;
  /// Eigenvalue of each eigenbasis column.
  std::vector<Complex> eigenvalues;
  /// Columns of `eigenbasis` grouped by shared eigenvalue.
  std::vector<std::vector<std::size_t>> levels;
  /// Matrix entry (a, b) carrying the largest violation of the criterion.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// An operator on a single subsystem can be copied iff it is normal (within
/// `tol`), i.e. a linear combination of one orthogonal projector family.
/// Throws ValidationError if `b` spans more than one subsystem.
CopyVerdict classify_copyable(const Operator& b, double tol = kOperatorTol,
                              CopyMode mode = CopyMode::normal);

struct CopyUnitary {
  Operator unitary;
  std::size_t levels = 0;
  /// The operator has a single eigenvalue: U = 1 (x) u factorizes and no
  /// information is copied.
  bool factorizes = false;
};

/// U = sum_c P_c (x) X^c on [B's subsystem, record], where P_c projects onto
/// the c-th eigenspace of B and X shifts the record's basis by one. Inside a
/// degenerate eigenspace the identity permutation is used. Throws
/// ValidationError if B is not copyable or the record has fewer levels than B
/// has distinct eigenvalues.
CopyUnitary build_copy_unitary(const Operator& b, const Subsystem& record,
                               double tol = kOperatorTol);

struct CopyCheck {
  /// U^dag (B (x) 1) U = B (x) 1.
  bool invariant = false;
  /// U = U_B (x) U_rest (operator-Schmidt rank one).
  bool factorizes = false;
};

CopyCheck verify_copy(const Operator& u, const Operator& b, double tol = kOperatorTol);

struct CloneReport {
  /// U(psi (x) |0>) equals psi (x) psi.
  bool exact = false;
  /// <psi| rho_record |psi>.
  double marginal_fidelity = 0.0;
};

/// Feeds each probe into the first subsystem of U's two-subsystem layout with
/// the second (record) subsystem blank. Throws ValidationError for mixed
/// probes or mismatched dimensions.
std::vector<CloneReport> cloning_demo(const Operator& u, const std::vector<DensityState>& probes,
                                      double tol = kOperatorTol);

}  // namespace everettropy
