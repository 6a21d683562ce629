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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "everettropy/operator.hpp"
#include "everettropy/spectral.hpp"
#include "everettropy/tolerance.hpp"

namespace everettropy {

/// Positive semidefinite, unit-trace operator. The spectrum is computed once
/// at construction: eigenvalues in [-kPsdTol, 0) are clipped to zero and the
/// spectrum renormalized; anything more negative is rejected.
class DensityState {
 public:
  /// Throws ValidationError if `op` is not Hermitian or not unit trace within
  /// `tol`, or has an eigenvalue below -kPsdTol.
  static DensityState from_operator(const Operator& op, double tol = kOperatorTol);
  /// |psi><psi| for a normalized amplitude vector (normalization within tol).
  static DensityState pure(const SystemLayout& layout, const Vector& amplitudes,
                           double tol = kOperatorTol);
  static DensityState basis_state(const SystemLayout& layout, std::size_t index);
  static DensityState maximally_mixed(const SystemLayout& layout);
  /// Diagonal state with the given probabilities in the computational basis.
  static DensityState diagonal(const SystemLayout& layout, const RealVector& probs);

  const Operator& op() const { return op_; }
  const SystemLayout& layout() const { return op_.layout(); }
  const Matrix& matrix() const { return op_.matrix(); }
  std::size_t dim() const { return op_.dim(); }

  /// Clipped, renormalized eigenvalues in ascending order.
  const RealVector& spectrum() const { return spectrum_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

  /// Eigenvector of the largest eigenvalue; the state vector of a pure state.
  Vector dominant_vector() const;

 private:
  DensityState(Operator op, RealVector spectrum, Matrix eigenvectors);

  Operator op_;
  RealVector spectrum_;
  Matrix eigenvectors_;
};

/// Hermitian operator together with its spectral decomposition A = sum_a
/// alpha_a P_a over distinct eigenvalues.
class Observable {
 public:
  /// Eigenvalues closer than kDegeneracyTol share a projector. Levels are
  /// ordered by ascending eigenvalue. Throws ValidationError if `op` is not
  /// Hermitian within `tol`.
  explicit Observable(const Operator& op, double tol = kOperatorTol);

  /// Builds sum_a values[a] projectors[a], keeping the given order. The
  /// projectors must be orthogonal, complete, and the values distinct.
  static Observable from_projectors(const SystemLayout& layout,
                                    std::vector<double> values,
                                    const std::vector<Matrix>& projectors,
                                    double tol = kOperatorTol);

  const Operator& op() const { return op_; }
  const SystemLayout& layout() const { return op_.layout(); }
  const std::vector<double>& eigenvalues() const { return values_; }
  const std::vector<Operator>& projectors() const { return projectors_; }
  std::size_t levels() const { return values_.size(); }
  /// True iff every projector has rank one.
  bool nondegenerate() const;

 private:
  Observable(Operator op, std::vector<double> values, std::vector<Operator> projectors);

  Operator op_;
  std::vector<double> values_;
  std::vector<Operator> projectors_;
};

struct PayoffEntry {
  double eigenvalue;
  double payoff;
};

/// Observable, relative state, and a payoff for every distinct eigenvalue.
class QuantumGame {
 public:
  /// Throws ValidationError if the layouts differ or an eigenvalue of the
  /// observable has no payoff entry (matched within kDegeneracyTol).
  QuantumGame(Observable observable, DensityState state,
              std::vector<PayoffEntry> payoff);
  /// Payoff given as a function of the eigenvalue.
  static QuantumGame with_payoff(Observable observable, DensityState state,
                                 const std::function<double(double)>& payoff);

  const Observable& observable() const { return observable_; }
  const DensityState& state() const { return state_; }
  /// Payoff per level of observable(), in level order.
  const std::vector<double>& level_payoffs() const { return level_payoffs_; }

 private:
  Observable observable_;
  DensityState state_;
  std::vector<double> level_payoffs_;
};

/// Born-rule expectation tr(rho A). Throws NumericalError if the imaginary
/// residual exceeds kImagErrorTol.
double expectation(const DensityState& state, const Observable& obs);
double expectation(const DensityState& state, const Operator& hermitian);

/// sum_a payoff(alpha_a) tr(rho P_a).
double game_value(const QuantumGame& game);

/// -tr(rho log2 rho) in bits, clamped to [0, log2 N].
double von_neumann_entropy(const DensityState& state);

DensityState reduced_state(const DensityState& state,
                           const std::vector<std::string>& keep);

struct SchmidtDecomposition {
  SystemLayout left_layout;
  SystemLayout right_layout;
  std::vector<std::string> cut;  // labels on the left side
  std::vector<double> coefficients;  // descending, strictly positive
  Matrix left;   // column k is the k-th left Schmidt vector
  Matrix right;  // column k is the k-th right Schmidt vector

  /// State vector sum_k lambda_k |l_k>|r_k> in the original layout ordering.
  Vector reconstruct(const SystemLayout& full) const;
};

/// Schmidt decomposition of a pure state across `cut` (left side) vs. the
/// remaining subsystems. Throws ValidationError for mixed states (entropy
/// above kPureTol) or a cut that is empty or covers the whole layout.
SchmidtDecomposition schmidt_decompose(const DensityState& pure_state,
                                       const std::vector<std::string>& cut);

enum class FormVerdict { conforms, violates, indeterminate };

std::string to_string(FormVerdict v);

struct KnowledgeForm {
  FormVerdict verdict = FormVerdict::indeterminate;
  /// Product basis in which the state is diagonal, when one was identified.
  std::optional<Matrix> basis_cut;
  std::optional<Matrix> basis_rest;
};

/// Tests whether the state is a mixture sum_ab p_ab |a><a| (x) |b><b| for
/// orthonormal bases on either side of `cut`.
///
/// With nondegenerate marginals the only candidate bases are the marginal
/// eigenbases, and the test is decisive. With a degenerate marginal the state
/// conforms if it is diagonal in the computational product basis; otherwise
/// it violates if the block-commutation condition for classical correlations
/// fails, and is indeterminate if that condition holds.
KnowledgeForm knowledge_form_check(const DensityState& state,
                                   const std::vector<std::string>& cut,
                                   double tol = kOperatorTol);

}  // namespace everettropy
