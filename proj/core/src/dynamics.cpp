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

#include "everettropy/dynamics.hpp"

#include <string>

#include "everettropy/error.hpp"

namespace everettropy {
namespace {

void require_unitary(const Operator& u, double tol, const char* context) {
  if (!operator_flags(u, tol).unitary) {
    throw ValidationError(std::string(context) + ": evolution operator is not unitary");
  }
}

Matrix basis_or_identity(const std::optional<Matrix>& basis, std::size_t dim,
                         const char* context) {
  const auto n = static_cast<Eigen::Index>(dim);
  if (!basis) return Matrix::Identity(n, n);
  if (basis->rows() != n || basis->cols() != n) {
    throw ValidationError(std::string(context) + ": basis has wrong dimension");
  }
  if (max_abs_diff(basis->adjoint() * *basis, Matrix::Identity(n, n)) > kOperatorTol) {
    throw ValidationError(std::string(context) + ": basis is not orthonormal");
  }
  return *basis;
}

}  // namespace

EvolutionStep::EvolutionStep(Operator unitary, Picture picture, double t_from, double t_to,
                             double tol)
    : unitary_(std::move(unitary)), picture_(picture), t_from_(t_from), t_to_(t_to) {
  require_unitary(unitary_, tol, "evolution step");
  if (t_to_ == t_from_) throw ValidationError("evolution step: t_to equals t_from");
}

Operator EvolutionStep::apply(const Operator& observable) const {
  if (picture_ != Picture::heisenberg) {
    throw ValidationError("evolution step: observables evolve only in the Heisenberg picture");
  }
  return evolve_heisenberg(observable, unitary_);
}

DensityState EvolutionStep::apply(const DensityState& state) const {
  if (picture_ != Picture::schrodinger) {
    throw ValidationError("evolution step: states evolve only in the Schrodinger picture");
  }
  return evolve_schrodinger(state, unitary_);
}

Operator evolve_heisenberg(const Operator& obs, const Operator& unitary, double tol) {
  require_same_layout(obs.layout(), unitary.layout(), "evolve_heisenberg");
  require_unitary(unitary, tol, "evolve_heisenberg");
  return Operator(obs.layout(), unitary.matrix().adjoint() * obs.matrix() * unitary.matrix());
}

DensityState evolve_schrodinger(const DensityState& state, const Operator& unitary,
                                double tol) {
  require_same_layout(state.layout(), unitary.layout(), "evolve_schrodinger");
  require_unitary(unitary, tol, "evolve_schrodinger");
  return DensityState::from_operator(Operator(
      state.layout(), unitary.matrix() * state.matrix() * unitary.matrix().adjoint()));
}

Operator permutation_unitary(const SystemLayout& layout, std::string_view subsystem,
                             const Permutation& perm, const std::optional<Matrix>& basis) {
  const std::size_t d = layout.dim(subsystem);
  if (perm.size() != d) {
    throw ValidationError("permutation_unitary: permutation length does not match dimension");
  }
  if (!is_bijection(perm)) {
    throw ValidationError("permutation_unitary: permutation is not a bijection");
  }
  const Matrix v = basis_or_identity(basis, d, "permutation_unitary");
  return embed(layout, subsystem, v * permutation_matrix(perm) * v.adjoint());
}

Operator perfect_measurement_unitary(const SystemLayout& layout, std::string_view source,
                                     std::string_view target,
                                     const std::optional<Matrix>& source_basis,
                                     const std::optional<Matrix>& target_basis) {
  const std::size_t n = layout.dim(source);
  if (layout.dim(target) != n) {
    throw ValidationError("perfect_measurement_unitary: source and target dimensions differ");
  }
  if (layout.position(source) == layout.position(target)) {
    throw ValidationError("perfect_measurement_unitary: source and target coincide");
  }
  const Matrix vs = basis_or_identity(source_basis, n, "perfect_measurement_unitary");
  const Matrix vt = basis_or_identity(target_basis, n, "perfect_measurement_unitary");
  Operator u = Operator::zero(layout);
  for (std::size_t a = 0; a < n; ++a) {
    const auto col = static_cast<Eigen::Index>(a);
    const Matrix pa = vs.col(col) * vs.col(col).adjoint();
    const Matrix shift = vt * shift_matrix(n, a) * vt.adjoint();
    u = u + embed(layout, source, pa) * embed(layout, target, shift);
  }
  return u;
}

std::optional<Permutation> detect_branching(const Operator& unitary, const Observable& obs,
                                            double tol) {
  require_same_layout(unitary.layout(), obs.layout(), "detect_branching");
  require_unitary(unitary, tol, "detect_branching");
  if (!obs.nondegenerate()) {
    throw ValidationError("detect_branching: ambiguous projector matching (degenerate observable)");
  }
  const auto& projectors = obs.projectors();
  const Matrix& u = unitary.matrix();
  Permutation perm(projectors.size());
  std::vector<bool> used(projectors.size(), false);
  for (std::size_t a = 0; a < projectors.size(); ++a) {
    const Matrix image = u * projectors[a].matrix() * u.adjoint();
    bool found = false;
    for (std::size_t c = 0; c < projectors.size() && !found; ++c) {
      if (!used[c] && max_abs_diff(image, projectors[c].matrix()) <= tol) {
        perm[a] = c;
        used[c] = true;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return perm;
}

DensityState dephase(const DensityState& state, const std::vector<Matrix>& projectors,
                     double tol) {
  const auto n = static_cast<Eigen::Index>(state.dim());
  if (projectors.empty()) throw ValidationError("dephase: empty projector set");
  Matrix sum = Matrix::Zero(n, n);
  for (std::size_t a = 0; a < projectors.size(); ++a) {
    const Matrix& p = projectors[a];
    if (p.rows() != n || p.cols() != n) {
      throw ValidationError("dephase: projector " + std::to_string(a) + " has wrong dimension");
    }
    if (max_abs_diff(p, p.adjoint()) > tol || max_abs_diff(p * p, p) > tol) {
      throw ValidationError("dephase: element " + std::to_string(a) + " is not a projector");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if ((p * projectors[b]).cwiseAbs().maxCoeff() > tol) {
        throw ValidationError("dephase: projectors are not mutually orthogonal");
      }
    }
    sum += p;
  }
  if (max_abs_diff(sum, Matrix::Identity(n, n)) > tol) {
    throw ValidationError("dephase: projector set is incomplete");
  }
  Matrix out = Matrix::Zero(n, n);
  for (const auto& p : projectors) out += p * state.matrix() * p;
  return DensityState::from_operator(Operator(state.layout(), std::move(out)));
}

RepeatedMeasurement repeated_measurement(const SystemLayout& layout, std::string_view source,
                                         std::string_view target, const Matrix& rotation) {
  const std::size_t n = layout.dim(source);
  const auto en = static_cast<Eigen::Index>(n);
  if (rotation.rows() != en || rotation.cols() != en ||
      max_abs_diff(rotation.adjoint() * rotation, Matrix::Identity(en, en)) > kOperatorTol) {
    throw ValidationError("repeated_measurement: rotation must be a unitary on the source");
  }
  Operator first = perfect_measurement_unitary(layout, source, target);
  Matrix rotated = rotation.adjoint();
  Operator second = perfect_measurement_unitary(layout, source, target, rotated);
  Operator composite = second * first;
  return {std::move(first), std::move(second), std::move(composite), std::move(rotated)};
}

}  // namespace everettropy
