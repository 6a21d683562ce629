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

#include "everettropy/copyability.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "everettropy/error.hpp"
#include "everettropy/spectral.hpp"
#include "index_map.hpp"

namespace everettropy {
namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

std::pair<std::size_t, std::size_t> argmax_abs(const Matrix& m) {
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  m.cwiseAbs().maxCoeff(&r, &c);
  return {static_cast<std::size_t>(r), static_cast<std::size_t>(c)};
}

void require_single_subsystem(const Operator& b, const char* context) {
  if (b.layout().size() != 1) {
    throw ValidationError(std::string(context) +
                          ": operator must act on exactly one subsystem, got " +
                          b.layout().describe());
  }
}

}  // namespace

CopyVerdict classify_copyable(const Operator& b, double tol, CopyMode mode) {
  require_single_subsystem(b, "classify_copyable");
  const Matrix& m = b.matrix();
  const Matrix adj = m.adjoint();
  CopyVerdict v;

  const Matrix commutator = m * adj - adj * m;
  if (commutator.cwiseAbs().maxCoeff() > tol) {
    v.witness = argmax_abs(commutator);
    return v;
  }
  if (mode == CopyMode::hermitian_only && max_abs_diff(m, adj) > tol) {
    v.witness = argmax_abs(m - adj);
    return v;
  }

  // A normal matrix has a diagonal Schur form; its Schur vectors are an
  // orthonormal eigenbasis.
  Eigen::ComplexSchur<Matrix> schur(m);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("classify_copyable: Schur decomposition did not converge");
  }
  const Matrix& q = schur.matrixU();
  const Matrix& t = schur.matrixT();
  const auto order = leading_index_order(q);
  Matrix basis(q.rows(), q.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    basis.col(as_index(k)) = q.col(as_index(order[k]));
    v.eigenvalues.push_back(t(as_index(order[k]), as_index(order[k])));
  }
  for (std::size_t k = 0; k < v.eigenvalues.size(); ++k) {
    bool placed = false;
    for (auto& level : v.levels) {
      if (std::abs(v.eigenvalues[level.front()] - v.eigenvalues[k]) <= kDegeneracyTol) {
        level.push_back(k);
        placed = true;
        break;
      }
    }
    if (!placed) v.levels.push_back({k});
  }
  v.copyable = true;
  v.degenerate = v.levels.size() < v.eigenvalues.size();
  v.eigenbasis = std::move(basis);
  return v;
}

CopyUnitary build_copy_unitary(const Operator& b, const Subsystem& record, double tol) {
  const CopyVerdict verdict = classify_copyable(b, tol);
  if (!verdict.copyable) {
    throw ValidationError("build_copy_unitary: operator is not copyable (not normal)");
  }
  if (record.dim < verdict.levels.size()) {
    throw ValidationError("build_copy_unitary: record '" + record.label + "' has " +
                          std::to_string(record.dim) + " levels but the operator has " +
                          std::to_string(verdict.levels.size()) + " distinct eigenvalues");
  }
  const SystemLayout layout = b.layout().concat(SystemLayout({record}));
  const std::string& source = b.layout().subsystems().front().label;
  const auto n = as_index(b.dim());
  Operator u = Operator::zero(layout);
  for (std::size_t c = 0; c < verdict.levels.size(); ++c) {
    Matrix p = Matrix::Zero(n, n);
    for (auto k : verdict.levels[c]) {
      p += verdict.eigenbasis->col(as_index(k)) * verdict.eigenbasis->col(as_index(k)).adjoint();
    }
    u = u + embed(layout, source, p) * embed(layout, record.label, shift_matrix(record.dim, c));
  }
  return {std::move(u), verdict.levels.size(), verdict.levels.size() == 1};
}

CopyCheck verify_copy(const Operator& u, const Operator& b, double tol) {
  require_single_subsystem(b, "verify_copy");
  const Subsystem& sub = b.layout().subsystems().front();
  const SystemLayout& layout = u.layout();
  if (!layout.contains(sub.label) || layout.dim(sub.label) != sub.dim || layout.size() < 2) {
    throw ValidationError("verify_copy: layout mismatch between " + layout.describe() +
                          " and " + b.layout().describe());
  }
  if (!operator_flags(u, tol).unitary) {
    throw ValidationError("verify_copy: U is not unitary");
  }
  CopyCheck out;
  const Matrix bf = embed(layout, sub.label, b.matrix()).matrix();
  out.invariant = max_abs_diff(u.matrix().adjoint() * bf * u.matrix(), bf) <= tol;

  // Operator-Schmidt rank across (B's subsystem | rest): rearrange U into a
  // matrix whose rank is one iff U factorizes.
  const auto split = detail::split_indices(layout, detail::label_mask(layout, {sub.label}));
  const std::size_t da = split.selected_dim;
  const std::size_t dr = split.other_dim;
  Matrix r = Matrix::Zero(as_index(da * da), as_index(dr * dr));
  for (std::size_t i = 0; i < u.dim(); ++i) {
    for (std::size_t j = 0; j < u.dim(); ++j) {
      r(as_index(split.selected[i] * da + split.selected[j]),
        as_index(split.other[i] * dr + split.other[j])) = u(i, j);
    }
  }
  Eigen::JacobiSVD<Matrix> svd(r);
  const RealVector& s = svd.singularValues();
  out.factorizes = s.size() < 2 || s(1) <= tol * s(0);
  return out;
}

std::vector<CloneReport> cloning_demo(const Operator& u, const std::vector<DensityState>& probes,
                                      double tol) {
  const SystemLayout& layout = u.layout();
  if (layout.size() != 2) {
    throw ValidationError("cloning_demo: U must act on [source, record]");
  }
  const std::size_t d = layout.subsystems()[0].dim;
  if (layout.subsystems()[1].dim != d) {
    throw ValidationError("cloning_demo: source and record dimensions differ");
  }
  if (!operator_flags(u, tol).unitary) throw ValidationError("cloning_demo: U is not unitary");
  const std::string& record = layout.subsystems()[1].label;

  std::vector<CloneReport> out;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const DensityState& probe = probes[k];
    if (probe.dim() != d) {
      throw ValidationError("cloning_demo: probe " + std::to_string(k) + " has wrong dimension");
    }
    if (von_neumann_entropy(probe) > kPureTol) {
      throw ValidationError("cloning_demo: probe " + std::to_string(k) + " is not pure");
    }
    const Vector psi = probe.dominant_vector();
    Vector blank = Vector::Zero(as_index(d));
    blank(0) = 1.0;
    Vector input(as_index(d * d));
    Vector target(as_index(d * d));
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        input(as_index(a * d + b)) = psi(as_index(a)) * blank(as_index(b));
        target(as_index(a * d + b)) = psi(as_index(a)) * psi(as_index(b));
      }
    }
    const Vector output = u.matrix() * input;
    CloneReport report;
    report.exact = max_abs_diff(output * output.adjoint(), target * target.adjoint()) <= tol;
    const Operator joint(layout, output * output.adjoint());
    const Matrix rec = partial_trace(joint, {record}).matrix();
    report.marginal_fidelity = (psi.adjoint() * rec * psi)(0, 0).real();
    out.push_back(report);
  }
  return out;
}

}  // namespace everettropy
