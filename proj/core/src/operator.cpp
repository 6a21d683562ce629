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

#include "everettropy/operator.hpp"

#include <algorithm>
#include <cmath>

#include "everettropy/error.hpp"
#include "index_map.hpp"

namespace everettropy {
namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

}  // namespace

Operator::Operator(SystemLayout layout, Matrix entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw ValidationError("operator: matrix is not square (" +
                          std::to_string(entries_.rows()) + "x" +
                          std::to_string(entries_.cols()) + ")");
  }
  if (static_cast<std::size_t>(entries_.rows()) != layout_.total_dim()) {
    throw ValidationError("operator: matrix dimension " +
                          std::to_string(entries_.rows()) +
                          " does not match layout " + layout_.describe());
  }
}

Operator Operator::identity(const SystemLayout& layout) {
  const auto n = as_index(layout.total_dim());
  return Operator(layout, Matrix::Identity(n, n));
}

Operator Operator::zero(const SystemLayout& layout) {
  const auto n = as_index(layout.total_dim());
  return Operator(layout, Matrix::Zero(n, n));
}

Operator Operator::adjoint() const { return Operator(layout_, entries_.adjoint()); }

Operator Operator::operator*(const Operator& rhs) const {
  require_same_layout(layout_, rhs.layout_, "operator product");
  return Operator(layout_, entries_ * rhs.entries_);
}

Operator Operator::operator+(const Operator& rhs) const {
  require_same_layout(layout_, rhs.layout_, "operator sum");
  return Operator(layout_, entries_ + rhs.entries_);
}

Operator Operator::operator-(const Operator& rhs) const {
  require_same_layout(layout_, rhs.layout_, "operator difference");
  return Operator(layout_, entries_ - rhs.entries_);
}

Operator Operator::scaled(Complex factor) const {
  return Operator(layout_, entries_ * factor);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("max_abs_diff: size mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

void require_same_layout(const SystemLayout& a, const SystemLayout& b,
                         std::string_view context) {
  if (!(a == b)) {
    throw ValidationError(std::string(context) + ": layout mismatch " +
                          a.describe() + " vs " + b.describe());
  }
}

Operator embed(const SystemLayout& layout, std::string_view subsystem,
               const Matrix& local) {
  const std::size_t pos = layout.position(subsystem);
  const auto& subs = layout.subsystems();
  if (static_cast<std::size_t>(local.rows()) != subs[pos].dim ||
      local.rows() != local.cols()) {
    throw ValidationError("embed: local operator does not match dimension of '" +
                          std::string(subsystem) + "'");
  }
  std::size_t left = 1;
  std::size_t right = 1;
  for (std::size_t k = 0; k < pos; ++k) left *= subs[k].dim;
  for (std::size_t k = pos + 1; k < subs.size(); ++k) right *= subs[k].dim;
  Matrix m = kron(Matrix::Identity(as_index(left), as_index(left)),
                  kron(local, Matrix::Identity(as_index(right), as_index(right))));
  return Operator(layout, std::move(m));
}

Operator matrix_unit(const SystemLayout& layout, std::string_view subsystem,
                     std::size_t a, std::size_t b) {
  const std::size_t d = layout.dim(subsystem);
  if (a >= d || b >= d) {
    throw ValidationError("matrix_unit: index out of range for '" +
                          std::string(subsystem) + "' (dim " +
                          std::to_string(d) + ")");
  }
  Matrix local = Matrix::Zero(as_index(d), as_index(d));
  local(as_index(a), as_index(b)) = 1.0;
  return embed(layout, subsystem, local);
}

Operator tensor(const Operator& a, const Operator& b) {
  SystemLayout layout = a.layout().concat(b.layout());
  return Operator(std::move(layout), kron(a.matrix(), b.matrix()));
}

Operator partial_trace(const Operator& op,
                       const std::vector<std::string>& keep) {
  if (keep.empty()) throw ValidationError("partial_trace: empty keep set");
  const SystemLayout kept = op.layout().select(keep);
  const auto split = detail::split_indices(op.layout(),
                                           detail::label_mask(op.layout(), keep));
  // Group full indices by their traced-out part.
  std::vector<std::vector<std::size_t>> groups(split.other_dim);
  for (auto& g : groups) g.reserve(split.selected_dim);
  for (std::size_t i = 0; i < op.dim(); ++i) groups[split.other[i]].push_back(i);

  const auto n = as_index(split.selected_dim);
  Matrix out = Matrix::Zero(n, n);
  const Matrix& m = op.matrix();
  for (const auto& g : groups) {
    for (std::size_t r = 0; r < g.size(); ++r) {
      for (std::size_t c = 0; c < g.size(); ++c) {
        out(as_index(split.selected[g[r]]), as_index(split.selected[g[c]])) +=
            m(as_index(g[r]), as_index(g[c]));
      }
    }
  }
  return Operator(kept, std::move(out));
}

Operator reorder(const Operator& op, const std::vector<std::string>& order) {
  const SystemLayout& from = op.layout();
  if (order.size() != from.size()) {
    throw ValidationError("reorder: order must name every subsystem once");
  }
  std::vector<Subsystem> subs;
  std::vector<std::size_t> source_pos;
  for (const auto& label : order) {
    source_pos.push_back(from.position(label));
    subs.push_back(from.subsystems()[source_pos.back()]);
  }
  SystemLayout to(std::move(subs));  // rejects duplicates

  // Strides of each source subsystem inside the target index.
  std::vector<std::size_t> target_stride(from.size());
  std::size_t stride = 1;
  for (std::size_t k = order.size(); k-- > 0;) {
    target_stride[source_pos[k]] = stride;
    stride *= to.subsystems()[k].dim;
  }
  const auto& fs = from.subsystems();
  std::vector<std::size_t> perm(op.dim());
  std::vector<std::size_t> digits(fs.size(), 0);
  for (std::size_t i = 0; i < op.dim(); ++i) {
    std::size_t t = 0;
    for (std::size_t k = 0; k < fs.size(); ++k) t += digits[k] * target_stride[k];
    perm[i] = t;
    for (std::size_t k = fs.size(); k-- > 0;) {
      if (++digits[k] < fs[k].dim) break;
      digits[k] = 0;
    }
  }
  Matrix out(op.matrix().rows(), op.matrix().cols());
  for (std::size_t i = 0; i < op.dim(); ++i) {
    for (std::size_t j = 0; j < op.dim(); ++j) {
      out(as_index(perm[i]), as_index(perm[j])) = op(i, j);
    }
  }
  return Operator(std::move(to), std::move(out));
}

OperatorFlags operator_flags(const Operator& op, double tol) {
  if (!(tol > 0.0)) throw ValidationError("operator_flags: tolerance must be > 0");
  const Matrix& m = op.matrix();
  const Matrix adj = m.adjoint();
  const auto n = m.rows();
  OperatorFlags f;
  f.hermitian = max_abs_diff(m, adj) <= tol;
  f.unitary = max_abs_diff(adj * m, Matrix::Identity(n, n)) <= tol;
  f.normal = max_abs_diff(m * adj, adj * m) <= tol;
  f.projector = f.hermitian && max_abs_diff(m * m, m) <= tol;
  return f;
}

MatrixUnitExpansion::MatrixUnitExpansion(SystemLayout full, std::string subsystem,
                                         std::vector<Matrix> blocks)
    : full_(std::move(full)),
      rest_(full_.remove({subsystem})),
      subsystem_(std::move(subsystem)),
      dim_(full_.dim(subsystem_)),
      blocks_(std::move(blocks)) {
  if (blocks_.size() != dim_ * dim_) {
    throw ValidationError("matrix-unit expansion: wrong number of blocks");
  }
  for (const auto& b : blocks_) {
    if (static_cast<std::size_t>(b.rows()) != rest_.total_dim() ||
        b.rows() != b.cols()) {
      throw ValidationError("matrix-unit expansion: residual block has wrong size");
    }
  }
}

const Matrix& MatrixUnitExpansion::block(std::size_t a, std::size_t b) const {
  if (a >= dim_ || b >= dim_) {
    throw ValidationError("matrix-unit expansion: index out of range");
  }
  return blocks_[a * dim_ + b];
}

Complex MatrixUnitExpansion::coefficient(std::size_t a, std::size_t b) const {
  if (rest_.total_dim() != 1) {
    throw ValidationError(
        "matrix-unit expansion: scalar coefficient requested on a multipartite "
        "operator; use block()");
  }
  return block(a, b)(0, 0);
}

Operator MatrixUnitExpansion::reconstruct() const {
  const auto split =
      detail::split_indices(full_, detail::label_mask(full_, {subsystem_}));
  const auto n = as_index(full_.total_dim());
  Matrix out(n, n);
  for (std::size_t i = 0; i < full_.total_dim(); ++i) {
    for (std::size_t j = 0; j < full_.total_dim(); ++j) {
      out(as_index(i), as_index(j)) =
          block(split.selected[i], split.selected[j])(as_index(split.other[i]),
                                                      as_index(split.other[j]));
    }
  }
  return Operator(full_, std::move(out));
}

MatrixUnitExpansion coefficients_over_matrix_units(const Operator& op,
                                                   std::string_view subsystem) {
  const SystemLayout& layout = op.layout();
  const std::string label(subsystem);
  const std::size_t d = layout.dim(label);
  const auto split = detail::split_indices(layout, detail::label_mask(layout, {label}));
  const auto r = as_index(split.other_dim);
  std::vector<Matrix> blocks(d * d, Matrix::Zero(r, r));
  for (std::size_t i = 0; i < op.dim(); ++i) {
    for (std::size_t j = 0; j < op.dim(); ++j) {
      blocks[split.selected[i] * d + split.selected[j]](as_index(split.other[i]),
                                                        as_index(split.other[j])) =
          op(i, j);
    }
  }
  return MatrixUnitExpansion(layout, label, std::move(blocks));
}

}  // namespace everettropy
