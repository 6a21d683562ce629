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

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "everettropy/layout.hpp"
#include "everettropy/tolerance.hpp"

namespace everettropy {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Dense complex operator on the Hilbert space described by a SystemLayout.
/// Values are immutable once built; arithmetic returns new operators.
class Operator {
 public:
  /// Throws ValidationError unless `entries` is square with side
  /// layout.total_dim().
  Operator(SystemLayout layout, Matrix entries);

  static Operator identity(const SystemLayout& layout);
  static Operator zero(const SystemLayout& layout);

  const SystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return entries_; }
  std::size_t dim() const { return layout_.total_dim(); }
  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row),
                    static_cast<Eigen::Index>(col));
  }

  Operator adjoint() const;
  Complex trace() const { return entries_.trace(); }

  Operator operator*(const Operator& rhs) const;
  Operator operator+(const Operator& rhs) const;
  Operator operator-(const Operator& rhs) const;
  Operator scaled(Complex factor) const;

 private:
  SystemLayout layout_;
  Matrix entries_;
};

/// Largest entrywise modulus of a - b. Sizes must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Throws ValidationError if the two layouts differ.
void require_same_layout(const SystemLayout& a, const SystemLayout& b,
                         std::string_view context);

/// `local` acting on `subsystem`, tensored with the identity elsewhere.
Operator embed(const SystemLayout& layout, std::string_view subsystem,
               const Matrix& local);

/// Matrix unit S_ab = |a><b| on `subsystem` (identity elsewhere). Satisfies
/// S_ab S_cd = delta_bc S_ad.
Operator matrix_unit(const SystemLayout& layout, std::string_view subsystem,
                     std::size_t a, std::size_t b);

/// Kronecker product with concatenated layout. Labels must be disjoint.
Operator tensor(const Operator& a, const Operator& b);

/// Traces out every subsystem not named in `keep`. The result lives on the
/// kept subsystems in their original layout order.
Operator partial_trace(const Operator& op, const std::vector<std::string>& keep);

/// Reorders the tensor factors of `op` to follow `order`, which must be a
/// permutation of the layout's labels.
Operator reorder(const Operator& op, const std::vector<std::string>& order);

struct OperatorFlags {
  bool hermitian = false;
  bool unitary = false;
  bool projector = false;
  bool normal = false;
};

/// Each flag holds iff its defining identity is satisfied entrywise within
/// `tol` (unitary: U^dag U = 1; projector: hermitian and P^2 = P; normal:
/// B B^dag = B^dag B). Throws ValidationError for tol <= 0.
OperatorFlags operator_flags(const Operator& op, double tol = kOperatorTol);

/// Expansion op = sum_ab S_ab (x) R_ab over the matrix units of one
/// subsystem, where the residual operators R_ab act on the remaining
/// subsystems. On a single-subsystem operator the residuals are 1x1 and
/// `coefficient(a, b)` is the usual beta_ab.
class MatrixUnitExpansion {
 public:
  MatrixUnitExpansion(SystemLayout full, std::string subsystem,
                      std::vector<Matrix> blocks);

  const std::string& subsystem() const { return subsystem_; }
  std::size_t dim() const { return dim_; }
  const SystemLayout& rest() const { return rest_; }
  const Matrix& block(std::size_t a, std::size_t b) const;
  /// Scalar coefficient; requires the remaining space to be one-dimensional.
  Complex coefficient(std::size_t a, std::size_t b) const;
  Operator reconstruct() const;

 private:
  SystemLayout full_;
  SystemLayout rest_;
  std::string subsystem_;
  std::size_t dim_;
  std::vector<Matrix> blocks_;
};

MatrixUnitExpansion coefficients_over_matrix_units(const Operator& op,
                                                   std::string_view subsystem);

}  // namespace everettropy
