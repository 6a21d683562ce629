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

#include <cstddef>
#include <vector>

#include "everettropy/operator.hpp"

namespace everettropy {

/// A permutation of 0..n-1, stored as the image of each index.
using Permutation = std::vector<std::size_t>;

bool is_bijection(const Permutation& perm);
Permutation inverse(const Permutation& perm);

/// |b> -> |perm[b]> in the computational basis.
Matrix permutation_matrix(const Permutation& perm);

/// |b> -> |(b + k) mod n>.
Matrix shift_matrix(std::size_t n, std::size_t k);

struct EigenSystem {
  RealVector values;
  Matrix vectors;  // column k pairs with values[k]
};

/// Eigen-decomposition of the Hermitian part of `m`, ascending eigenvalues.
EigenSystem hermitian_eigen(const Matrix& m);

/// Same decomposition, columns reordered by the basis index at which each
/// eigenvector has its largest component (ties broken by descending
/// eigenvalue). A matrix that is diagonal in the computational basis keeps
/// its diagonal order.
EigenSystem basis_ordered_eigen(const Matrix& m);

/// Column order that sorts vectors by the basis index of their largest
/// component (stable for ties).
std::vector<std::size_t> leading_index_order(const Matrix& vectors);

/// Groups the indices of `values` into levels whose members lie within `tol`
/// of their neighbours after sorting. Levels are returned in order of their
/// smallest index.
std::vector<std::vector<std::size_t>> group_levels(const RealVector& values,
                                                   double tol);

/// exp(i t G) for Hermitian G.
Matrix unitary_exp(const Matrix& generator, double t);

/// Shannon entropy in bits of a probability vector; 0 log 0 := 0.
double shannon_bits(const RealVector& probs);

/// Projectors onto the columns of an orthonormal basis.
std::vector<Matrix> basis_projectors(const Matrix& basis);

}  // namespace everettropy
