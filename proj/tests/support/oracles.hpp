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

// Independent reference computations for the test suites. Nothing here calls
// into the library's linear-algebra helpers; each routine is written from the
// textbook definition so that it can serve as an oracle.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace everettropy::testing {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// --- random inputs -----------------------------------------------------------

Matrix ginibre(std::size_t n, std::mt19937_64& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
Matrix haar_unitary(std::size_t n, std::mt19937_64& rng);
Matrix random_hermitian(std::size_t n, std::mt19937_64& rng);
/// Full-rank density matrix G G^dag / tr.
Matrix random_density(std::size_t n, std::mt19937_64& rng);
/// Density matrix of rank `rank`.
Matrix random_density_rank(std::size_t n, std::size_t rank, std::mt19937_64& rng);
Vector random_pure(std::size_t n, std::mt19937_64& rng);
/// Uniform draw from the probability simplex.
RealVector random_distribution(std::size_t n, std::mt19937_64& rng);
/// Normal matrix V diag(lambda) V^dag with complex eigenvalues.
Matrix random_normal(std::size_t n, std::mt19937_64& rng);

// --- reference linear algebra --------------------------------------------

/// Kronecker product by explicit index arithmetic.
Matrix naive_kron(const Matrix& a, const Matrix& b);

/// Partial trace by looping over multi-indices; keep[k] says whether factor
/// k survives. Factor 0 is the most significant digit.
Matrix naive_partial_trace(const Matrix& m, const std::vector<std::size_t>& dims,
                           const std::vector<bool>& keep);

/// -sum p log2 p from eigenvalues obtained with a general complex eigensolver.
double entropy_oracle(const Matrix& rho);

/// -sum p log2 p over a probability vector.
double shannon_oracle(const std::vector<double>& p);

/// Mutual information of a joint distribution p(a, b) given as rows.
double mutual_information_oracle(const std::vector<std::vector<double>>& joint);

// --- copy search -------------------------------------------------------------

/// Operator-Schmidt rank test on an n*n x n*n matrix acting on [system, record]
/// with both factors of dimension n (resp. n and r): true iff U = A (x) B.
bool factorizes(const Matrix& u, std::size_t n_system, std::size_t n_record);

struct CopySearchResult {
  bool found = false;
  std::size_t candidates_tried = 0;
};

/// Brute-force search for a unitary U on [system, record] (record of the same
/// dimension) that leaves B (x) 1 invariant and does not factorize. The
/// candidate family covers shift-controlled unitaries built from eigenspace
/// projectors of B, of its Hermitian and anti-Hermitian parts, all
/// computational-basis controlled shifts, and random unitaries.
CopySearchResult copy_search(const Matrix& b, std::uint64_t seed, std::size_t random_candidates = 8);

}  // namespace everettropy::testing
