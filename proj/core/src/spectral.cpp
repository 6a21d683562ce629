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

#include "everettropy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "everettropy/error.hpp"

namespace everettropy {
namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

std::size_t leading_index(const Eigen::Ref<const Vector>& v) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs + 1e-12) {
      best_abs = a;
      best = static_cast<std::size_t>(i);
    }
  }
  return best;
}

}  // namespace

bool is_bijection(const Permutation& perm) {
  std::vector<bool> hit(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || hit[p]) return false;
    hit[p] = true;
  }
  return true;
}

Permutation inverse(const Permutation& perm) {
  if (!is_bijection(perm)) throw ValidationError("permutation is not a bijection");
  Permutation inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

Matrix permutation_matrix(const Permutation& perm) {
  if (!is_bijection(perm)) throw ValidationError("permutation is not a bijection");
  const auto n = as_index(perm.size());
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t b = 0; b < perm.size(); ++b) m(as_index(perm[b]), as_index(b)) = 1.0;
  return m;
}

Matrix shift_matrix(std::size_t n, std::size_t k) {
  Permutation p(n);
  for (std::size_t b = 0; b < n; ++b) p[b] = (b + k) % n;
  return permutation_matrix(p);
}

EigenSystem hermitian_eigen(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

EigenSystem basis_ordered_eigen(const Matrix& m) {
  EigenSystem es = hermitian_eigen(m);
  const auto n = static_cast<std::size_t>(es.values.size());
  std::vector<std::size_t> lead(n);
  for (std::size_t k = 0; k < n; ++k) lead[k] = leading_index(es.vectors.col(as_index(k)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (lead[a] != lead[b]) return lead[a] < lead[b];
    return es.values(as_index(a)) > es.values(as_index(b));
  });
  EigenSystem out{RealVector(as_index(n)), Matrix(es.vectors.rows(), as_index(n))};
  for (std::size_t k = 0; k < n; ++k) {
    out.values(as_index(k)) = es.values(as_index(order[k]));
    out.vectors.col(as_index(k)) = es.vectors.col(as_index(order[k]));
  }
  return out;
}

std::vector<std::size_t> leading_index_order(const Matrix& vectors) {
  const auto n = static_cast<std::size_t>(vectors.cols());
  std::vector<std::size_t> lead(n);
  for (std::size_t k = 0; k < n; ++k) lead[k] = leading_index(vectors.col(as_index(k)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lead[a] < lead[b]; });
  return order;
}

std::vector<std::vector<std::size_t>> group_levels(const RealVector& values,
                                                   double tol) {
  const auto n = static_cast<std::size_t>(values.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values(as_index(a)) < values(as_index(b));
  });
  std::vector<std::vector<std::size_t>> levels;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0 || values(as_index(order[k])) - values(as_index(order[k - 1])) > tol) {
      levels.emplace_back();
    }
    levels.back().push_back(order[k]);
  }
  for (auto& l : levels) std::sort(l.begin(), l.end());
  std::sort(levels.begin(), levels.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return levels;
}

Matrix unitary_exp(const Matrix& generator, double t) {
  const EigenSystem es = hermitian_eigen(generator);
  Vector phases(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    phases(k) = std::polar(1.0, t * es.values(k));
  }
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

double shannon_bits(const RealVector& probs) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < probs.size(); ++k) {
    const double p = probs(k);
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

std::vector<Matrix> basis_projectors(const Matrix& basis) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(basis.cols()));
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    out.push_back(basis.col(k) * basis.col(k).adjoint());
  }
  return out;
}

}  // namespace everettropy
