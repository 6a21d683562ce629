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

#include "everettropy/state.hpp"

#include <algorithm>
#include <cmath>

#include "everettropy/error.hpp"
#include "index_map.hpp"

namespace everettropy {
namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

double real_part_checked(Complex z, const char* what) {
  if (std::abs(z.imag()) > kImagErrorTol) {
    throw NumericalError(std::string(what) + ": imaginary residual " +
                         std::to_string(z.imag()) + " exceeds tolerance");
  }
  return z.real();
}

void validate_cut(const SystemLayout& layout, const std::vector<std::string>& cut,
                  const char* context) {
  if (cut.empty()) {
    throw ValidationError(std::string(context) + ": cut does not partition the layout (empty)");
  }
  const SystemLayout side = layout.select(cut);  // throws on unknown labels
  if (side.size() == layout.size()) {
    throw ValidationError(std::string(context) +
                          ": cut does not partition the layout (covers every subsystem)");
  }
}

/// rho as a matrix over (cut, rest) ordering: row index = cut * rest_dim + rest.
Matrix bipartite_matrix(const DensityState& state, const std::vector<std::string>& cut,
                        std::size_t& cut_dim, std::size_t& rest_dim) {
  const auto split = detail::split_indices(state.layout(),
                                           detail::label_mask(state.layout(), cut));
  cut_dim = split.selected_dim;
  rest_dim = split.other_dim;
  const auto n = as_index(state.dim());
  Matrix out(n, n);
  std::vector<std::size_t> target(state.dim());
  for (std::size_t i = 0; i < state.dim(); ++i) {
    target[i] = split.selected[i] * rest_dim + split.other[i];
  }
  for (std::size_t i = 0; i < state.dim(); ++i) {
    for (std::size_t j = 0; j < state.dim(); ++j) {
      out(as_index(target[i]), as_index(target[j])) = state.matrix()(as_index(i), as_index(j));
    }
  }
  return out;
}

double max_off_diagonal(const Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
    }
  }
  return worst;
}

bool nondegenerate_spectrum(const RealVector& values, double gap) {
  for (Eigen::Index k = 1; k < values.size(); ++k) {
    if (values(k) - values(k - 1) <= gap) return false;
  }
  return true;
}

/// Blocks X_ij = <i|_other rho |j>_other acting on the `row` factor of a
/// (row, other)-ordered matrix, and whether they all commute pairwise.
bool blocks_commute(const Matrix& rho, std::size_t row_dim, std::size_t other_dim,
                    bool row_is_first, double tol) {
  std::vector<Matrix> blocks;
  blocks.reserve(other_dim * other_dim);
  const auto rd = as_index(row_dim);
  for (std::size_t i = 0; i < other_dim; ++i) {
    for (std::size_t j = 0; j < other_dim; ++j) {
      Matrix b(rd, rd);
      for (std::size_t r = 0; r < row_dim; ++r) {
        for (std::size_t c = 0; c < row_dim; ++c) {
          const std::size_t ri = row_is_first ? r * other_dim + i : i * row_dim + r;
          const std::size_t cj = row_is_first ? c * other_dim + j : j * row_dim + c;
          b(as_index(r), as_index(c)) = rho(as_index(ri), as_index(cj));
        }
      }
      blocks.push_back(std::move(b));
    }
  }
  for (std::size_t x = 0; x < blocks.size(); ++x) {
    for (std::size_t y = x + 1; y < blocks.size(); ++y) {
      if (max_abs_diff(blocks[x] * blocks[y], blocks[y] * blocks[x]) > tol) return false;
    }
  }
  return true;
}

}  // namespace

DensityState::DensityState(Operator op, RealVector spectrum, Matrix eigenvectors)
    : op_(std::move(op)), spectrum_(std::move(spectrum)), eigenvectors_(std::move(eigenvectors)) {}

DensityState DensityState::from_operator(const Operator& op, double tol) {
  const Matrix& m = op.matrix();
  const double herm = max_abs_diff(m, m.adjoint());
  if (herm > tol) {
    throw ValidationError("density state: not Hermitian (deviation " +
                          std::to_string(herm) + ")");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
    throw ValidationError("density state: trace " + std::to_string(tr.real()) +
                          " is not 1");
  }
  EigenSystem es = hermitian_eigen(m);
  if (es.values.size() > 0 && es.values.minCoeff() < -kPsdTol) {
    throw ValidationError("density state: negative eigenvalue " +
                          std::to_string(es.values.minCoeff()));
  }
  RealVector spec = es.values.cwiseMax(0.0);
  spec /= spec.sum();
  Matrix herm_part = 0.5 * (m + m.adjoint());
  return DensityState(Operator(op.layout(), std::move(herm_part)), std::move(spec),
                      std::move(es.vectors));
}

DensityState DensityState::pure(const SystemLayout& layout, const Vector& amplitudes,
                                double tol) {
  if (static_cast<std::size_t>(amplitudes.size()) != layout.total_dim()) {
    throw ValidationError("pure state: amplitude vector does not match layout");
  }
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw ValidationError("pure state: amplitudes are not normalized (norm " +
                          std::to_string(norm) + ")");
  }
  const Vector psi = amplitudes / norm;
  return from_operator(Operator(layout, psi * psi.adjoint()), tol);
}

DensityState DensityState::basis_state(const SystemLayout& layout, std::size_t index) {
  if (index >= layout.total_dim()) {
    throw ValidationError("basis state: index out of range");
  }
  Vector psi = Vector::Zero(as_index(layout.total_dim()));
  psi(as_index(index)) = 1.0;
  return pure(layout, psi);
}

DensityState DensityState::maximally_mixed(const SystemLayout& layout) {
  const auto n = as_index(layout.total_dim());
  return from_operator(Operator(layout, Matrix::Identity(n, n) / static_cast<double>(n)));
}

DensityState DensityState::diagonal(const SystemLayout& layout, const RealVector& probs) {
  if (static_cast<std::size_t>(probs.size()) != layout.total_dim()) {
    throw ValidationError("diagonal state: probability vector does not match layout");
  }
  return from_operator(Operator(layout, probs.cast<Complex>().asDiagonal()));
}

Vector DensityState::dominant_vector() const {
  return eigenvectors_.col(eigenvectors_.cols() - 1);
}

Observable::Observable(Operator op, std::vector<double> values,
                       std::vector<Operator> projectors)
    : op_(std::move(op)), values_(std::move(values)), projectors_(std::move(projectors)) {}

Observable::Observable(const Operator& op, double tol)
    : op_(op) {
  if (max_abs_diff(op.matrix(), op.matrix().adjoint()) > tol) {
    throw ValidationError("observable: operator is not Hermitian");
  }
  const EigenSystem es = hermitian_eigen(op.matrix());
  auto levels = group_levels(es.values, kDegeneracyTol);
  std::sort(levels.begin(), levels.end(), [&](const auto& a, const auto& b) {
    return es.values(as_index(a.front())) < es.values(as_index(b.front()));
  });
  const auto n = as_index(op.dim());
  for (const auto& level : levels) {
    Matrix p = Matrix::Zero(n, n);
    double sum = 0.0;
    for (auto k : level) {
      p += es.vectors.col(as_index(k)) * es.vectors.col(as_index(k)).adjoint();
      sum += es.values(as_index(k));
    }
    values_.push_back(sum / static_cast<double>(level.size()));
    projectors_.emplace_back(op.layout(), std::move(p));
  }
}

Observable Observable::from_projectors(const SystemLayout& layout, std::vector<double> values,
                                       const std::vector<Matrix>& projectors, double tol) {
  if (values.size() != projectors.size() || values.empty()) {
    throw ValidationError("observable: need one value per projector");
  }
  const auto n = as_index(layout.total_dim());
  Matrix sum = Matrix::Zero(n, n);
  Matrix op = Matrix::Zero(n, n);
  std::vector<Operator> ops;
  for (std::size_t a = 0; a < projectors.size(); ++a) {
    Operator p(layout, projectors[a]);
    if (!operator_flags(p, tol).projector) {
      throw ValidationError("observable: element " + std::to_string(a) +
                            " is not an orthogonal projector");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (std::abs(values[a] - values[b]) <= kDegeneracyTol) {
        throw ValidationError("observable: repeated eigenvalue");
      }
      if ((projectors[a] * projectors[b]).cwiseAbs().maxCoeff() > tol) {
        throw ValidationError("observable: projectors are not mutually orthogonal");
      }
    }
    sum += projectors[a];
    op += values[a] * projectors[a];
    ops.push_back(std::move(p));
  }
  if (max_abs_diff(sum, Matrix::Identity(n, n)) > tol) {
    throw ValidationError("observable: projectors do not sum to the identity");
  }
  return Observable(Operator(layout, std::move(op)), std::move(values), std::move(ops));
}

bool Observable::nondegenerate() const {
  return std::all_of(projectors_.begin(), projectors_.end(), [](const Operator& p) {
    return std::abs(p.trace().real() - 1.0) < 0.5;
  });
}

QuantumGame::QuantumGame(Observable observable, DensityState state,
                         std::vector<PayoffEntry> payoff)
    : observable_(std::move(observable)), state_(std::move(state)) {
  require_same_layout(observable_.layout(), state_.layout(), "quantum game");
  for (double alpha : observable_.eigenvalues()) {
    auto it = std::find_if(payoff.begin(), payoff.end(), [&](const PayoffEntry& e) {
      return std::abs(e.eigenvalue - alpha) <= kDegeneracyTol;
    });
    if (it == payoff.end()) {
      throw ValidationError("quantum game: payoff missing for eigenvalue " +
                            std::to_string(alpha));
    }
    level_payoffs_.push_back(it->payoff);
  }
}

QuantumGame QuantumGame::with_payoff(Observable observable, DensityState state,
                                     const std::function<double(double)>& payoff) {
  std::vector<PayoffEntry> entries;
  for (double alpha : observable.eigenvalues()) entries.push_back({alpha, payoff(alpha)});
  return QuantumGame(std::move(observable), std::move(state), std::move(entries));
}

double expectation(const DensityState& state, const Operator& hermitian) {
  require_same_layout(state.layout(), hermitian.layout(), "expectation");
  return real_part_checked((state.matrix() * hermitian.matrix()).trace(), "expectation");
}

double expectation(const DensityState& state, const Observable& obs) {
  return expectation(state, obs.op());
}

double game_value(const QuantumGame& game) {
  const auto& projectors = game.observable().projectors();
  Complex total = 0.0;
  for (std::size_t a = 0; a < projectors.size(); ++a) {
    total += game.level_payoffs()[a] *
             (game.state().matrix() * projectors[a].matrix()).trace();
  }
  return real_part_checked(total, "game value");
}

double von_neumann_entropy(const DensityState& state) {
  // Eigenvalues at rounding level would otherwise leave ~1e-14 bits on pure states.
  const RealVector p = state.spectrum().unaryExpr([](double x) { return x < 1e-14 ? 0.0 : x; });
  const double h = shannon_bits(p);
  const double cap = std::log2(static_cast<double>(state.dim()));
  return std::clamp(h, 0.0, cap);
}

DensityState reduced_state(const DensityState& state, const std::vector<std::string>& keep) {
  return DensityState::from_operator(partial_trace(state.op(), keep));
}

Vector SchmidtDecomposition::reconstruct(const SystemLayout& full) const {
  const auto split = detail::split_indices(full, detail::label_mask(full, cut));
  Vector psi = Vector::Zero(as_index(full.total_dim()));
  for (std::size_t i = 0; i < full.total_dim(); ++i) {
    Complex amp = 0.0;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
      amp += coefficients[k] * left(as_index(split.selected[i]), as_index(k)) *
             right(as_index(split.other[i]), as_index(k));
    }
    psi(as_index(i)) = amp;
  }
  return psi;
}

SchmidtDecomposition schmidt_decompose(const DensityState& pure_state,
                                       const std::vector<std::string>& cut) {
  validate_cut(pure_state.layout(), cut, "schmidt_decompose");
  if (von_neumann_entropy(pure_state) > kPureTol) {
    throw ValidationError("schmidt_decompose: state is mixed");
  }
  const SystemLayout& layout = pure_state.layout();
  const auto split = detail::split_indices(layout, detail::label_mask(layout, cut));
  const Vector psi = pure_state.dominant_vector();
  Matrix coeff = Matrix::Zero(as_index(split.selected_dim), as_index(split.other_dim));
  for (std::size_t i = 0; i < layout.total_dim(); ++i) {
    coeff(as_index(split.selected[i]), as_index(split.other[i])) = psi(as_index(i));
  }
  Eigen::JacobiSVD<Matrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  constexpr double kCutoff = 1e-10;
  std::size_t rank = 0;
  while (rank < static_cast<std::size_t>(sv.size()) && sv(as_index(rank)) > kCutoff) ++rank;

  SchmidtDecomposition out;
  out.left_layout = layout.select(cut);
  out.right_layout = layout.remove(cut);
  out.cut = cut;
  out.left = svd.matrixU().leftCols(as_index(rank));
  // coeff = U S V^dag, so psi_{ab} = sum_k s_k U_ak conj(V_bk).
  out.right = svd.matrixV().leftCols(as_index(rank)).conjugate();
  for (std::size_t k = 0; k < rank; ++k) out.coefficients.push_back(sv(as_index(k)));
  return out;
}

std::string to_string(FormVerdict v) {
  switch (v) {
    case FormVerdict::conforms: return "conforms";
    case FormVerdict::violates: return "violates";
    case FormVerdict::indeterminate: return "indeterminate";
  }
  return "unknown";
}

KnowledgeForm knowledge_form_check(const DensityState& state,
                                   const std::vector<std::string>& cut, double tol) {
  validate_cut(state.layout(), cut, "knowledge_form_check");
  std::size_t cut_dim = 0;
  std::size_t rest_dim = 0;
  const Matrix rho = bipartite_matrix(state, cut, cut_dim, rest_dim);
  const std::vector<std::string> rest = state.layout().remove(cut).labels();

  const EigenSystem marg_cut = hermitian_eigen(reduced_state(state, cut).matrix());
  const EigenSystem marg_rest = hermitian_eigen(reduced_state(state, rest).matrix());

  KnowledgeForm out;
  if (nondegenerate_spectrum(marg_cut.values, kDegeneracyTol) &&
      nondegenerate_spectrum(marg_rest.values, kDegeneracyTol)) {
    Matrix basis = Matrix::Zero(rho.rows(), rho.cols());
    for (Eigen::Index a = 0; a < marg_cut.vectors.rows(); ++a) {
      for (Eigen::Index b = 0; b < marg_cut.vectors.cols(); ++b) {
        basis.block(a * as_index(rest_dim), b * as_index(rest_dim), as_index(rest_dim),
                    as_index(rest_dim)) = marg_cut.vectors(a, b) * marg_rest.vectors;
      }
    }
    const bool diagonal = max_off_diagonal(basis.adjoint() * rho * basis) <= tol;
    out.verdict = diagonal ? FormVerdict::conforms : FormVerdict::violates;
    if (diagonal) {
      out.basis_cut = marg_cut.vectors;
      out.basis_rest = marg_rest.vectors;
    }
    return out;
  }

  if (max_off_diagonal(rho) <= tol) {
    out.verdict = FormVerdict::conforms;
    out.basis_cut = Matrix::Identity(as_index(cut_dim), as_index(cut_dim));
    out.basis_rest = Matrix::Identity(as_index(rest_dim), as_index(rest_dim));
    return out;
  }
  const bool classical_cut = blocks_commute(rho, cut_dim, rest_dim, true, tol);
  const bool classical_rest = blocks_commute(rho, rest_dim, cut_dim, false, tol);
  out.verdict = (classical_cut && classical_rest) ? FormVerdict::indeterminate
                                                  : FormVerdict::violates;
  return out;
}

}  // namespace everettropy
