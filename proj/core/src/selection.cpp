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

#include "everettropy/selection.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "everettropy/dynamics.hpp"
#include "everettropy/error.hpp"
#include "index_map.hpp"

namespace everettropy {
namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

void require_bipartite(const SystemLayout& layout, const char* context) {
  if (layout.size() != 2) {
    throw ValidationError(std::string(context) + ": expected two subsystems, got " +
                          layout.describe());
  }
}

/// Eigenbasis of `after`; inside each degenerate level the vectors are chosen
/// to diagonalize `before` compressed to that level.
Matrix xi_basis(const Matrix& before, const Matrix& after) {
  const EigenSystem es = hermitian_eigen(after);
  const auto levels = group_levels(es.values, kDegeneracyTol);
  Matrix basis(es.vectors.rows(), es.vectors.cols());
  Eigen::Index col = 0;
  for (const auto& level : levels) {
    Matrix span(es.vectors.rows(), as_index(level.size()));
    for (std::size_t k = 0; k < level.size(); ++k) span.col(as_index(k)) = es.vectors.col(as_index(level[k]));
    if (level.size() > 1) {
      const EigenSystem inner = hermitian_eigen(span.adjoint() * before * span);
      span = span * inner.vectors;
    }
    basis.middleCols(col, span.cols()) = span;
    col += span.cols();
  }
  return basis;
}

bool matches_dephasing(const Matrix& before, const Matrix& after, const Matrix& basis,
                       double tol) {
  Matrix dephased = Matrix::Zero(before.rows(), before.cols());
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    const Matrix p = basis.col(c) * basis.col(c).adjoint();
    dephased += p * before * p;
  }
  return max_abs_diff(dephased, after) <= tol;
}

}  // namespace

DensityState knowledge_state(const RealMatrix& p, const SystemLayout& layout) {
  require_bipartite(layout, "knowledge_state");
  const std::size_t da = layout.subsystems()[0].dim;
  const std::size_t db = layout.subsystems()[1].dim;
  if (static_cast<std::size_t>(p.rows()) != da || static_cast<std::size_t>(p.cols()) != db) {
    throw ValidationError("knowledge_state: weight matrix shape does not match layout " +
                          layout.describe());
  }
  if (p.minCoeff() < -1e-12) throw ValidationError("knowledge_state: negative weight");
  if (std::abs(p.sum() - 1.0) > 1e-12) {
    throw ValidationError("knowledge_state: weights sum to " + std::to_string(p.sum()));
  }
  RealVector diag(as_index(da * db));
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t b = 0; b < db; ++b) {
      diag(as_index(a * db + b)) = std::max(p(as_index(a), as_index(b)), 0.0);
    }
  }
  return DensityState::diagonal(layout, diag);
}

SelectionCode perfect_measurement_code(std::size_t dim_a, std::size_t dim_b) {
  SelectionCode code;
  for (std::size_t a = 0; a < dim_a; ++a) {
    Permutation p(dim_b);
    for (std::size_t b = 0; b < dim_b; ++b) p[b] = (a + b) % dim_b;
    code.controlled.push_back(std::move(p));
  }
  return code;
}

Matrix random_misalignment(std::size_t dim, double epsilon, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = as_index(dim);
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(i, j) = Complex(re, im);
    }
  }
  Matrix g = 0.5 * (a + a.adjoint());
  const double norm = hermitian_eigen(g).values.cwiseAbs().maxCoeff();
  if (norm > 0.0) g /= norm;
  return unitary_exp(g, epsilon);
}

Operator selection_unitary(const SystemLayout& layout, const SelectionCode& code,
                           double epsilon, std::uint64_t seed) {
  require_bipartite(layout, "selection_unitary");
  if (!(epsilon >= 0.0)) throw ValidationError("selection_unitary: noise must be >= 0");
  const auto& s1 = layout.subsystems()[0];
  const auto& s2 = layout.subsystems()[1];
  if (code.controlled.size() != s1.dim) {
    throw ValidationError("selection_unitary: code needs one permutation per level of '" +
                          s1.label + "'");
  }
  Operator ideal = Operator::zero(layout);
  for (std::size_t a = 0; a < s1.dim; ++a) {
    if (code.controlled[a].size() != s2.dim || !is_bijection(code.controlled[a])) {
      throw ValidationError("selection_unitary: code[" + std::to_string(a) +
                            "] is not a bijection on '" + s2.label + "'");
    }
    ideal = ideal + matrix_unit(layout, s1.label, a, a) *
                        embed(layout, s2.label, permutation_matrix(code.controlled[a]));
  }
  if (epsilon == 0.0) return ideal;

  std::mt19937_64 rng(seed);
  const Matrix r1 = random_misalignment(s1.dim, epsilon, rng);
  const Matrix r2 = random_misalignment(s2.dim, epsilon, rng);
  const Operator r = embed(layout, s1.label, r1) * embed(layout, s2.label, r2);
  return r * ideal * r.adjoint();
}

SelectionRun run_selection(const DensityState& initial, const Operator& unitary, double tol) {
  require_bipartite(initial.layout(), "run_selection");
  require_same_layout(initial.layout(), unitary.layout(), "run_selection");
  const std::string l1 = initial.layout().subsystems()[0].label;
  const std::string l2 = initial.layout().subsystems()[1].label;
  const KnowledgeForm form = knowledge_form_check(initial, {l1}, tol);
  if (form.verdict != FormVerdict::conforms) {
    throw ValidationError("run_selection: initial state is not of knowledge-bearing form (" +
                          to_string(form.verdict) + ")");
  }
  DensityState final_state = evolve_schrodinger(initial, unitary, tol);

  const DensityState m1_before = reduced_state(initial, {l1});
  const DensityState m2_before = reduced_state(initial, {l2});
  const DensityState m1_after = reduced_state(final_state, {l1});
  const DensityState m2_after = reduced_state(final_state, {l2});

  SelectionRun run{initial, final_state, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, false, false, {}, {}, {}};
  run.s1_before = von_neumann_entropy(m1_before);
  run.s2_before = von_neumann_entropy(m2_before);
  run.s1_after = von_neumann_entropy(m1_after);
  run.s2_after = von_neumann_entropy(m2_after);
  run.global_before = von_neumann_entropy(initial);
  run.global_after = von_neumann_entropy(final_state);
  run.xi_basis1 = xi_basis(m1_before.matrix(), m1_after.matrix());
  run.xi_basis2 = xi_basis(m2_before.matrix(), m2_after.matrix());
  run.matched1 = matches_dephasing(m1_before.matrix(), m1_after.matrix(), run.xi_basis1, tol);
  run.matched2 = matches_dephasing(m2_before.matrix(), m2_after.matrix(), run.xi_basis2, tol);

  const Matrix& ba = *form.basis_cut;
  const Matrix& bb = *form.basis_rest;
  const std::size_t da = static_cast<std::size_t>(ba.cols());
  const std::size_t db = static_cast<std::size_t>(bb.cols());
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t b = 0; b < db; ++b) {
      Vector ab(as_index(da * db));
      for (std::size_t i = 0; i < da; ++i) {
        ab.segment(as_index(i * db), as_index(db)) = ba(as_index(i), as_index(a)) * bb.col(as_index(b));
      }
      const double weight = (ab.adjoint() * initial.matrix() * ab)(0, 0).real();
      if (weight <= 1e-12) continue;
      const Vector branch = unitary.matrix() * ab;
      const SchmidtDecomposition sd =
          schmidt_decompose(DensityState::pure(initial.layout(), branch), {l1});
      run.branches.push_back({a, b, weight, sd.coefficients});
    }
  }
  return run;
}

ReadoutResult measure_results(const SelectionRun& run) {
  const SystemLayout& layout = run.final_state.layout();
  const auto& s2 = layout.subsystems()[1];
  std::string ancilla = "ancilla";
  while (layout.contains(ancilla)) ancilla += "_";
  const SystemLayout anc({{ancilla, s2.dim}});
  const DensityState blank = DensityState::basis_state(anc, 0);
  const DensityState joint =
      DensityState::from_operator(tensor(run.final_state.op(), blank.op()));
  const Operator u = perfect_measurement_unitary(joint.layout(), s2.label, ancilla);
  const DensityState after = evolve_schrodinger(joint, u);
  ReadoutResult out;
  out.s1 = von_neumann_entropy(reduced_state(after, {layout.subsystems()[0].label}));
  out.s2 = von_neumann_entropy(reduced_state(after, {s2.label}));
  out.ancilla = von_neumann_entropy(reduced_state(after, {ancilla}));
  return out;
}

DensityState flatten_to_bipartite(const DensityState& state, std::string_view keep,
                                  std::string_view rest_label) {
  const SystemLayout& layout = state.layout();
  const std::string k(keep);
  const std::size_t keep_dim = layout.dim(k);
  if (layout.size() < 2) {
    throw ValidationError("flatten_to_bipartite: need at least two subsystems");
  }
  std::vector<std::string> order{k};
  for (const auto& l : layout.labels()) {
    if (l != k) order.push_back(l);
  }
  const Operator reordered = reorder(state.op(), order);
  const SystemLayout flat({{k, keep_dim},
                           {std::string(rest_label), layout.total_dim() / keep_dim}});
  return DensityState::from_operator(Operator(flat, reordered.matrix()));
}

RealMatrix random_knowledge_weights(std::size_t dim_a, std::size_t dim_b,
                                    std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  RealMatrix p(as_index(dim_a), as_index(dim_b));
  for (Eigen::Index a = 0; a < p.rows(); ++a) {
    for (Eigen::Index b = 0; b < p.cols(); ++b) p(a, b) = expo(rng);
  }
  return p / p.sum();
}

SweepRecord run_seeded_selection(std::size_t dim_a, std::size_t dim_b, double epsilon,
                                 std::uint64_t seed) {
  const SystemLayout layout({{"s1", dim_a}, {"s2", dim_b}});
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  RealMatrix p = random_knowledge_weights(dim_a, dim_b, rng);
  p /= p.sum();
  const DensityState initial = knowledge_state(p, layout);
  const Operator u =
      selection_unitary(layout, perfect_measurement_code(dim_a, dim_b), epsilon, seed);
  const SelectionRun run = run_selection(initial, u);
  return {seed,         run.s1_before,  run.s1_after, run.s2_before,
          run.s2_after, run.global_after, run.matched1, run.matched2};
}

std::vector<SweepRecord> run_selection_sweep(const SweepConfig& config) {
  if (config.dim_a < 1 || config.dim_b < 1) {
    throw ValidationError("selection sweep: dimensions must be positive");
  }
  std::vector<SweepRecord> records(config.seeds);
  const std::size_t workers = std::max<std::size_t>(1, std::min(config.parallel, config.seeds));
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < config.seeds; i += workers) {
      records[i] = run_seeded_selection(config.dim_a, config.dim_b, config.epsilon,
                                        config.first_seed + i);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return records;
}

}  // namespace everettropy
