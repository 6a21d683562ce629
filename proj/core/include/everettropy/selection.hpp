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

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "everettropy/operator.hpp"
#include "everettropy/spectral.hpp"
#include "everettropy/state.hpp"

namespace everettropy {

/// Diagonal product-basis state sum_ab p_ab |a><a| (x) |b><b| on a
/// two-subsystem layout. Throws ValidationError if p has the wrong shape, a
/// negative entry, or does not sum to 1 within 1e-12.
DensityState knowledge_state(const RealMatrix& p, const SystemLayout& layout);

/// Classical selection step: for every basis value a of the first subsystem,
/// a permutation applied to the second subsystem's basis.
struct SelectionCode {
  std::vector<Permutation> controlled;
};

/// Pi_a = shift by a (mod dim_b): the perfect-measurement comparison.
SelectionCode perfect_measurement_code(std::size_t dim_a, std::size_t dim_b);

/// exp(i epsilon G) with G a random Hermitian matrix of unit spectral norm.
Matrix random_misalignment(std::size_t dim, double epsilon, std::mt19937_64& rng);

/// (R1 (x) R2) U_ideal (R1 (x) R2)^dag, where U_ideal = sum_a |a><a| (x) Pi_a
/// and R1, R2 are seeded random misalignments of strength epsilon. For
/// epsilon == 0 the result is U_ideal exactly. Throws ValidationError for a
/// negative epsilon or a code that does not fit the layout.
Operator selection_unitary(const SystemLayout& layout, const SelectionCode& code,
                           double epsilon, std::uint64_t seed);

struct BranchSchmidt {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;
  std::vector<double> coefficients;
};

struct SelectionRun {
  DensityState initial;
  DensityState final_state;
  double s1_before = 0.0;
  double s1_after = 0.0;
  double s2_before = 0.0;
  double s2_after = 0.0;
  double global_before = 0.0;
  double global_after = 0.0;
  /// rho_i(t2) equals the dephasing of rho_i(t1) in rho_i(t2)'s eigenbasis.
  bool matched1 = false;
  bool matched2 = false;
  Matrix xi_basis1;
  Matrix xi_basis2;
  /// Schmidt coefficients of every occupied branch U|a>|b>.
  std::vector<BranchSchmidt> branches;

  double delta1() const { return s1_after - s1_before; }
  double delta2() const { return s2_after - s2_before; }
  bool dephasing_form_matched() const { return matched1 && matched2; }
};

/// Evolves a knowledge-bearing state by U and records marginal entropies
/// before and after. Throws ValidationError if the layout is not bipartite,
/// the initial state does not conform to the product-diagonal form, U is not
/// unitary, or the layouts differ.
SelectionRun run_selection(const DensityState& initial, const Operator& unitary,
                           double tol = kOperatorTol);

struct ReadoutResult {
  double s1 = 0.0;
  double s2 = 0.0;
  double ancilla = 0.0;
};

/// Reads the second subsystem out onto a blank ancilla with a perfect
/// measurement in the computational basis.
ReadoutResult measure_results(const SelectionRun& run);

/// Regroups a multipartite state into [keep, rest] with every other
/// subsystem merged into one factor labeled `rest_label`.
DensityState flatten_to_bipartite(const DensityState& state, std::string_view keep,
                                  std::string_view rest_label = "rest");

struct SweepConfig {
  std::size_t dim_a = 2;
  std::size_t dim_b = 2;
  double epsilon = 0.0;
  std::size_t seeds = 1;
  std::uint64_t first_seed = 0;
  std::size_t parallel = 1;
};

struct SweepRecord {
  std::uint64_t seed = 0;
  double s1_before = 0.0;
  double s1_after = 0.0;
  double s2_before = 0.0;
  double s2_after = 0.0;
  double global = 0.0;
  bool matched1 = false;
  bool matched2 = false;
};

/// Random Dirichlet(1) weights p_ab drawn from `rng`.
RealMatrix random_knowledge_weights(std::size_t dim_a, std::size_t dim_b,
                                    std::mt19937_64& rng);

/// One seeded run per seed in [first_seed, first_seed + seeds): random
/// knowledge weights, perfect-measurement code with misalignment epsilon.
/// Records come back in seed order regardless of `parallel`.
std::vector<SweepRecord> run_selection_sweep(const SweepConfig& config);

SweepRecord run_seeded_selection(std::size_t dim_a, std::size_t dim_b, double epsilon,
                                 std::uint64_t seed);

}  // namespace everettropy
