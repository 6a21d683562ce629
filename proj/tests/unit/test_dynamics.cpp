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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "everettropy/dynamics.hpp"
#include "everettropy/error.hpp"
#include "everettropy/spectral.hpp"
#include "oracles.hpp"

namespace everettropy {
namespace {

const SystemLayout kQubit = single("q", 2);

Matrix hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  m << h, h, h, -h;
  return m;
}

Matrix pauli(char which) {
  Matrix m(2, 2);
  if (which == 'x') m << 0.0, 1.0, 1.0, 0.0;
  if (which == 'z') m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Observable diagonal_observable(const SystemLayout& l, std::size_t n) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = double(k) + 1.0;
  return Observable(Operator(l, m));
}

TEST(Heisenberg, IdentityAndHadamard) {
  const Operator z(kQubit, pauli('z'));
  EXPECT_EQ(max_abs_diff(evolve_heisenberg(z, Operator::identity(kQubit)).matrix(), z.matrix()), 0.0);
  EXPECT_LE(max_abs_diff(evolve_heisenberg(z, Operator(kQubit, hadamard())).matrix(), pauli('x')),
            1e-15);
  Matrix not_unitary = Matrix::Identity(2, 2);
  not_unitary(0, 0) = 2.0;
  EXPECT_THROW(evolve_heisenberg(z, Operator(kQubit, not_unitary)), ValidationError);
}

TEST(Heisenberg, SpectrumPreserved) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const SystemLayout l = single("s", n);
    const Operator a(l, testing::random_hermitian(n, rng));
    const Operator u(l, testing::haar_unitary(n, rng));
    const auto before = hermitian_eigen(a.matrix()).values;
    const auto after = hermitian_eigen(evolve_heisenberg(a, u).matrix()).values;
    EXPECT_LE((before - after).cwiseAbs().maxCoeff(), 1e-10);
  }
}

// Picture equivalence and round trip on random triples.
TEST(Schrodinger, PictureEquivalenceAndRoundTrip) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 15;
    const SystemLayout l = single("s", n);
    const DensityState rho = DensityState::from_operator(Operator(l, testing::random_density(n, rng)));
    const Operator a(l, testing::random_hermitian(n, rng));
    const Operator u(l, testing::haar_unitary(n, rng));
    const double schrodinger = expectation(evolve_schrodinger(rho, u), a);
    const double heisenberg = expectation(rho, evolve_heisenberg(a, u));
    EXPECT_LE(std::abs(schrodinger - heisenberg), 1e-10);
    const DensityState back = evolve_schrodinger(evolve_schrodinger(rho, u), u.adjoint());
    EXPECT_LE(max_abs_diff(back.matrix(), rho.matrix()), 1e-10);
  }
}

TEST(EvolutionStep, PictureChecked) {
  const Operator u(kQubit, hadamard());
  const EvolutionStep h(u, Picture::heisenberg, 0.0, 1.0);
  EXPECT_LE(max_abs_diff(h.apply(Operator(kQubit, pauli('z'))).matrix(), pauli('x')), 1e-15);
  EXPECT_THROW(h.apply(DensityState::basis_state(kQubit, 0)), ValidationError);
  const EvolutionStep s(u, Picture::schrodinger, 0.0, 1.0);
  EXPECT_THROW(s.apply(Operator(kQubit, pauli('z'))), ValidationError);
  EXPECT_THROW(EvolutionStep(u, Picture::schrodinger, 1.0, 1.0), ValidationError);
}

TEST(PermutationUnitary, SmallCases) {
  EXPECT_EQ(max_abs_diff(permutation_unitary(kQubit, "q", {0, 1}).matrix(), Matrix::Identity(2, 2)), 0.0);
  EXPECT_EQ(max_abs_diff(permutation_unitary(kQubit, "q", {1, 0}).matrix(), pauli('x')), 0.0);
  EXPECT_THROW(permutation_unitary(kQubit, "q", {0, 0}), ValidationError);
}

TEST(PerfectMeasurement, QubitIsCnot) {
  const SystemLayout l({{"a", 2}, {"b", 2}});
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  EXPECT_EQ(max_abs_diff(perfect_measurement_unitary(l, "a", "b").matrix(), cnot), 0.0);
}

TEST(PerfectMeasurement, QutritShiftAndCorrelation) {
  const SystemLayout l({{"a", 3}, {"b", 3}});
  const Operator u = perfect_measurement_unitary(l, "a", "b");
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      for (std::size_t r = 0; r < 9; ++r) {
        const double expected = (r == 3 * a + (a + b) % 3) ? 1.0 : 0.0;
        EXPECT_EQ(u(r, 3 * a + b), Complex(expected));
      }
    }
    const DensityState out = evolve_schrodinger(DensityState::basis_state(l, 3 * a), u);
    EXPECT_EQ(std::abs(out.matrix()(3 * a + a, 3 * a + a) - 1.0), 0.0);
  }
  EXPECT_TRUE(operator_flags(u).unitary);
}

TEST(PerfectMeasurement, XBasisSourceIsUnitary) {
  const SystemLayout l({{"a", 2}, {"b", 2}, {"c", 3}});
  EXPECT_TRUE(operator_flags(perfect_measurement_unitary(l, "a", "b", hadamard())).unitary);
  EXPECT_THROW(perfect_measurement_unitary(l, "a", "c"), ValidationError);
}

TEST(Branching, StandardCases) {
  const Observable z(Operator(kQubit, pauli('z')));
  const auto swap = detect_branching(Operator(kQubit, pauli('x')), z);
  ASSERT_TRUE(swap.has_value());
  EXPECT_EQ(*swap, (Permutation{1, 0}));
  EXPECT_FALSE(detect_branching(Operator(kQubit, hadamard()), z).has_value());
  const Observable degenerate(Operator::identity(kQubit));
  EXPECT_THROW(detect_branching(Operator(kQubit, pauli('x')), degenerate), ValidationError);
}

// Every permutation of up to five levels, in a random eigenbasis.
TEST(Branching, RecoversEveryPermutation) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 2; n <= 5; ++n) {
    const SystemLayout l = single("s", n);
    const Matrix basis = testing::haar_unitary(n, rng);
    Matrix diag = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) diag(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 0.5 + double(k);
    const Observable obs = Observable(Operator(l, basis * diag * basis.adjoint()));
    Permutation perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const auto found = detect_branching(permutation_unitary(l, "s", perm, basis), obs);
      ASSERT_TRUE(found.has_value());
      EXPECT_EQ(*found, perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Branching, ProjectorsArePermutedAsDetected) {
  const SystemLayout l = single("s", 4);
  const Observable obs = diagonal_observable(l, 4);
  const Permutation perm = {2, 0, 3, 1};
  const Operator u = permutation_unitary(l, "s", perm);
  for (std::size_t a = 0; a < 4; ++a) {
    const Matrix moved = u.matrix() * obs.projectors()[a].matrix() * u.matrix().adjoint();
    EXPECT_EQ(max_abs_diff(moved, obs.projectors()[perm[a]].matrix()), 0.0);
  }
}

TEST(Branching, RepeatedMeasurementComposition) {
  const SystemLayout l({{"s", 2}, {"m", 2}});
  const RepeatedMeasurement rm = repeated_measurement(l, "s", "m", hadamard());
  EXPECT_TRUE(operator_flags(rm.composite).unitary);

  Matrix zdiag(2, 2);
  zdiag << 1.0, 0.0, 0.0, 2.0;
  const Matrix m_obs = zdiag + 0.0 * Matrix::Identity(2, 2);
  // Nondegenerate observables on the joint space: system observable plus a
  // small record observable to split the levels.
  auto joint = [&](const Matrix& system_basis) {
    const Matrix a = system_basis * zdiag * system_basis.adjoint();
    return Observable(Operator(l, testing::naive_kron(a, Matrix::Identity(2, 2)) +
                                      testing::naive_kron(Matrix::Identity(2, 2), 0.25 * m_obs)));
  };
  const Observable original = joint(Matrix::Identity(2, 2));
  const Observable rotated = joint(rm.rotated_basis);
  EXPECT_TRUE(detect_branching(rm.first, original).has_value());
  EXPECT_TRUE(detect_branching(rm.second, rotated).has_value());
  EXPECT_FALSE(detect_branching(rm.composite, original).has_value());
}

TEST(Dephase, StandardCases) {
  const Vector plus = hadamard().col(0);
  const DensityState rho = DensityState::pure(kQubit, plus);
  const std::vector<Matrix> z = basis_projectors(Matrix::Identity(2, 2));
  const DensityState out = dephase(rho, z);
  EXPECT_LE(max_abs_diff(out.matrix(), 0.5 * Matrix::Identity(2, 2)), 1e-15);
  EXPECT_NEAR(von_neumann_entropy(rho), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(out), 1.0, 1e-12);
  const DensityState diag = DensityState::diagonal(kQubit, Eigen::Vector2d(0.3, 0.7));
  EXPECT_LE(max_abs_diff(dephase(diag, z).matrix(), diag.matrix()), 0.0);
  EXPECT_THROW(dephase(rho, {z[0]}), ValidationError);
}

TEST(Dephase, NeverDecreasesEntropy) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 15;
    const SystemLayout l = single("s", n);
    const DensityState rho = DensityState::from_operator(
        Operator(l, testing::random_density_rank(n, 1 + trial % n, rng)));
    const Matrix basis = testing::haar_unitary(n, rng);
    const DensityState out = dephase(rho, basis_projectors(basis));
    EXPECT_GE(von_neumann_entropy(out) - von_neumann_entropy(rho), -1e-9);
  }
}

}  // namespace
}  // namespace everettropy
