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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "everettropy/copyability.hpp"
#include "everettropy/dynamics.hpp"
#include "everettropy/error.hpp"
#include "everettropy/spectral.hpp"
#include "oracles.hpp"

namespace everettropy {
namespace {

const SystemLayout kQubit = single("q", 2);

Matrix pauli(char which) {
  Matrix m(2, 2);
  if (which == 'x') m << 0.0, 1.0, 1.0, 0.0;
  if (which == 'z') m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix s01() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

TEST(Classify, PaperCases) {
  const CopyVerdict z = classify_copyable(Operator(kQubit, pauli('z')));
  EXPECT_TRUE(z.copyable);
  EXPECT_FALSE(z.degenerate);
  EXPECT_TRUE(z.eigenbasis.has_value());
  EXPECT_FALSE(z.witness.has_value());

  const CopyVerdict s = classify_copyable(Operator(kQubit, s01()));
  EXPECT_FALSE(s.copyable);
  ASSERT_TRUE(s.witness.has_value());
  EXPECT_FALSE(s.eigenbasis.has_value());

  std::mt19937_64 rng(1);
  for (std::size_t n = 2; n <= 5; ++n) {
    EXPECT_TRUE(classify_copyable(Operator(single("s", n), testing::haar_unitary(n, rng))).copyable);
  }
  EXPECT_THROW(classify_copyable(Operator(SystemLayout({{"a", 2}, {"b", 2}}), cnot())), ValidationError);
}

TEST(Classify, HermitianOnlyMode) {
  std::mt19937_64 rng(2);
  const Operator u(kQubit, testing::haar_unitary(2, rng));
  EXPECT_TRUE(classify_copyable(u).copyable);
  EXPECT_FALSE(classify_copyable(u, kOperatorTol, CopyMode::hermitian_only).copyable);
  EXPECT_TRUE(classify_copyable(Operator(kQubit, pauli('x')), kOperatorTol, CopyMode::hermitian_only).copyable);
}

TEST(Classify, DegenerateNormal) {
  const CopyVerdict id = classify_copyable(Operator::identity(single("t", 3)));
  EXPECT_TRUE(id.copyable);
  EXPECT_TRUE(id.degenerate);
  EXPECT_EQ(id.levels.size(), 1u);
}

// Oracle equivalence on random qubit and qutrit operators of every class.
TEST(Classify, AgreesWithCopySearch) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 2;
    Matrix b;
    switch (trial % 4) {
      case 0: b = testing::random_normal(n, rng); break;
      case 1: b = testing::random_hermitian(n, rng); break;
      case 2: b = testing::ginibre(n, rng); break;
      default: b = testing::haar_unitary(n, rng); break;
    }
    const bool expected = testing::copy_search(b, 1000 + trial).found;
    EXPECT_EQ(classify_copyable(Operator(single("s", n), b)).copyable, expected) << trial;
  }
}

// A non-normal operator that is block diagonal with a normal block admits a
// unitary that copies only the block label. The classifier asks for B itself
// to be copied and rejects it; the search finds the coarse copier.
TEST(Classify, ReducibleNonNormalOnlyCopiesBlockLabel) {
  Matrix b = Matrix::Zero(3, 3);
  b(0, 1) = 1.0;
  b(2, 2) = 5.0;
  EXPECT_FALSE(classify_copyable(Operator(single("t", 3), b)).copyable);
  EXPECT_TRUE(testing::copy_search(b, 7).found);
}

TEST(BuildCopyUnitary, SigmaZIsCnot) {
  const CopyUnitary cu = build_copy_unitary(Operator(kQubit, pauli('z')), {"r", 2});
  EXPECT_EQ(max_abs_diff(cu.unitary.matrix(), cnot()), 0.0);
  EXPECT_FALSE(cu.factorizes);
  EXPECT_EQ(cu.levels, 2u);
}

TEST(BuildCopyUnitary, IdentityFactorizes) {
  const CopyUnitary cu = build_copy_unitary(Operator::identity(kQubit), {"r", 2});
  EXPECT_TRUE(cu.factorizes);
  EXPECT_TRUE(verify_copy(cu.unitary, Operator::identity(kQubit)).factorizes);
  EXPECT_TRUE(testing::factorizes(cu.unitary.matrix(), 2, 2));
}

TEST(BuildCopyUnitary, RejectsUncopyable) {
  EXPECT_THROW(build_copy_unitary(Operator(kQubit, s01()), {"r", 2}), ValidationError);
  EXPECT_THROW(build_copy_unitary(Operator(single("t", 3), Matrix(Eigen::Vector3cd(1, 2, 3).asDiagonal())),
                                  {"r", 2}),
               ValidationError);
}

// Contract on random copyable operators, including degenerate ones.
TEST(BuildCopyUnitary, InvariantAndNonFactorizing) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 3;
    Matrix b = testing::random_normal(n, rng);
    if (trial % 5 == 0) {
      const Matrix v = testing::haar_unitary(n, rng);
      Eigen::VectorXcd lambda = Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(n), Complex(0.5, 1.0));
      lambda(0) = Complex(-2.0, 0.0);
      b = v * lambda.asDiagonal() * v.adjoint();
    }
    const Operator bo(single("s", n), b);
    const CopyUnitary cu = build_copy_unitary(bo, {"r", n});
    EXPECT_TRUE(operator_flags(cu.unitary).unitary);
    const CopyCheck check = verify_copy(cu.unitary, bo);
    EXPECT_TRUE(check.invariant);
    EXPECT_FALSE(check.factorizes);
    EXPECT_FALSE(testing::factorizes(cu.unitary.matrix(), n, n));
    const Matrix bext = testing::naive_kron(b, Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
    EXPECT_LE(max_abs_diff(cu.unitary.matrix().adjoint() * bext * cu.unitary.matrix(), bext), 1e-10);
  }
}

// gamma coefficients of a copy unitary: sum_cd gamma_abcd conj(gamma_efcd) = delta_ae delta_bf.
TEST(BuildCopyUnitary, GammaCoefficientsAreUnitary) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const CopyUnitary cu = build_copy_unitary(Operator(single("s", n), testing::random_hermitian(n, rng)), {"r", n});
    const auto e = coefficients_over_matrix_units(cu.unitary, "s");
    const auto dim = static_cast<Eigen::Index>(n * n);
    Matrix gamma(dim, dim);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const Matrix& block = e.block(a, b);
        for (std::size_t c = 0; c < n; ++c) {
          for (std::size_t d = 0; d < n; ++d) {
            gamma(static_cast<Eigen::Index>(a * n + c), static_cast<Eigen::Index>(b * n + d)) =
                block(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(d));
          }
        }
      }
    }
    EXPECT_LE(max_abs_diff(gamma * gamma.adjoint(), Matrix::Identity(dim, dim)), 1e-10);
  }
}

TEST(BuildCopyUnitary, BranchesRelativeToCopiedObservable) {
  std::mt19937_64 rng(6);
  const std::size_t n = 3;
  const Matrix v = testing::haar_unitary(n, rng);
  const Matrix b = v * Matrix(Eigen::Vector3cd(-1.0, 0.5, 2.0).asDiagonal()) * v.adjoint();
  const CopyUnitary cu = build_copy_unitary(Operator(single("s", n), b), {"r", n});
  const Matrix record = Matrix(Eigen::Vector3cd(0.0, 0.1, 0.2).asDiagonal());
  const Observable joint(Operator(cu.unitary.layout(),
                                  testing::naive_kron(b, Matrix::Identity(3, 3)) +
                                      testing::naive_kron(Matrix::Identity(3, 3), record)));
  EXPECT_TRUE(detect_branching(cu.unitary, joint).has_value());
}

TEST(VerifyCopy, StandardCases) {
  const SystemLayout l({{"q", 2}, {"r", 2}});
  const Operator u(l, cnot());
  const CopyCheck z = verify_copy(u, Operator(kQubit, pauli('z')));
  EXPECT_TRUE(z.invariant);
  EXPECT_FALSE(z.factorizes);
  EXPECT_FALSE(verify_copy(u, Operator(kQubit, pauli('x'))).invariant);

  std::mt19937_64 rng(7);
  const Matrix ua = pauli('z');
  const Operator product(l, testing::naive_kron(ua, testing::haar_unitary(2, rng)));
  const CopyCheck p = verify_copy(product, Operator(kQubit, pauli('z')));
  EXPECT_TRUE(p.invariant);
  EXPECT_TRUE(p.factorizes);
}

TEST(Cloning, CnotClonesOnlyBasisStates) {
  const SystemLayout l({{"q", 2}, {"r", 2}});
  const Operator u(l, cnot());
  const double h = 1.0 / std::sqrt(2.0);
  const auto reports = cloning_demo(u, {DensityState::basis_state(kQubit, 0), DensityState::basis_state(kQubit, 1),
                                        DensityState::pure(kQubit, Eigen::Vector2cd(h, h))});
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_TRUE(reports[0].exact);
  EXPECT_TRUE(reports[1].exact);
  EXPECT_NEAR(reports[0].marginal_fidelity, 1.0, 1e-12);
  EXPECT_NEAR(reports[1].marginal_fidelity, 1.0, 1e-12);
  EXPECT_FALSE(reports[2].exact);
  EXPECT_NEAR(reports[2].marginal_fidelity, 0.5, 1e-10);
}

TEST(Cloning, IdentityLeavesRecordBlank) {
  const SystemLayout l({{"q", 2}, {"r", 2}});
  std::mt19937_64 rng(8);
  const Vector psi = testing::random_pure(2, rng);
  const auto reports = cloning_demo(Operator::identity(l), {DensityState::pure(kQubit, psi)});
  EXPECT_FALSE(reports[0].exact);
  EXPECT_NEAR(reports[0].marginal_fidelity, std::norm(psi(0)), 1e-12);
  EXPECT_THROW(cloning_demo(Operator::identity(l), {DensityState::maximally_mixed(kQubit)}), ValidationError);
}

}  // namespace
}  // namespace everettropy
