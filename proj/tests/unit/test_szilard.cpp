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
#include <stdexcept>

#include <gtest/gtest.h>

#include "everettropy/dynamics.hpp"
#include "everettropy/error.hpp"
#include "everettropy/szilard.hpp"

namespace everettropy {
namespace {

using namespace szilard;

// Basis index of |qubit, carrier, device_xq, device_c>.
std::size_t index_of(std::size_t q, std::size_t c, std::size_t x, std::size_t m) {
  return ((q * 2 + c) * 2 + x) * 3 + m;
}

TEST(Szilard, LayoutAndInitialState) {
  EXPECT_EQ(molecule_layout().total_dim(), 24u);
  EXPECT_EQ(std::abs(initial_state().matrix()(0, 0) - 1.0), 0.0);
}

TEST(Szilard, StagesAreUnitary) {
  for (const Operator& u : stage_unitaries()) EXPECT_TRUE(operator_flags(u).unitary);
}

TEST(Szilard, RebaseIsAnInvolution) {
  Matrix m(2, 2);
  m << Complex(0.3, 0.1), Complex(-1.0, 2.0), Complex(0.25, 0.0), Complex(4.0, -0.5);
  EXPECT_LE(max_abs_diff(rebase_zx(rebase_zx(m)), m), 1e-15);
  Matrix z(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  Matrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  EXPECT_LE(max_abs_diff(rebase_zx(z), x), 1e-15);
}

// Stage 1: the qubit's x value is written to M_xq. Since |0_z> = (|0_x> +
// |1_x>)/sqrt2, the state is (|0_x>|0> + |1_x>|1>)/sqrt2 on (qubit, M_xq).
TEST(Szilard, StageOneWritesXRecord) {
  const auto us = stage_unitaries();
  const DensityState s1 = evolve_schrodinger(initial_state(), us[0]);
  const double h = 1.0 / std::sqrt(2.0);
  Vector expected = Vector::Zero(24);
  // |0_x> = (|0>+|1>)/sqrt2, |1_x> = (|0>-|1>)/sqrt2.
  expected(static_cast<Eigen::Index>(index_of(0, 0, 0, 0))) += h * h;
  expected(static_cast<Eigen::Index>(index_of(1, 0, 0, 0))) += h * h;
  expected(static_cast<Eigen::Index>(index_of(0, 0, 1, 0))) += h * h;
  expected(static_cast<Eigen::Index>(index_of(1, 0, 1, 0))) -= h * h;
  EXPECT_LE(max_abs_diff(s1.matrix(), expected * expected.adjoint()), 1e-10);
}

TEST(Szilard, CarrierMarginalAfterStageTwo) {
  Experiment e;
  e.advance();
  e.advance();
  const DensityState c = reduced_state(e.state(), {kCarrier});
  EXPECT_LE(max_abs_diff(c.matrix(), 0.5 * Matrix::Identity(2, 2)), 1e-12);
}

TEST(Szilard, CycleRestoresGas) {
  Experiment e;
  while (!e.finished()) e.advance();
  EXPECT_EQ(e.history().size(), kStages);
  EXPECT_THROW(e.advance(), std::logic_error);
  const DensityState q = reduced_state(e.state(), {kQubit});
  const DensityState c = reduced_state(e.state(), {kCarrier});
  EXPECT_NEAR(std::abs(q.matrix()(0, 0)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(c.matrix()(kLeft, kLeft)), 1.0, 1e-12);
}

TEST(Szilard, EntropyTrace) {
  const EntropyTrace t = run_szilard(1);
  const double carrier[] = {0, 0, 1, 1, 0};
  for (std::size_t s = 0; s < kStages; ++s) {
    EXPECT_NEAR(t.per_molecule(s, "carrier"), carrier[s], 1e-9) << s;
    EXPECT_NEAR(t.per_molecule(s, "global"), 0.0, 1e-9) << s;
  }
  EXPECT_NEAR(t.per_molecule(0, "qubit"), 0.0, 1e-9);
  EXPECT_NEAR(t.per_molecule(4, "qubit"), 0.0, 1e-9);
  EXPECT_NEAR(t.per_molecule(4, "device_xq"), 1.0, 1e-9);
  EXPECT_NEAR(t.per_molecule(4, "device_c"), 1.0, 1e-9);
  EXPECT_NEAR(t.per_molecule(4, "devices"), 0.0, 1e-9);
  EXPECT_THROW(t.per_molecule(5, "carrier"), ValidationError);
  EXPECT_THROW(t.per_molecule(0, "gas"), ValidationError);
}

TEST(Szilard, DevicesJointlyPureAtEnd) {
  const EntropyTrace t = run_szilard(1);
  const DensityState devices = reduced_state(t.states.back(), {kDeviceX, kDeviceC});
  int rank = 0;
  for (Eigen::Index k = 0; k < devices.spectrum().size(); ++k) rank += devices.spectrum()(k) > 1e-9;
  EXPECT_EQ(rank, 1);
}

TEST(Szilard, TotalsScaleWithMoleculeCount) {
  const EntropyTrace one = run_szilard(1);
  const EntropyTrace eight = run_szilard(8);
  EXPECT_NEAR(eight.total(2, "carrier"), 8.0, 1e-9);
  for (std::size_t s = 0; s < kStages; ++s) {
    for (auto row : kTraceRows) {
      EXPECT_EQ(one.per_molecule(s, row), eight.per_molecule(s, row));
    }
  }
  EXPECT_THROW(run_szilard(0), ValidationError);
}

}  // namespace
}  // namespace everettropy
