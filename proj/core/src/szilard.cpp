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

#include "everettropy/szilard.hpp"

#include <cmath>
#include <stdexcept>

#include "everettropy/dynamics.hpp"
#include "everettropy/error.hpp"
#include "everettropy/spectral.hpp"

namespace everettropy::szilard {
namespace {

std::size_t row_index(std::string_view row) {
  for (std::size_t k = 0; k < kTraceRows.size(); ++k) {
    if (kTraceRows[k] == row) return k;
  }
  throw ValidationError("szilard: unknown trace row '" + std::string(row) + "'");
}

Matrix record_projector(std::size_t dim, std::size_t index) {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix p = Matrix::Zero(n, n);
  p(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return p;
}

}  // namespace

SystemLayout molecule_layout() {
  return SystemLayout({{kQubit, 2}, {kCarrier, 2}, {kDeviceX, 2}, {kDeviceC, 3}});
}

Matrix x_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix v(2, 2);
  v << h, h, h, -h;
  return v;
}

Matrix rebase_zx(const Matrix& qubit_operator) {
  if (qubit_operator.rows() != 2 || qubit_operator.cols() != 2) {
    throw ValidationError("rebase_zx: expected a 2x2 qubit operator");
  }
  Matrix s(2, 2);
  s << 1.0, 1.0, 1.0, -1.0;
  return 0.5 * (s * qubit_operator * s);
}

DensityState initial_state() { return DensityState::basis_state(molecule_layout(), 0); }

std::array<Operator, 4> stage_unitaries() {
  const SystemLayout layout = molecule_layout();
  const Matrix vx = x_basis();

  Operator u1 = perfect_measurement_unitary(layout, kQubit, kDeviceX, vx);
  Operator u2 = perfect_measurement_unitary(layout, kQubit, kCarrier, vx);

  Operator u3 = Operator::zero(layout);
  for (std::size_t side = 0; side < 2; ++side) {
    u3 = u3 + matrix_unit(layout, kCarrier, side, side) *
                  embed(layout, kDeviceC, shift_matrix(3, side + 1));
  }

  // Branch (M_xq = 0, M_c = L) holds |0_x>|L>; branch (1, R) holds |1_x>|R>.
  // Both are mapped to |0_z>|L>; every other record pair is left alone.
  Matrix hadamard = vx.adjoint();  // |a_x> -> |a_z>
  Matrix flip = shift_matrix(2, 1);
  Operator u4 = Operator::zero(layout);
  for (std::size_t mx = 0; mx < 2; ++mx) {
    for (std::size_t mc = 0; mc < 3; ++mc) {
      Matrix on_qubit = Matrix::Identity(2, 2);
      Matrix on_carrier = Matrix::Identity(2, 2);
      if (mx == 0 && mc == kRecordL) {
        on_qubit = hadamard;
      } else if (mx == 1 && mc == kRecordR) {
        on_qubit = flip * hadamard;
        on_carrier = flip;
      }
      u4 = u4 + embed(layout, kDeviceX, record_projector(2, mx)) *
                    embed(layout, kDeviceC, record_projector(3, mc)) *
                    embed(layout, kQubit, on_qubit) * embed(layout, kCarrier, on_carrier);
    }
  }
  return {std::move(u1), std::move(u2), std::move(u3), std::move(u4)};
}

Experiment::Experiment() : unitaries_(stage_unitaries()) {
  states_.push_back(initial_state());
}

const DensityState& Experiment::advance() {
  if (finished()) throw std::logic_error("szilard: every stage has already been applied");
  states_.push_back(evolve_schrodinger(states_.back(), unitaries_[stage()]));
  return states_.back();
}

double EntropyTrace::per_molecule(std::size_t stage, std::string_view row) const {
  if (stage >= entropies.size()) throw ValidationError("szilard: stage out of range");
  return entropies[stage][row_index(row)];
}

double EntropyTrace::total(std::size_t stage, std::string_view row) const {
  return static_cast<double>(molecules) * per_molecule(stage, row);
}

EntropyTrace run_szilard(long long molecules) {
  if (molecules < 1) throw ValidationError("molecules: must be >= 1");
  Experiment experiment;
  while (!experiment.finished()) experiment.advance();

  EntropyTrace trace;
  trace.molecules = static_cast<std::size_t>(molecules);
  for (const auto& rho : experiment.history()) {
    trace.entropies.push_back({
        von_neumann_entropy(reduced_state(rho, {kQubit})),
        von_neumann_entropy(reduced_state(rho, {kCarrier})),
        von_neumann_entropy(reduced_state(rho, {kDeviceX})),
        von_neumann_entropy(reduced_state(rho, {kDeviceC})),
        von_neumann_entropy(reduced_state(rho, {kDeviceX, kDeviceC})),
        von_neumann_entropy(rho),
    });
  }
  trace.states = experiment.history();
  return trace;
}

}  // namespace everettropy::szilard
