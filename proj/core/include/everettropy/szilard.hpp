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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "everettropy/operator.hpp"
#include "everettropy/state.hpp"

namespace everettropy::szilard {

// One molecule of the gas: a qubit Q carried by a molecule whose position
// (L/R) is the carrier, a device M_xq recording sigma_x of the qubit, and a
// device M_c recording the side of the box (blank/L/R).
inline constexpr const char* kQubit = "qubit";
inline constexpr const char* kCarrier = "carrier";
inline constexpr const char* kDeviceX = "device_xq";
inline constexpr const char* kDeviceC = "device_c";

inline constexpr std::size_t kLeft = 0;   // carrier basis
inline constexpr std::size_t kRight = 1;
inline constexpr std::size_t kBlank = 0;  // device_c basis
inline constexpr std::size_t kRecordL = 1;
inline constexpr std::size_t kRecordR = 2;

inline constexpr std::size_t kStages = 5;  // t = 0..4

/// [qubit:2, carrier:2, device_xq:2, device_c:3]; 24 dimensions.
SystemLayout molecule_layout();

/// Columns |0_x>, |1_x> in the z basis.
Matrix x_basis();

/// Rewrites a qubit operator given in z-basis components as x-basis
/// components (and vice versa) using the +-1/2 coefficient table relating the
/// two bases. Applying it twice returns the input.
Matrix rebase_zx(const Matrix& qubit_operator);

/// |0_z> |L> |0>_xq |blank>_c.
DensityState initial_state();

/// U1: sigma_x perfectly measured onto device_xq.
/// U2: sigma_x measured onto the carrier position (L <-> R shift).
/// U3: carrier position measured onto device_c (blank -> L or R).
/// U4: record-controlled restoration returning the qubit to |0_z> and the
///     carrier to L on the branches the records identify.
std::array<Operator, 4> stage_unitaries();

/// Applies the stage unitaries in order, each exactly once.
class Experiment {
 public:
  Experiment();

  std::size_t stage() const { return states_.size() - 1; }
  bool finished() const { return stage() == 4; }
  const DensityState& state() const { return states_.back(); }
  const std::vector<DensityState>& history() const { return states_; }

  /// Applies the next stage unitary. Throws std::logic_error once every
  /// stage has run.
  const DensityState& advance();

 private:
  std::array<Operator, 4> unitaries_;
  std::vector<DensityState> states_;
};

/// Entropy rows reported per stage, in output order.
inline const std::array<std::string, 6> kTraceRows = {
    "qubit", "carrier", "device_xq", "device_c", "devices", "global"};

struct EntropyTrace {
  std::size_t molecules = 1;
  /// entropies[t][row] in bits per molecule, rows ordered as kTraceRows.
  std::vector<std::array<double, 6>> entropies;
  /// Full per-molecule state at every stage.
  std::vector<DensityState> states;

  double per_molecule(std::size_t stage, std::string_view row) const;
  double total(std::size_t stage, std::string_view row) const;
};

/// Runs one 24-dimensional molecule and scales totals by the molecule
/// count; the molecules do not interact. Throws ValidationError for
/// molecules < 1.
EntropyTrace run_szilard(long long molecules);

}  // namespace everettropy::szilard
