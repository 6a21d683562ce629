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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace everettropy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// Environment variable overriding the default operator tolerance.
inline constexpr const char* kToleranceEnv = "EVERETTROPY_TOL";

struct RunConfig {
  std::string subcommand;

  // File inputs (which ones apply depends on the subcommand).
  std::string operator_path;
  std::string state_path;
  std::string unitary_path;
  std::string observable_path;
  std::string experiment_path;

  std::string out_path;     // empty: stdout
  std::string json_path;    // szilard --json
  std::string ledger_path;  // selection counterexample ledger

  long long molecules = 0;
  std::size_t dim_a = 2;
  std::size_t dim_b = 2;
  double noise = 0.0;
  std::size_t seeds = 1;
  std::optional<std::uint64_t> seed;
  std::size_t parallel = 1;

  std::vector<std::string> keep;
  bool hermitian_only = false;
  std::optional<double> tolerance;
};

/// Parses argv-style arguments (without the program name) and dispatches.
/// Diagnostics go to `err` as a single line.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Dispatches an already-parsed configuration. Returns 0 on success, 1 on a
/// validation error, 2 when an output fails a numerical invariant.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace everettropy::cli
