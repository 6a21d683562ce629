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

#include <filesystem>
#include <string>
#include <string_view>

#include "everettropy/operator.hpp"

namespace everettropy {

// Operator/state file format:
//   {"layout": [{"label": "q", "dim": 2}, ...],
//    "matrix": [[[re, im], ...], ...]}      (row-major)
// A bare number in place of a [re, im] pair is read as a real entry.

/// Throws ValidationError naming the offending field on malformed input,
/// non-square matrices, or a matrix that does not match the layout.
Operator parse_operator_json(std::string_view text);
Operator read_operator_file(const std::filesystem::path& path);

std::string operator_to_json(const Operator& op);
void write_operator_file(const std::filesystem::path& path, const Operator& op);

}  // namespace everettropy
