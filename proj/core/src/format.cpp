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

#include "everettropy/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace everettropy {

std::string format_decimal(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 12);
  std::string out(buf.data(), end);
  if (std::isfinite(value) &&
      out.find_first_of(".e") == std::string::npos) {
    out += ".0";
  }
  return out;
}

}  // namespace everettropy
