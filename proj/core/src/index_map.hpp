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

#include <cstddef>
#include <string>
#include <vector>

#include "everettropy/layout.hpp"

namespace everettropy::detail {

/// For every basis index of `layout`, the index restricted to the selected
/// subsystems and the index restricted to the others (both mixed radix in
/// layout order).
struct IndexSplit {
  std::size_t selected_dim = 1;
  std::size_t other_dim = 1;
  std::vector<std::size_t> selected;
  std::vector<std::size_t> other;
};

inline IndexSplit split_indices(const SystemLayout& layout,
                                const std::vector<bool>& mask) {
  const auto& subs = layout.subsystems();
  IndexSplit out;
  for (std::size_t k = 0; k < subs.size(); ++k) {
    (mask[k] ? out.selected_dim : out.other_dim) *= subs[k].dim;
  }
  const std::size_t total = layout.total_dim();
  out.selected.resize(total);
  out.other.resize(total);
  std::vector<std::size_t> digits(subs.size(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t sel = 0;
    std::size_t oth = 0;
    for (std::size_t k = 0; k < subs.size(); ++k) {
      if (mask[k]) {
        sel = sel * subs[k].dim + digits[k];
      } else {
        oth = oth * subs[k].dim + digits[k];
      }
    }
    out.selected[i] = sel;
    out.other[i] = oth;
    for (std::size_t k = subs.size(); k-- > 0;) {
      if (++digits[k] < subs[k].dim) break;
      digits[k] = 0;
    }
  }
  return out;
}

inline std::vector<bool> label_mask(const SystemLayout& layout,
                                    const std::vector<std::string>& labels) {
  std::vector<bool> mask(layout.size(), false);
  for (const auto& l : labels) mask[layout.position(l)] = true;
  return mask;
}

}  // namespace everettropy::detail
