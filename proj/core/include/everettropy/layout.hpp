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
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace everettropy {

struct Subsystem {
  std::string label;
  std::size_t dim = 1;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

/// Ordered list of labeled tensor factors. Layout order fixes the basis
/// ordering: the first subsystem is the most significant digit of a basis
/// index. An empty layout is the one-dimensional scalar space.
class SystemLayout {
 public:
  static constexpr std::size_t kDefaultMaxTotalDim = 4096;

  SystemLayout() = default;
  explicit SystemLayout(std::vector<Subsystem> subsystems,
                        std::size_t max_total_dim = kDefaultMaxTotalDim);
  SystemLayout(std::initializer_list<Subsystem> subsystems);

  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  std::size_t size() const { return subsystems_.size(); }
  bool empty() const { return subsystems_.empty(); }
  std::size_t total_dim() const { return total_dim_; }

  bool contains(std::string_view label) const;
  /// Position of `label` in layout order. Throws ValidationError if absent.
  std::size_t position(std::string_view label) const;
  std::size_t dim(std::string_view label) const;
  std::vector<std::string> labels() const;

  /// Concatenation; throws ValidationError on overlapping labels.
  SystemLayout concat(const SystemLayout& other) const;
  /// Subsystems whose labels appear in `keep`, in layout order.
  SystemLayout select(const std::vector<std::string>& keep) const;
  /// Subsystems whose labels do not appear in `drop`, in layout order.
  SystemLayout remove(const std::vector<std::string>& drop) const;

  friend bool operator==(const SystemLayout& a, const SystemLayout& b) {
    return a.subsystems_ == b.subsystems_;
  }

  std::string describe() const;

 private:
  std::vector<Subsystem> subsystems_;
  std::size_t total_dim_ = 1;
};

/// Builds a single-subsystem layout.
SystemLayout single(std::string label, std::size_t dim);

}  // namespace everettropy
