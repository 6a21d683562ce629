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

#include "everettropy/layout.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "everettropy/error.hpp"

namespace everettropy {

SystemLayout::SystemLayout(std::vector<Subsystem> subsystems,
                           std::size_t max_total_dim)
    : subsystems_(std::move(subsystems)) {
  std::set<std::string_view> seen;
  total_dim_ = 1;
  for (const auto& s : subsystems_) {
    if (s.label.empty()) throw ValidationError("layout: empty subsystem label");
    if (s.dim < 1) {
      throw ValidationError("layout: subsystem '" + s.label +
                            "' has dimension 0");
    }
    if (!seen.insert(s.label).second) {
      throw ValidationError("layout: duplicate label '" + s.label + "'");
    }
    if (total_dim_ > max_total_dim / s.dim) {
      throw ValidationError("layout: total dimension exceeds cap of " +
                            std::to_string(max_total_dim));
    }
    total_dim_ *= s.dim;
  }
}

SystemLayout::SystemLayout(std::initializer_list<Subsystem> subsystems)
    : SystemLayout(std::vector<Subsystem>(subsystems)) {}

bool SystemLayout::contains(std::string_view label) const {
  return std::any_of(subsystems_.begin(), subsystems_.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

std::size_t SystemLayout::position(std::string_view label) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].label == label) return i;
  }
  throw ValidationError("unknown subsystem label '" + std::string(label) +
                        "' in layout " + describe());
}

std::size_t SystemLayout::dim(std::string_view label) const {
  return subsystems_[position(label)].dim;
}

std::vector<std::string> SystemLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(subsystems_.size());
  for (const auto& s : subsystems_) out.push_back(s.label);
  return out;
}

SystemLayout SystemLayout::concat(const SystemLayout& other) const {
  std::vector<Subsystem> all = subsystems_;
  for (const auto& s : other.subsystems_) {
    if (contains(s.label)) {
      throw ValidationError("tensor: overlapping label '" + s.label + "'");
    }
    all.push_back(s);
  }
  return SystemLayout(std::move(all));
}

SystemLayout SystemLayout::select(const std::vector<std::string>& keep) const {
  for (const auto& k : keep) position(k);
  std::vector<Subsystem> out;
  for (const auto& s : subsystems_) {
    if (std::find(keep.begin(), keep.end(), s.label) != keep.end()) {
      out.push_back(s);
    }
  }
  return SystemLayout(std::move(out));
}

SystemLayout SystemLayout::remove(const std::vector<std::string>& drop) const {
  for (const auto& d : drop) position(d);
  std::vector<Subsystem> out;
  for (const auto& s : subsystems_) {
    if (std::find(drop.begin(), drop.end(), s.label) == drop.end()) {
      out.push_back(s);
    }
  }
  return SystemLayout(std::move(out));
}

std::string SystemLayout::describe() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (i) os << ", ";
    os << subsystems_[i].label << ':' << subsystems_[i].dim;
  }
  os << ']';
  return os.str();
}

SystemLayout single(std::string label, std::size_t dim) {
  return SystemLayout({Subsystem{std::move(label), dim}});
}

}  // namespace everettropy
