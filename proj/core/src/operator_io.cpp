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

#include "everettropy/operator_io.hpp"

#include <fstream>
#include <sstream>

#include "everettropy/error.hpp"
#include "json.hpp"

namespace everettropy {
namespace {

using nlohmann::json;

Complex parse_entry(const json& e, std::size_t row, std::size_t col) {
  const std::string where =
      "matrix[" + std::to_string(row) + "][" + std::to_string(col) + "]";
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw ValidationError(where + ": expected [re, im]");
  }
  return {e[0].get<double>(), e[1].get<double>()};
}

SystemLayout parse_layout(const json& j) {
  if (!j.contains("layout") || !j["layout"].is_array()) {
    throw ValidationError("layout: missing or not an array");
  }
  std::vector<Subsystem> subs;
  std::size_t k = 0;
  for (const auto& s : j["layout"]) {
    const std::string where = "layout[" + std::to_string(k++) + "]";
    if (!s.is_object() || !s.contains("label") || !s["label"].is_string()) {
      throw ValidationError(where + ".label: missing or not a string");
    }
    if (!s.contains("dim") || !s["dim"].is_number_integer() ||
        s["dim"].get<long long>() < 1) {
      throw ValidationError(where + ".dim: must be a positive integer");
    }
    subs.push_back({s["label"].get<std::string>(),
                    static_cast<std::size_t>(s["dim"].get<long long>())});
  }
  return SystemLayout(std::move(subs));
}

}  // namespace

Operator parse_operator_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("json: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("json: top level must be an object");
  SystemLayout layout = parse_layout(j);
  if (!j.contains("matrix") || !j["matrix"].is_array()) {
    throw ValidationError("matrix: missing or not an array");
  }
  const auto& rows = j["matrix"];
  const std::size_t n = rows.size();
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n) {
      throw ValidationError("matrix[" + std::to_string(r) +
                            "]: matrix is not square");
    }
  }
  if (n != layout.total_dim()) {
    throw ValidationError("matrix: dimension " + std::to_string(n) +
                          " does not match layout total " +
                          std::to_string(layout.total_dim()));
  }
  const auto en = static_cast<Eigen::Index>(n);
  Matrix m(en, en);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_entry(rows[r][c], r, c);
    }
  }
  return Operator(std::move(layout), std::move(m));
}

Operator read_operator_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_operator_json(ss.str());
}

std::string operator_to_json(const Operator& op) {
  json j;
  j["layout"] = json::array();
  for (const auto& s : op.layout().subsystems()) {
    j["layout"].push_back({{"label", s.label}, {"dim", s.dim}});
  }
  json rows = json::array();
  for (std::size_t r = 0; r < op.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < op.dim(); ++c) {
      const Complex z = op(r, c);
      row.push_back(json::array({z.real(), z.imag()}));
    }
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j.dump();
}

void write_operator_file(const std::filesystem::path& path, const Operator& op) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file '" + path.string() + "'");
  out << operator_to_json(op) << '\n';
}

}  // namespace everettropy
