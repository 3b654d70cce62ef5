// Copyright 2026 The census authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "census/instance.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace census {

namespace {

std::string cell_str(const Edge& e) {
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

void check_margin_vector(const std::vector<int>& v, std::size_t expect,
                         int cap, const char* label) {
  if (v.size() != expect) {
    throw std::invalid_argument(std::string(label) + " has " +
                                std::to_string(v.size()) + " entries, expected " +
                                std::to_string(expect));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0 || v[i] > cap) {
      throw std::invalid_argument(std::string(label) + "[" + std::to_string(i) +
                                  "] = " + std::to_string(v[i]) +
                                  " outside [0, " + std::to_string(cap) + "]");
    }
  }
}

void check_cells_sorted_unique(const std::vector<Edge>& cells, int m, int n,
                               const char* label) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& [j, k] = cells[i];
    if (j < 0 || j >= m || k < 0 || k >= n) {
      throw std::invalid_argument(std::string(label) + " cell " +
                                  cell_str(cells[i]) + " out of range");
    }
    if (i > 0 && !(cells[i - 1] < cells[i])) {
      throw std::invalid_argument(std::string(label) +
                                  " not sorted/duplicate at " +
                                  cell_str(cells[i]));
    }
  }
}

long long sum_of(const std::vector<int>& v) {
  return std::accumulate(v.begin(), v.end(), 0LL);
}

std::vector<Edge> sorted_cells(std::vector<Edge> cells) {
  std::sort(cells.begin(), cells.end());
  return cells;
}

}  // namespace

void validate(const BipartiteInstance& inst) {
  if (inst.m < 1 || inst.n < 1) {
    throw std::invalid_argument("instance requires m >= 1 and n >= 1");
  }
  check_margin_vector(inst.s, static_cast<std::size_t>(inst.m), inst.n, "s");
  check_margin_vector(inst.t, static_cast<std::size_t>(inst.n), inst.m, "t");
  if (sum_of(inst.s) != sum_of(inst.t)) {
    throw std::invalid_argument("sum(s) = " + std::to_string(sum_of(inst.s)) +
                                " differs from sum(t) = " +
                                std::to_string(sum_of(inst.t)));
  }
  check_cells_sorted_unique(inst.forbidden, inst.m, inst.n, "forbidden");
}

void validate(const DigraphInstance& dig) {
  if (dig.n < 1) {
    throw std::invalid_argument("digraph requires n >= 1");
  }
  check_margin_vector(dig.s, static_cast<std::size_t>(dig.n), dig.n - 1, "s");
  check_margin_vector(dig.t, static_cast<std::size_t>(dig.n), dig.n - 1, "t");
  if (sum_of(dig.s) != sum_of(dig.t)) {
    throw std::invalid_argument("sum(s) = " + std::to_string(sum_of(dig.s)) +
                                " differs from sum(t) = " +
                                std::to_string(sum_of(dig.t)));
  }
  check_cells_sorted_unique(dig.arcs, dig.n, dig.n, "arcs");
  for (const auto& arc : dig.arcs) {
    if (arc.first == arc.second) {
      throw std::invalid_argument("loop arc " + cell_str(arc) + " not allowed");
    }
  }
}

std::vector<int> row_pattern_degrees(const BipartiteInstance& inst) {
  std::vector<int> x(inst.m, 0);
  for (const auto& [j, k] : inst.forbidden) ++x[j];
  return x;
}

std::vector<int> col_pattern_degrees(const BipartiteInstance& inst) {
  std::vector<int> y(inst.n, 0);
  for (const auto& [j, k] : inst.forbidden) ++y[k];
  return y;
}

BipartiteInstance transpose(const BipartiteInstance& inst) {
  BipartiteInstance out;
  out.m = inst.n;
  out.n = inst.m;
  out.s = inst.t;
  out.t = inst.s;
  out.forbidden.reserve(inst.forbidden.size());
  for (const auto& [j, k] : inst.forbidden) out.forbidden.emplace_back(k, j);
  out.forbidden = sorted_cells(std::move(out.forbidden));
  return out;
}

BipartiteInstance complement_margins(const BipartiteInstance& inst) {
  BipartiteInstance out = inst;
  for (auto& v : out.s) v = inst.n - v;
  for (auto& v : out.t) v = inst.m - v;
  return out;
}

namespace {

std::vector<int> inverse_permutation(const std::vector<int>& perm,
                                     std::size_t expect, const char* label) {
  if (perm.size() != expect) {
    throw std::invalid_argument(std::string(label) + " has wrong length");
  }
  std::vector<int> inv(perm.size(), -1);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    int p = perm[i];
    if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || inv[p] != -1) {
      throw std::invalid_argument(std::string(label) + " is not a permutation");
    }
    inv[p] = static_cast<int>(i);
  }
  return inv;
}

}  // namespace

BipartiteInstance relabel(const BipartiteInstance& inst,
                          const std::vector<int>& row_perm,
                          const std::vector<int>& col_perm) {
  auto inv_row = inverse_permutation(row_perm, inst.s.size(), "row_perm");
  auto inv_col = inverse_permutation(col_perm, inst.t.size(), "col_perm");
  BipartiteInstance out;
  out.m = inst.m;
  out.n = inst.n;
  out.s.resize(inst.s.size());
  out.t.resize(inst.t.size());
  for (int j = 0; j < inst.m; ++j) out.s[j] = inst.s[row_perm[j]];
  for (int k = 0; k < inst.n; ++k) out.t[k] = inst.t[col_perm[k]];
  out.forbidden.reserve(inst.forbidden.size());
  for (const auto& [j, k] : inst.forbidden) {
    out.forbidden.emplace_back(inv_row[j], inv_col[k]);
  }
  out.forbidden = sorted_cells(std::move(out.forbidden));
  return out;
}

BipartiteInstance digraph_to_bipartite(const DigraphInstance& dig) {
  validate(dig);
  BipartiteInstance out;
  out.m = dig.n;
  out.n = dig.n;
  out.s = dig.s;
  out.t = dig.t;
  out.forbidden = dig.arcs;
  for (int i = 0; i < dig.n; ++i) out.forbidden.emplace_back(i, i);
  out.forbidden = sorted_cells(std::move(out.forbidden));
  return out;
}

namespace {

using nlohmann::json;

int read_int(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" must be an integer");
  }
  return v.get<int>();
}

std::vector<int> read_int_vector(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array()) {
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" must be an array");
  }
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_integer()) {
      throw std::invalid_argument(std::string("field \"") + key +
                                  "\" must contain integers");
    }
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<Edge> read_cells(const json& j, const char* key) {
  std::vector<Edge> out;
  if (!j.contains(key)) return out;
  const auto& v = j.at(key);
  if (!v.is_array()) {
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" must be an array of pairs");
  }
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw std::invalid_argument(std::string("field \"") + key +
                                  "\" entries must be [row, col] pairs");
    }
    out.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  std::sort(out.begin(), out.end());
  auto dup = std::adjacent_find(out.begin(), out.end());
  if (dup != out.end()) {
    throw std::invalid_argument(std::string("duplicate pair ") +
                                cell_str(*dup) + " in \"" + key + "\"");
  }
  return out;
}

void reject_unknown_keys(const json& j,
                         const std::vector<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) ==
        allowed.end()) {
      throw std::invalid_argument("unknown field \"" + item.key() + "\"");
    }
  }
}

}  // namespace

BipartiteInstance bipartite_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("instance JSON must be an object");
  }
  reject_unknown_keys(j, {"m", "n", "s", "t", "forbidden"});
  BipartiteInstance inst;
  inst.m = read_int(j, "m");
  inst.n = read_int(j, "n");
  inst.s = read_int_vector(j, "s");
  inst.t = read_int_vector(j, "t");
  inst.forbidden = read_cells(j, "forbidden");
  validate(inst);
  return inst;
}

DigraphInstance digraph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("instance JSON must be an object");
  }
  reject_unknown_keys(j, {"n", "s", "t", "arcs"});
  DigraphInstance dig;
  dig.n = read_int(j, "n");
  dig.s = read_int_vector(j, "s");
  dig.t = read_int_vector(j, "t");
  dig.arcs = read_cells(j, "arcs");
  validate(dig);
  return dig;
}

std::variant<BipartiteInstance, DigraphInstance> instance_from_json(
    const nlohmann::json& j) {
  if (j.is_object() && j.contains("m")) {
    return bipartite_from_json(j);
  }
  return digraph_from_json(j);
}

namespace {

nlohmann::json cells_to_json(const std::vector<Edge>& cells) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [j, k] : cells) arr.push_back({j, k});
  return arr;
}

}  // namespace

nlohmann::json to_json(const BipartiteInstance& inst) {
  return {{"m", inst.m},
          {"n", inst.n},
          {"s", inst.s},
          {"t", inst.t},
          {"forbidden", cells_to_json(inst.forbidden)}};
}

nlohmann::json to_json(const DigraphInstance& dig) {
  return {{"n", dig.n},
          {"s", dig.s},
          {"t", dig.t},
          {"arcs", cells_to_json(dig.arcs)}};
}

}  // namespace census
