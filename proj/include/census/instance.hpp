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

#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace census {

// A cell (row, column) with 0-based indices.
using Edge = std::pair<int, int>;

// Problem data for the class of m-by-n 0-1 matrices with row sums s, column
// sums t, and zeros forced on the `forbidden` cells. `forbidden` is kept
// sorted and duplicate-free; validate() enforces all structural invariants:
//   m, n >= 1; sum(s) == sum(t); 0 <= s_j <= n; 0 <= t_k <= m;
//   forbidden cells in range and distinct.
struct BipartiteInstance {
  int m = 0;
  int n = 0;
  std::vector<int> s;
  std::vector<int> t;
  std::vector<Edge> forbidden;
};

// Problem data for simple digraphs on n vertices with out-degrees s,
// in-degrees t, and the arcs in `arcs` excluded. Loops are never allowed,
// in the degree bounds (0 <= s_j, t_j <= n-1) or in `arcs`.
struct DigraphInstance {
  int n = 0;
  std::vector<int> s;
  std::vector<int> t;
  std::vector<Edge> arcs;
};

// Throw std::invalid_argument naming the violated invariant.
void validate(const BipartiteInstance& inst);
void validate(const DigraphInstance& inst);

// Pattern degree of each row (x_j) / column (y_k) in inst.forbidden.
std::vector<int> row_pattern_degrees(const BipartiteInstance& inst);
std::vector<int> col_pattern_degrees(const BipartiteInstance& inst);

// Swap the two sides: (n, m, t, s, forbidden transposed).
BipartiteInstance transpose(const BipartiteInstance& inst);

// Same forbidden set, complemented margins (n - s_j, m - t_k). When the
// forbidden set is empty, flipping every cell is a bijection between the
// two classes that exchanges containing a pattern with avoiding it.
BipartiteInstance complement_margins(const BipartiteInstance& inst);

// Relabel rows and columns: row j of the result is row row_perm[j] of inst.
BipartiteInstance relabel(const BipartiteInstance& inst,
                          const std::vector<int>& row_perm,
                          const std::vector<int>& col_perm);

// The digraph class D(s, t, arcs) equals the bipartite class on the n-by-n
// adjacency matrix with the diagonal joined to the forbidden set.
BipartiteInstance digraph_to_bipartite(const DigraphInstance& dig);

// JSON schemas:
//   bipartite {"m":int,"n":int,"s":[int],"t":[int],"forbidden":[[j,k],...]}
//   digraph   {"n":int,"s":[int],"t":[int],"arcs":[[j,k],...]}
// Unknown keys are rejected; "forbidden"/"arcs" default to empty. An object
// containing "m" parses as bipartite, otherwise as digraph.
BipartiteInstance bipartite_from_json(const nlohmann::json& j);
DigraphInstance digraph_from_json(const nlohmann::json& j);
std::variant<BipartiteInstance, DigraphInstance> instance_from_json(
    const nlohmann::json& j);

nlohmann::json to_json(const BipartiteInstance& inst);
nlohmann::json to_json(const DigraphInstance& dig);

}  // namespace census
