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

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "census/bigint.hpp"
#include "census/instance.hpp"

namespace census {

// Thrown when a counting run would exceed its configured memo budget.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

enum class CountEngine { Auto, Dp, Brute };

struct CountOptions {
  CountEngine engine = CountEngine::Auto;
  // Upper bound on memoized states across all depths. The dp engine throws
  // ResourceLimitError rather than exceed it.
  std::size_t state_limit = 100000000;
};

// Number of 0-1 matrices with the given row sums, column sums, and zeros at
// every forbidden position.
BigCount count_exact(const BipartiteInstance& inst, const CountOptions& opts = {});

// Number of loop-free digraphs with the given out/in degrees avoiding the
// excluded arcs. Counted through the bipartite view with the diagonal added
// to the forbidden set.
BigCount count_exact_digraph(const DigraphInstance& dig,
                             const CountOptions& opts = {});

// Visits every matrix in the class in row-major lexicographic order
// (each matrix read row by row as a 0-1 string; strings ascending).
// The callback receives the matrix as m rows of n entries. Returning false
// stops the walk early. Restricted to n <= 32 and m*n <= 64.
void for_each_member(const BipartiteInstance& inst,
                     const std::function<bool(const std::vector<std::vector<uint8_t>>&)>& visit);

// Permanent of a square 0-1 matrix, n <= 30. The n == 0 permanent is 1.
BigCount permanent_exact(const std::vector<std::vector<uint8_t>>& mat);

struct ProbQuery {
  enum class Mode { Disjoint, Contains, Induced };
  Mode mode = Mode::Disjoint;
  std::vector<Edge> pattern;
  // Induced mode: the pattern occupies the top-left window of this size and
  // every other window cell is required to be absent.
  int window_rows = 0, window_cols = 0;
};

// Probability that a uniformly random member of the class avoids the
// pattern, contains it, or induces exactly it on the window. The instance
// itself must have no forbidden cells. Throws std::domain_error when the
// class is empty.
ExactProbability prob_exact(const BipartiteInstance& inst, const ProbQuery& query,
                            const CountOptions& opts = {});

enum class EPermPath { Auto, Symmetry, Enumeration };

// Average permanent over the class of square matrices with the given
// margins. The symmetry path needs constant margins; the enumeration path
// walks the class and is limited to n <= 7.
BigRational expected_permanent_exact(const BipartiteInstance& inst,
                                     EPermPath path = EPermPath::Auto,
                                     const CountOptions& opts = {});

// Order of the automorphism group of the pattern: pairs of row/column
// permutations fixing the edge set, with rows and columns that touch no
// edge permuted freely. At most 10 incident rows and 10 incident columns.
BigCount aut_count(int m, int n, const std::vector<Edge>& pattern);

// Order of the automorphism group of an arc set under simultaneous
// relabeling of the n vertices. At most 10 incident vertices.
BigCount aut_count_digraph(int n, const std::vector<Edge>& arcs);

}  // namespace census
