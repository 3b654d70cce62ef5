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

#include <map>
#include <string>
#include <vector>

#include "census/bigint.hpp"
#include "census/instance.hpp"
#include "census/stats.hpp"

namespace census {

// A quantity carried in natural-log space together with the additive pieces
// it was assembled from, keyed by name. log_value is the exact sum of the
// components. error_order records the shape of the neglected error as an
// informational tag; no numeric error bar is claimed.
struct LogEstimate {
  double log_value = 0;
  std::string error_order;
  std::map<std::string, double> components;
};

// Log of the estimated number of matrices in the class: a binomial factor
// per row and per column over the free cells, a global binomial normalizer,
// and an exponential correction from the second-moment statistics. stats
// must come from compute_stats(inst). Requires 0 < lambda < 1 and
// s_j <= n - x_j, t_k <= m - y_k.
LogEstimate estimate_log_count_bipartite(const BipartiteInstance& inst,
                                         const StatsBundle& stats);

// Digraph analogue over the n*(n-1) off-diagonal cells; the always-empty
// diagonal joins the excluded arcs in the normalizer and the per-vertex
// binomials, and the margin covariance joins the pattern correction.
// Requires s_j <= n - x_j - 1 and t_j <= n - y_j - 1.
LogEstimate estimate_log_count_digraph(const DigraphInstance& dig,
                                       const StatsBundle& stats);

enum class MissHitMode { General, HostSemiregular, PatternSemiregular };
enum class Which { Miss, Hit };
enum class Kind { Bipartite, Digraph };

// Log of the multiplicative correction to the leading factor in
//   P(avoid pattern)   = (1-dens)^X * miss(m,n)
//   P(contain pattern) = dens^X     * hit(m,n),
// dens being the edge density (bipartite) or arc density (digraph); the
// caller owns the leading factor. The three modes evaluate three distinct
// closed forms: the general one, the reduction assuming constant host
// margins, and the reduction assuming constant pattern degrees. The modes
// agree only up to the error order, so requesting a mode whose assumption
// the stats violate is an error, never a silent fallback.
LogEstimate miss_hit_factor(const StatsBundle& stats, int m, int n,
                            MissHitMode mode, Which which);

// Log-probability that a random member induces exactly the pattern inside
// the window described by `stats`. Host margins must be constant. `base` is
// the stats bundle of the host instance (pattern-free). For digraphs pass
// m == n and the window lives on J_win vertices.
LogEstimate induced_prob(const InducedStats& stats, const StatsBundle& base,
                         int m, int n, Kind kind);

// A pattern with constant row degree x and column degree y (edge count
// X_total). Digraph patterns have x == y.
struct PatternShape {
  int x = 0, y = 0;
  long long X_total = 0;
};

enum class IsoWhich { Contained, Disjoint };

// Log of the expected number of relabeled copies of the pattern that a
// random member contains (or is disjoint from). class_size is the number of
// distinct relabelings, m!n!/aut for bipartite patterns and n!/aut for
// digraph patterns. Host statistics enter through lambda, R, C, Y_hat.
LogEstimate expected_isomorph_count(const PatternShape& shape,
                                    const BigCount& class_size,
                                    const StatsBundle& host, int m, int n,
                                    IsoWhich which, Kind kind);

// Log of the expected permanent of a random square member with margin
// deviation moments R and C. Requires 0 < lambda < 1.
LogEstimate expected_permanent_estimate(int n, double lambda, double R,
                                        double C);

// Classical bounds on the log-permanent of any single n-by-n member with
// all line sums equal to s, 1 <= s <= n-1. The ordering
// vdw_log <= gurvits_log <= minc_bregman_log is asserted on construction.
struct PermanentBounds {
  double vdw_log = 0;
  double gurvits_log = 0;
  double minc_bregman_log = 0;
};

PermanentBounds permanent_bounds(int n, int s);

// One averaging step: the first entry attaining the minimum and the first
// attaining the maximum are both replaced by their midpoint.
struct AveragingStep {
  std::size_t min_index = 0, max_index = 0;
  double min_value = 0, max_value = 0;
  double new_value = 0;
};

struct AveragingResult {
  std::vector<double> z;
  // Exact values of z; the doubles above are their nearest renditions.
  // Sum of z_exact equals the sum of the input exactly.
  std::vector<BigRational> z_exact;
  int steps = 0;
  std::vector<AveragingStep> trace;
};

// While some entry lies outside [-1/2, 1/2], replaces the first-minimum and
// first-maximum entries by their common midpoint. Arithmetic is exact
// rational internally, so the sum is invariant step by step and max - min
// never increases. Requires entries in [-1, 1] with |sum| <= 1e-12;
// terminates within floor((2n-1)/3) steps.
AveragingResult averaging_normalize(const std::vector<double>& z);

}  // namespace census
