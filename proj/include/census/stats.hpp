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

#include <array>
#include <string>
#include <vector>

#include "census/instance.hpp"

namespace census {

// Derived statistics of an instance. With s_bar = avg(s), t_bar = avg(t) and
// lambda = sum(s)/(m*n):
//   delta_j = s_j - s_bar + lambda*x_j     eta_k = t_k - t_bar + lambda*y_k
//   R = sum (s_j - s_bar)^2                C = sum (t_k - t_bar)^2
//   R_hl = sum_j delta_j^h x_j^l           C_hl = sum_k eta_k^h y_k^l
//   Y    = sum over forbidden cells of delta_j * eta_k
//   Y_hl analogues with x_j^h y_k^l weights; Y_hat uses raw deviations.
// Identities: R_hl(1,0) == C_hl(1,0) == lambda*X and R_hl(0,1) == C_hl(0,1)
// == X up to roundoff.
struct StatsBundle {
  int m = 0, n = 0;
  long long N = 0;  // sum(s) == sum(t) == lambda*m*n, exactly integral
  double s_bar = 0, t_bar = 0;
  double lambda = 0;
  double A = 0;  // lambda*(1-lambda)/2
  std::vector<int> x, y;
  std::vector<double> delta, eta;
  long long X_total = 0;
  double R = 0, C = 0;
  std::array<std::array<double, 4>, 3> R_hl{}, C_hl{};
  double Y = 0;
  double Y11 = 0, Y01 = 0, Y10 = 0;
  double Y_hat = 0;
  // J_vec[j] = sum of eta_k over columns forbidden in row j;
  // K_vec[k] = sum of delta_j over rows forbidden in column k.
  std::vector<double> J_vec, K_vec;

  double R_(int h, int l) const { return R_hl[h][l]; }
  double C_(int h, int l) const { return C_hl[h][l]; }
  bool host_semiregular() const { return R == 0.0 && C == 0.0; }
  bool pattern_semiregular() const;
};

StatsBundle compute_stats(const BipartiteInstance& inst);

// Same formulae applied to the n-by-n arc view (no diagonal added); the
// pattern degrees are the out/in degrees of the excluded arc set.
StatsBundle compute_stats(const DigraphInstance& dig);

// Arc density p = s_bar/(n-1) of a digraph instance. Requires n >= 2.
double arc_density(const DigraphInstance& dig);

// Window moments for induced-subgraph probabilities. For a J-by-K bipartite
// window with pattern row degrees x_j and column degrees y_k:
//   omega_l  = sum_{j<J} (x_j - lambda*K)^l
//   omega_p_l = sum_{k<K} (y_k - lambda*J)^l
// For a digraph window on J vertices with arc density p:
//   chi_l  = sum_{j<J} (x_j - p*(J-1))^l, chi_p_l with in-degrees.
// First moments satisfy omega_1 == X - lambda*J*K and
// chi_1 == X - p*J*(J-1).
struct InducedStats {
  int J_win = 0, K_win = 0;
  long long X_total = 0;
  double density = 0;  // lambda (bipartite) or p (digraph) used to center
  std::array<double, 4> omega{}, omega_p{};
  std::array<double, 4> chi{}, chi_p{};
};

// Pattern edges must lie inside the J-by-K window.
InducedStats compute_induced_stats(int J, int K,
                                   const std::vector<Edge>& pattern,
                                   double lambda);

// Pattern arcs must lie inside the window on vertices {0..J-1}, no loops.
InducedStats compute_induced_stats_digraph(int J,
                                           const std::vector<Edge>& pattern,
                                           double p);

// One hypothesis check, evaluated as lhs-vs-threshold. Advisory checks
// (mandatory == false) can only downgrade the verdict to Warn.
struct ApplicabilityCheck {
  std::string name;
  double lhs = 0;
  double threshold = 0;
  bool pass = false;
  bool mandatory = true;
};

struct ApplicabilityReport {
  enum class Overall { Pass, Warn, Fail };
  std::vector<ApplicabilityCheck> checks;
  Overall overall = Overall::Pass;
  std::string notes;
};

// Numeric rendition of the asymptotic-regime hypotheses for exponents a, b
// and degree-spread exponent eps. Diagnostic only; nothing downstream blocks
// on the verdict. Requires a > 0, b > 0, eps >= 0.
ApplicabilityReport check_applicability(const BipartiteInstance& inst,
                                        double a, double b, double eps);
ApplicabilityReport check_applicability(const DigraphInstance& dig, double a,
                                        double b, double eps);

}  // namespace census
