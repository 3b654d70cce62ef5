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

#include "census/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "census/logspace.hpp"

namespace census {

namespace {

double ipow(double v, int e) {
  double out = 1;
  for (int i = 0; i < e; ++i) out *= v;
  return out;
}

// Weighted power sum over one side, summed pairwise to limit cancellation.
double moment_sum(const std::vector<double>& base,
                  const std::vector<int>& weight, int h, int l) {
  std::vector<double> terms(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    terms[i] = ipow(base[i], h) * ipow(static_cast<double>(weight[i]), l);
  }
  return pairwise_sum(terms);
}

double pattern_sum(const std::vector<Edge>& pattern,
                   const std::vector<double>& row_val,
                   const std::vector<double>& col_val) {
  std::vector<double> terms(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    terms[i] = row_val[pattern[i].first] * col_val[pattern[i].second];
  }
  return pairwise_sum(terms);
}

StatsBundle stats_impl(int m, int n, const std::vector<int>& s,
                       const std::vector<int>& t,
                       const std::vector<Edge>& pattern) {
  StatsBundle st;
  st.m = m;
  st.n = n;
  st.N = std::accumulate(s.begin(), s.end(), 0LL);
  st.s_bar = static_cast<double>(st.N) / m;
  st.t_bar = static_cast<double>(st.N) / n;
  st.lambda = static_cast<double>(st.N) /
              (static_cast<double>(m) * static_cast<double>(n));
  st.A = st.lambda * (1.0 - st.lambda) / 2.0;

  st.x.assign(m, 0);
  st.y.assign(n, 0);
  for (const auto& [j, k] : pattern) {
    ++st.x[j];
    ++st.y[k];
  }
  st.X_total = static_cast<long long>(pattern.size());

  st.delta.resize(m);
  st.eta.resize(n);
  std::vector<double> s_dev(m), t_dev(n);
  for (int j = 0; j < m; ++j) {
    s_dev[j] = s[j] - st.s_bar;
    st.delta[j] = s_dev[j] + st.lambda * st.x[j];
  }
  for (int k = 0; k < n; ++k) {
    t_dev[k] = t[k] - st.t_bar;
    st.eta[k] = t_dev[k] + st.lambda * st.y[k];
  }

  st.R = moment_sum(s_dev, st.x, 2, 0);
  st.C = moment_sum(t_dev, st.y, 2, 0);
  for (int h = 0; h <= 2; ++h) {
    for (int l = 0; l <= 3; ++l) {
      st.R_hl[h][l] = moment_sum(st.delta, st.x, h, l);
      st.C_hl[h][l] = moment_sum(st.eta, st.y, h, l);
    }
  }

  std::vector<double> x_d(st.x.begin(), st.x.end());
  std::vector<double> y_d(st.y.begin(), st.y.end());
  st.Y = pattern_sum(pattern, st.delta, st.eta);
  st.Y11 = pattern_sum(pattern, x_d, y_d);
  st.Y01 = pattern_sum(pattern, st.delta, y_d);
  st.Y10 = pattern_sum(pattern, x_d, st.eta);
  st.Y_hat = pattern_sum(pattern, s_dev, t_dev);

  st.J_vec.assign(m, 0.0);
  st.K_vec.assign(n, 0.0);
  for (const auto& [j, k] : pattern) {
    st.J_vec[j] += st.eta[k];
    st.K_vec[k] += st.delta[j];
  }
  return st;
}

}  // namespace

bool StatsBundle::pattern_semiregular() const {
  auto constant = [](const std::vector<int>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<int>()) ==
           v.end();
  };
  return constant(x) && constant(y);
}

StatsBundle compute_stats(const BipartiteInstance& inst) {
  validate(inst);
  return stats_impl(inst.m, inst.n, inst.s, inst.t, inst.forbidden);
}

StatsBundle compute_stats(const DigraphInstance& dig) {
  validate(dig);
  return stats_impl(dig.n, dig.n, dig.s, dig.t, dig.arcs);
}

double arc_density(const DigraphInstance& dig) {
  if (dig.n < 2) {
    throw std::domain_error("arc_density: requires n >= 2");
  }
  long long total = std::accumulate(dig.s.begin(), dig.s.end(), 0LL);
  double s_bar = static_cast<double>(total) / dig.n;
  return s_bar / (dig.n - 1);
}

namespace {

void check_window_cells(int J, int K, const std::vector<Edge>& pattern,
                        bool forbid_loops) {
  std::vector<Edge> sorted(pattern);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("window pattern has duplicate cells");
  }
  for (const auto& [j, k] : pattern) {
    if (j < 0 || j >= J || k < 0 || k >= K) {
      throw std::invalid_argument("window pattern cell out of range");
    }
    if (forbid_loops && j == k) {
      throw std::invalid_argument("window pattern has a loop");
    }
  }
}

std::array<double, 4> centered_powers(const std::vector<int>& degrees,
                                      double center) {
  std::array<double, 4> out{};
  for (int l = 0; l <= 3; ++l) {
    std::vector<double> terms(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      terms[i] = ipow(degrees[i] - center, l);
    }
    out[l] = pairwise_sum(terms);
  }
  return out;
}

}  // namespace

InducedStats compute_induced_stats(int J, int K,
                                   const std::vector<Edge>& pattern,
                                   double lambda) {
  if (J < 0 || K < 0) {
    throw std::invalid_argument("window sizes must be nonnegative");
  }
  check_window_cells(J, K, pattern, false);
  InducedStats ind;
  ind.J_win = J;
  ind.K_win = K;
  ind.X_total = static_cast<long long>(pattern.size());
  ind.density = lambda;
  std::vector<int> x(J, 0), y(K, 0);
  for (const auto& [j, k] : pattern) {
    ++x[j];
    ++y[k];
  }
  ind.omega = centered_powers(x, lambda * K);
  ind.omega_p = centered_powers(y, lambda * J);
  return ind;
}

InducedStats compute_induced_stats_digraph(int J,
                                           const std::vector<Edge>& pattern,
                                           double p) {
  if (J < 0) {
    throw std::invalid_argument("window size must be nonnegative");
  }
  check_window_cells(J, J, pattern, true);
  InducedStats ind;
  ind.J_win = J;
  ind.K_win = J;
  ind.X_total = static_cast<long long>(pattern.size());
  ind.density = p;
  std::vector<int> out_deg(J, 0), in_deg(J, 0);
  for (const auto& [j, k] : pattern) {
    ++out_deg[j];
    ++in_deg[k];
  }
  ind.chi = centered_powers(out_deg, p * (J - 1));
  ind.chi_p = centered_powers(in_deg, p * (J - 1));
  return ind;
}

namespace {

double max_abs_dev(const std::vector<int>& v, double mean) {
  double best = 0;
  for (int e : v) best = std::max(best, std::abs(e - mean));
  return best;
}

double max_of(const std::vector<int>& v) {
  return v.empty() ? 0.0 : static_cast<double>(*std::max_element(v.begin(),
                                                                 v.end()));
}

ApplicabilityReport applicability_impl(const StatsBundle& st,
                                       const std::vector<int>& s,
                                       const std::vector<int>& t, double a,
                                       double b, double eps,
                                       double density_lhs) {
  ApplicabilityReport rep;
  auto add = [&rep](std::string name, double lhs, double thr, bool strict,
                    bool mandatory) {
    bool pass = strict ? lhs < thr : lhs <= thr;
    rep.checks.push_back({std::move(name), lhs, thr, pass, mandatory});
  };
  const double m = st.m, n = st.n;
  const double spread_cap = std::pow(n, 0.5 + eps);
  const double s_spread = max_abs_dev(s, st.s_bar);
  const double t_spread = max_abs_dev(t, st.t_bar);
  const double X = static_cast<double>(st.X_total);
  const double lam = st.lambda;

  add("a_plus_b", a + b, 0.5, true, true);
  add("row_deviation", s_spread, spread_cap, false, true);
  add("col_deviation", t_spread, spread_cap, false, true);
  add("pattern_row_degree", max_of(st.x), spread_cap, false, true);
  add("pattern_col_degree", max_of(st.y), spread_cap, false, true);
  add("pattern_total", X, std::pow(n, 1.0 + 2.0 * eps), false, true);
  add("side_ratio_mn", m, std::pow(n, 1.0 + eps), false, true);
  add("side_ratio_nm", n, std::pow(m, 1.0 + eps), false, true);
  add("log_density", density_lhs, a * std::log(n), false, true);

  // Smallness conditions under which the correction factors tend to one.
  // They gate nothing downstream, so they only warn.
  add("miss_row_smallness", X * s_spread + lam * st.R_(0, 2), (1 - lam) * n,
      true, false);
  add("miss_col_smallness", X * t_spread + lam * st.C_(0, 2), (1 - lam) * m,
      true, false);
  add("hit_row_smallness", X * s_spread + (1 - lam) * st.R_(0, 2), lam * n,
      true, false);
  add("hit_col_smallness", X * t_spread + (1 - lam) * st.C_(0, 2), lam * m,
      true, false);

  bool mandatory_fail = false, advisory_fail = false;
  std::string failing;
  for (const auto& c : rep.checks) {
    if (c.pass) continue;
    (c.mandatory ? mandatory_fail : advisory_fail) = true;
    if (!failing.empty()) failing += ", ";
    failing += c.name;
  }
  rep.overall = mandatory_fail ? ApplicabilityReport::Overall::Fail
              : advisory_fail  ? ApplicabilityReport::Overall::Warn
                               : ApplicabilityReport::Overall::Pass;
  rep.notes = failing.empty() ? "all checks passed"
                              : "failing checks: " + failing;
  return rep;
}

double guarded_density_ratio(double numerator, double A) {
  if (A == 0.0) {
    return numerator == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return numerator / A;
}

}  // namespace

ApplicabilityReport check_applicability(const BipartiteInstance& inst,
                                        double a, double b, double eps) {
  if (a <= 0 || b <= 0 || eps < 0) {
    throw std::invalid_argument("check_applicability: requires a, b > 0, eps >= 0");
  }
  StatsBundle st = compute_stats(inst);
  double one_minus = 1.0 - 2.0 * st.lambda;
  double lhs = guarded_density_ratio(one_minus * one_minus / 8.0, st.A) *
               (1.0 + 5.0 * st.m / (6.0 * st.n) + 5.0 * st.n / (6.0 * st.m));
  return applicability_impl(st, inst.s, inst.t, a, b, eps, lhs);
}

ApplicabilityReport check_applicability(const DigraphInstance& dig, double a,
                                        double b, double eps) {
  if (a <= 0 || b <= 0 || eps < 0) {
    throw std::invalid_argument("check_applicability: requires a, b > 0, eps >= 0");
  }
  StatsBundle st = compute_stats(dig);
  double one_minus = 1.0 - 2.0 * st.lambda;
  double lhs = guarded_density_ratio(one_minus * one_minus / 3.0, st.A);
  return applicability_impl(st, dig.s, dig.t, a, b, eps, lhs);
}

}  // namespace census
