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

#include "census/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "census/logspace.hpp"

namespace census {

namespace {

constexpr const char* kErrorTag = "exp(O(n^-b))";

void require_open_density(double dens, const char* who) {
  if (!(dens > 0.0 && dens < 1.0)) {
    throw std::domain_error(std::string(who) +
                            " requires a density strictly between 0 and 1");
  }
}

LogEstimate finish(std::map<std::string, double> components) {
  LogEstimate est;
  est.components = std::move(components);
  double total = 0;
  for (const auto& [name, value] : est.components) total += value;
  est.log_value = total;
  est.error_order = kErrorTag;
  return est;
}

}  // namespace

LogEstimate estimate_log_count_bipartite(const BipartiteInstance& inst,
                                         const StatsBundle& stats) {
  require_open_density(stats.lambda, "estimate_log_count_bipartite");
  const int m = inst.m, n = inst.n;
  for (int j = 0; j < m; ++j) {
    if (inst.s[j] > n - stats.x[j]) {
      throw std::invalid_argument("row " + std::to_string(j) +
                                  " demands more than its allowed cells");
    }
  }
  for (int k = 0; k < n; ++k) {
    if (inst.t[k] > m - stats.y[k]) {
      throw std::invalid_argument("column " + std::to_string(k) +
                                  " demands more than its allowed cells");
    }
  }
  const long long cells = static_cast<long long>(m) * n;
  const double Amn = stats.A * static_cast<double>(m) * n;

  std::vector<double> row_terms(m), col_terms(n);
  for (int j = 0; j < m; ++j) {
    row_terms[j] = log_binomial(n - stats.x[j], inst.s[j]);
  }
  for (int k = 0; k < n; ++k) {
    col_terms[k] = log_binomial(m - stats.y[k], inst.t[k]);
  }

  std::map<std::string, double> c;
  c["normalizer"] = -log_binomial(cells - stats.X_total, stats.N);
  c["row_binomials"] = pairwise_sum(row_terms);
  c["col_binomials"] = pairwise_sum(col_terms);
  c["exponent"] = -0.5 * (1.0 - stats.R / (2.0 * Amn)) *
                      (1.0 - stats.C / (2.0 * Amn)) -
                  stats.Y / (2.0 * Amn);
  return finish(std::move(c));
}

LogEstimate estimate_log_count_digraph(const DigraphInstance& dig,
                                       const StatsBundle& stats) {
  require_open_density(stats.lambda, "estimate_log_count_digraph");
  const int n = dig.n;
  for (int j = 0; j < n; ++j) {
    if (dig.s[j] > n - stats.x[j] - 1) {
      throw std::invalid_argument("vertex " + std::to_string(j) +
                                  " demands more out-arcs than allowed");
    }
    if (dig.t[j] > n - stats.y[j] - 1) {
      throw std::invalid_argument("vertex " + std::to_string(j) +
                                  " demands more in-arcs than allowed");
    }
  }
  const long long cells = static_cast<long long>(n) * n;
  const double An2 = stats.A * static_cast<double>(n) * n;

  std::vector<double> vert_terms(n), cov_terms(n);
  for (int j = 0; j < n; ++j) {
    vert_terms[j] = log_binomial(n - stats.x[j] - 1, dig.s[j]) +
                    log_binomial(n - stats.y[j] - 1, dig.t[j]);
    cov_terms[j] = (dig.s[j] - stats.s_bar) * (dig.t[j] - stats.t_bar);
  }
  const double cov = pairwise_sum(cov_terms);

  std::map<std::string, double> c;
  c["normalizer"] = -log_binomial(cells - stats.X_total - n, stats.N);
  c["vertex_binomials"] = pairwise_sum(vert_terms);
  c["exponent"] = -0.5 * (1.0 - stats.R / (2.0 * An2)) *
                      (1.0 - stats.C / (2.0 * An2)) -
                  (stats.Y + cov) / (2.0 * An2);
  return finish(std::move(c));
}

LogEstimate miss_hit_factor(const StatsBundle& stats, int m, int n,
                            MissHitMode mode, Which which) {
  require_open_density(stats.lambda, "miss_hit_factor");
  if (m <= 0 || n <= 0) {
    throw std::invalid_argument("miss_hit_factor: empty side");
  }
  const double lam = stats.lambda;
  const double mn = static_cast<double>(m) * n;
  const double X = static_cast<double>(stats.X_total);
  const double inv_nm = 1.0 / n + 1.0 / m;
  const double n2 = static_cast<double>(n) * n;
  const double m2 = static_cast<double>(m) * m;

  std::map<std::string, double> c;
  switch (mode) {
    case MissHitMode::General: {
      if (which == Which::Miss) {
        c["pattern_size"] = lam * X / (2.0 * (1.0 - lam)) * inv_nm +
                            lam * X * X / (2.0 * (1.0 - lam) * mn);
        c["mixed_moments"] =
            -(1.0 / (1.0 - lam)) * (stats.R_(1, 1) / n + stats.C_(1, 1) / m);
        c["coupling"] = -stats.Y / (lam * (1.0 - lam) * mn);
        c["spread"] = lam / (2.0 * (1.0 - lam)) *
                      (stats.R_(0, 2) / n + stats.C_(0, 2) / m);
        c["higher"] =
            lam * (1.0 - 2.0 * lam) / (6.0 * (1.0 - lam) * (1.0 - lam)) *
                (stats.R_(0, 3) / n2 + stats.C_(0, 3) / m2) -
            (1.0 - 2.0 * lam) / (2.0 * (1.0 - lam) * (1.0 - lam)) *
                (stats.R_(1, 2) / n2 + stats.C_(1, 2) / m2) -
            1.0 / (2.0 * (1.0 - lam) * (1.0 - lam)) *
                (stats.R_(2, 1) / n2 + stats.C_(2, 1) / m2);
      } else {
        c["pattern_size"] = (1.0 - lam) * X / (2.0 * lam) * inv_nm +
                            (1.0 - lam) * X * X / (2.0 * lam * mn);
        c["mixed_moments"] =
            (1.0 / lam) * (stats.R_(1, 1) / n + stats.C_(1, 1) / m);
        c["coupling"] = -(stats.Y - stats.Y01 - stats.Y10 + stats.Y11) /
                        (lam * (1.0 - lam) * mn);
        c["spread"] = -(1.0 + lam) / (2.0 * lam) *
                      (stats.R_(0, 2) / n + stats.C_(0, 2) / m);
        c["higher"] =
            -1.0 / (2.0 * lam * lam) *
                (stats.R_(2, 1) / n2 + stats.C_(2, 1) / m2) +
            (1.0 + 2.0 * lam) / (2.0 * lam * lam) *
                (stats.R_(1, 2) / n2 + stats.C_(1, 2) / m2) -
            (1.0 + lam) * (1.0 + 2.0 * lam) / (6.0 * lam * lam) *
                (stats.R_(0, 3) / n2 + stats.C_(0, 3) / m2);
      }
      break;
    }
    case MissHitMode::HostSemiregular: {
      if (!stats.host_semiregular()) {
        throw std::invalid_argument(
            "miss_hit_factor: host margins are not constant");
      }
      if (which == Which::Miss) {
        c["pattern_size"] = lam * X / (2.0 * (1.0 - lam)) * inv_nm +
                            lam * X * X / (2.0 * (1.0 - lam) * mn);
        c["coupling"] = -lam * stats.Y11 / ((1.0 - lam) * mn);
        c["spread"] = -lam / (2.0 * (1.0 - lam)) *
                      (stats.R_(0, 2) / n + stats.C_(0, 2) / m);
        c["higher"] = -lam * (2.0 - lam) /
                      (6.0 * (1.0 - lam) * (1.0 - lam)) *
                      (stats.R_(0, 3) / n2 + stats.C_(0, 3) / m2);
      } else {
        c["pattern_size"] = (1.0 - lam) * X / (2.0 * lam) * inv_nm +
                            (1.0 - lam) * X * X / (2.0 * lam * mn);
        c["coupling"] = -(1.0 - lam) * stats.Y11 / (lam * mn);
        c["spread"] = -(1.0 - lam) / (2.0 * lam) *
                      (stats.R_(0, 2) / n + stats.C_(0, 2) / m);
        c["higher"] = -(1.0 - lam * lam) / (6.0 * lam * lam) *
                      (stats.R_(0, 3) / n2 + stats.C_(0, 3) / m2);
      }
      break;
    }
    case MissHitMode::PatternSemiregular: {
      if (!stats.pattern_semiregular()) {
        throw std::invalid_argument(
            "miss_hit_factor: pattern degrees are not constant");
      }
      const double x = stats.x.empty() ? 0.0 : stats.x[0];
      const double y = stats.y.empty() ? 0.0 : stats.y[0];
      if (which == Which::Miss) {
        c["shape"] = -lam * (x * y - x - y) / (2.0 * (1.0 - lam));
        c["spread"] = -(y * stats.R + x * stats.C) /
                      (2.0 * (1.0 - lam) * (1.0 - lam) * mn);
        c["coupling"] = -stats.Y_hat / (lam * (1.0 - lam) * mn);
      } else {
        c["shape"] = -(1.0 - lam) * (x * y - x - y) / (2.0 * lam);
        c["spread"] =
            -(y * stats.R + x * stats.C) / (2.0 * lam * lam * mn);
        c["coupling"] = -stats.Y_hat / (lam * (1.0 - lam) * mn);
      }
      break;
    }
  }
  return finish(std::move(c));
}

LogEstimate induced_prob(const InducedStats& stats, const StatsBundle& base,
                         int m, int n, Kind kind) {
  if (base.X_total != 0) {
    throw std::invalid_argument("induced_prob: host must be pattern-free");
  }
  if (!base.host_semiregular()) {
    throw std::invalid_argument(
        "induced_prob: host margins must be constant");
  }
  const double lam = base.lambda;
  const double A = base.A;
  require_open_density(lam, "induced_prob");
  const double X = static_cast<double>(stats.X_total);

  std::map<std::string, double> c;
  if (kind == Kind::Bipartite) {
    if (stats.density != lam) {
      throw std::invalid_argument(
          "induced_prob: window moments centered at a different density");
    }
    const double J = stats.J_win, K = stats.K_win;
    const double mn = static_cast<double>(m) * n;
    const double n2 = static_cast<double>(n) * n;
    const double m2 = static_cast<double>(m) * m;
    c["leading"] = X * std::log(lam) + (J * K - X) * std::log1p(-lam);
    c["window_size"] = (J * K / 2.0 +
                        (1.0 - 2.0 * lam) * stats.omega[1] / (4.0 * A)) *
                       (1.0 / m + 1.0 / n);
    c["first_moment"] = -stats.omega[1] * stats.omega[1] / (4.0 * A * mn);
    c["second_moments"] =
        -(n + K) * stats.omega[2] / (4.0 * A * n2) -
        (m + J) * stats.omega_p[2] / (4.0 * A * m2);
    c["third_moments"] = -(1.0 - 2.0 * lam) / (24.0 * A * A) *
                         (stats.omega[3] / n2 + stats.omega_p[3] / m2);
  } else {
    if (m != n) {
      throw std::invalid_argument("induced_prob: digraph kind needs m == n");
    }
    const double p = stats.density;
    require_open_density(p, "induced_prob");
    const double J = stats.J_win;
    const double n2 = static_cast<double>(n) * n;
    c["leading"] = X * std::log(p) + (J * (J - 1.0) - X) * std::log1p(-p);
    c["window_size"] = J * J / static_cast<double>(n) +
                       (1.0 - 2.0 * lam) * stats.chi[1] / (2.0 * A * n);
    c["first_moment"] = -stats.chi[1] * stats.chi[1] / (4.0 * A * n2);
    c["second_moments"] =
        -(n + J) * (stats.chi[2] + stats.chi_p[2]) / (4.0 * A * n2);
    c["third_moments"] = -(1.0 - 2.0 * lam) *
                         (stats.chi[3] + stats.chi_p[3]) /
                         (24.0 * A * A * n2);
  }
  return finish(std::move(c));
}

LogEstimate expected_isomorph_count(const PatternShape& shape,
                                    const BigCount& class_size,
                                    const StatsBundle& host, int m, int n,
                                    IsoWhich which, Kind kind) {
  if (host.X_total != 0) {
    throw std::invalid_argument(
        "expected_isomorph_count: host must be pattern-free");
  }
  const double lam = host.lambda;
  require_open_density(lam, "expected_isomorph_count");
  const double X = static_cast<double>(shape.X_total);
  const double x = shape.x, y = shape.y;

  std::map<std::string, double> c;
  c["class_size"] = log_big(class_size);
  if (kind == Kind::Bipartite) {
    const double mn = static_cast<double>(m) * n;
    if (which == IsoWhich::Contained) {
      c["leading"] = X * std::log(lam);
      c["shape"] = -(1.0 - lam) * (x * y - x - y) / (2.0 * lam);
      c["spread"] = -(y * host.R + x * host.C) / (2.0 * lam * lam * mn);
    } else {
      c["leading"] = X * std::log1p(-lam);
      c["shape"] = -lam * (x * y - x - y) / (2.0 * (1.0 - lam));
      c["spread"] = -(y * host.R + x * host.C) /
                    (2.0 * (1.0 - lam) * (1.0 - lam) * mn);
    }
  } else {
    if (m != n) {
      throw std::invalid_argument(
          "expected_isomorph_count: digraph kind needs m == n");
    }
    if (shape.x != shape.y) {
      throw std::invalid_argument(
          "expected_isomorph_count: digraph patterns need x == y");
    }
    const double p = host.s_bar / (n - 1.0);
    require_open_density(p, "expected_isomorph_count");
    const double n2 = static_cast<double>(n) * n;
    if (which == IsoWhich::Contained) {
      c["leading"] = X * std::log(p);
      c["shape"] = -(1.0 - lam) * x * (x - 2.0) / (2.0 * lam);
      c["spread"] = -(host.R + host.C) * x / (2.0 * lam * lam * n2);
    } else {
      c["leading"] = X * std::log1p(-p);
      c["shape"] = -lam * x * (x - 2.0) / (2.0 * (1.0 - lam));
      c["spread"] = -(host.R + host.C) * x /
                    (2.0 * (1.0 - lam) * (1.0 - lam) * n2);
    }
  }
  return finish(std::move(c));
}

LogEstimate expected_permanent_estimate(int n, double lambda, double R,
                                        double C) {
  if (n < 1) {
    throw std::invalid_argument("expected_permanent_estimate: n must be >= 1");
  }
  require_open_density(lambda, "expected_permanent_estimate");
  const double n2 = static_cast<double>(n) * n;
  std::map<std::string, double> c;
  c["leading"] = log_factorial(n) + n * std::log(lambda);
  c["order_one"] = (1.0 - lambda) / (2.0 * lambda);
  c["spread"] = -(R + C) / (2.0 * lambda * lambda * n2);
  return finish(std::move(c));
}

PermanentBounds permanent_bounds(int n, int s) {
  if (n < 2 || s < 1 || s > n - 1) {
    throw std::invalid_argument("permanent_bounds requires 1 <= s <= n-1");
  }
  PermanentBounds b;
  b.vdw_log = log_factorial(n) +
              n * std::log(static_cast<double>(s) / n);
  const double edge = (s == 1)
                          ? 0.0
                          : (s - 1) * std::log(static_cast<double>(s - 1)) -
                                (s - 2) * std::log(static_cast<double>(s));
  b.gurvits_log = log_factorial(s) + (n - s) * edge;
  b.minc_bregman_log = (static_cast<double>(n) / s) * log_factorial(s);
  const double slack = 1e-9 * (1.0 + std::fabs(b.minc_bregman_log));
  if (b.vdw_log > b.gurvits_log + slack ||
      b.gurvits_log > b.minc_bregman_log + slack) {
    throw std::logic_error("permanent_bounds: ordering violated");
  }
  return b;
}

AveragingResult averaging_normalize(const std::vector<double>& z) {
  const std::size_t n = z.size();
  AveragingResult out;
  if (n == 0) return out;

  std::vector<BigRational> w;
  w.reserve(n);
  for (double v : z) {
    if (!(v >= -1.0 && v <= 1.0)) {
      throw std::invalid_argument(
          "averaging_normalize: entries must lie in [-1, 1]");
    }
    w.emplace_back(v);
  }
  BigRational sum = 0;
  for (const auto& v : w) sum += v;
  double sum_d = sum.convert_to<double>();
  if (std::fabs(sum_d) > 1e-12) {
    throw std::invalid_argument("averaging_normalize: sum must be zero");
  }

  const BigRational half(1, 2);
  const int step_cap = static_cast<int>((2 * static_cast<long long>(n) - 1) / 3);
  auto outside = [&]() {
    for (const auto& v : w) {
      if (v > half || v < -half) return true;
    }
    return false;
  };
  while (outside()) {
    if (out.steps >= std::max(step_cap, 1)) {
      throw std::logic_error("averaging_normalize: step bound exceeded");
    }
    auto min_it = std::min_element(w.begin(), w.end());
    auto max_it = std::max_element(w.begin(), w.end());
    BigRational mid = (*min_it + *max_it) / 2;
    AveragingStep step;
    step.min_index = static_cast<std::size_t>(min_it - w.begin());
    step.max_index = static_cast<std::size_t>(max_it - w.begin());
    step.min_value = min_it->convert_to<double>();
    step.max_value = max_it->convert_to<double>();
    step.new_value = mid.convert_to<double>();
    *min_it = mid;
    *max_it = mid;
    out.trace.push_back(step);
    ++out.steps;
  }

  out.z_exact = std::move(w);
  out.z.reserve(n);
  for (const auto& v : out.z_exact) out.z.push_back(v.convert_to<double>());
  return out;
}

}  // namespace census
