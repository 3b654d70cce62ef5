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

#include "census/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace census {

namespace {

double density_of(const BipartiteInstance& inst) {
  long long N = 0;
  for (int v : inst.s) N += v;
  long long cells = static_cast<long long>(inst.m) * inst.n;
  if (cells == 0 || N == 0 || N == cells) {
    throw std::domain_error(
        "saddle point requires a density strictly between 0 and 1");
  }
  return static_cast<double>(N) / static_cast<double>(cells);
}

// Offsets must keep both activity factors positive.
void check_box(const std::vector<double>& a, double r2, bool is_row) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(1.0 + a[i] > 0.0) || !(1.0 - r2 * a[i] > 0.0)) {
      throw SaddleBoundaryError(
          std::string(is_row ? "row" : "column") + " offset " +
              std::to_string(i) + " leaves the activity box",
          is_row ? static_cast<int>(i) : -1,
          is_row ? -1 : static_cast<int>(i));
    }
  }
}

void check_pair_box(const std::vector<double>& a, const std::vector<double>& b,
                    double r2) {
  if (a.empty() || b.empty()) return;
  auto [amin, amax] = std::minmax_element(a.begin(), a.end());
  auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
  const double combos[4] = {*amin * *bmin, *amin * *bmax, *amax * *bmin,
                            *amax * *bmax};
  for (double prod : combos) {
    if (!(1.0 + r2 * prod > 0.0)) {
      throw SaddleBoundaryError("offset product leaves the activity box", -1,
                                -1);
    }
  }
}

double z_cell(double aj, double bk, double r2) {
  return aj * bk * (1.0 - r2 - r2 * aj - r2 * bk) / (1.0 + r2 * aj * bk);
}

SaddlePoint build_point(const BipartiteInstance& inst, double lambda,
                        std::vector<double> a, std::vector<double> b) {
  SaddlePoint sp;
  sp.m = inst.m;
  sp.n = inst.n;
  sp.lambda = lambda;
  sp.r = std::sqrt(lambda / (1.0 - lambda));
  const double r2 = sp.r * sp.r;
  sp.a = std::move(a);
  sp.b = std::move(b);
  sp.q.resize(inst.m);
  sp.rr.resize(inst.n);
  for (int j = 0; j < inst.m; ++j) {
    sp.q[j] = sp.r * (1.0 + sp.a[j]) / (1.0 - r2 * sp.a[j]);
  }
  for (int k = 0; k < inst.n; ++k) {
    sp.rr[k] = sp.r * (1.0 + sp.b[k]) / (1.0 - r2 * sp.b[k]);
  }
  sp.lambda_mat.assign(inst.m, std::vector<double>(inst.n, 0.0));
  sp.z_mat.assign(inst.m, std::vector<double>(inst.n, 0.0));
  for (int j = 0; j < inst.m; ++j) {
    for (int k = 0; k < inst.n; ++k) {
      sp.lambda_mat[j][k] = lambda_from_qr(sp.q[j], sp.rr[k]);
      sp.z_mat[j][k] = z_cell(sp.a[j], sp.b[k], r2);
    }
  }
  return sp;
}

}  // namespace

double lambda_from_qr(double q, double r) { return q * r / (1.0 + q * r); }

SaddlePoint solve_saddle(const BipartiteInstance& inst,
                         const SaddleOptions& opts) {
  validate(inst);
  const int m = inst.m, n = inst.n;
  const double lambda = density_of(inst);
  const double r2 = lambda / (1.0 - lambda);

  const auto x = row_pattern_degrees(inst);
  const auto y = col_pattern_degrees(inst);
  for (int j = 0; j < m; ++j) {
    if (inst.s[j] <= 0 || inst.s[j] >= n - x[j]) {
      throw SaddleBoundaryError(
          "row " + std::to_string(j) + " has no interior activity", j, -1);
    }
  }
  for (int k = 0; k < n; ++k) {
    if (inst.t[k] <= 0 || inst.t[k] >= m - y[k]) {
      throw SaddleBoundaryError(
          "column " + std::to_string(k) + " has no interior activity", -1, k);
    }
  }

  const double s_bar = static_cast<double>(lambda) * n;
  const double t_bar = static_cast<double>(lambda) * m;
  std::vector<double> delta(m), eta(n);
  for (int j = 0; j < m; ++j) delta[j] = inst.s[j] - s_bar + lambda * x[j];
  for (int k = 0; k < n; ++k) eta[k] = inst.t[k] - t_bar + lambda * y[k];
  const double X = static_cast<double>(inst.forbidden.size());
  const double mn = static_cast<double>(m) * n;

  std::vector<std::vector<int>> forb_in_row(m), forb_in_col(n);
  for (const auto& [j, k] : inst.forbidden) {
    forb_in_row[j].push_back(k);
    forb_in_col[k].push_back(j);
  }

  std::vector<double> a(m, 0.0), b(n, 0.0);
  std::vector<double> map_a(m), map_b(n);
  std::vector<double> zrow(m), zcol(n);
  std::vector<double> trace;
  trace.reserve(std::min(opts.max_iter, 4096));

  double theta = 1.0;
  double prev_change = std::numeric_limits<double>::infinity();
  int growth_streak = 0;

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    double sa = 0.0, sb = 0.0;
    for (int j = 0; j < m; ++j) sa += x[j] * a[j];
    for (int k = 0; k < n; ++k) sb += y[k] * b[k];

    std::fill(zrow.begin(), zrow.end(), 0.0);
    std::fill(zcol.begin(), zcol.end(), 0.0);
    double ztot = 0.0;
    for (int j = 0; j < m; ++j) {
      double row_sum = 0.0;
      for (int k = 0; k < n; ++k) {
        double zv = z_cell(a[j], b[k], r2);
        row_sum += zv;
        zcol[k] += zv;
      }
      zrow[j] = row_sum;
    }
    for (const auto& [j, k] : inst.forbidden) {
      double zv = z_cell(a[j], b[k], r2);
      zrow[j] -= zv;
      zcol[k] -= zv;
    }
    for (int j = 0; j < m; ++j) ztot += zrow[j];

    for (int j = 0; j < m; ++j) {
      double fb = 0.0;
      for (int k : forb_in_row[j]) fb += b[k];
      map_a[j] = delta[j] / (lambda * n) - X / (2.0 * mn) + a[j] * x[j] / n -
                 sb / mn + fb / n - zrow[j] / n + ztot / (2.0 * mn);
    }
    for (int k = 0; k < n; ++k) {
      double fa = 0.0;
      for (int j : forb_in_col[k]) fa += a[j];
      map_b[k] = eta[k] / (lambda * m) - X / (2.0 * mn) + b[k] * y[k] / m -
                 sa / mn + fa / m - zcol[k] / m + ztot / (2.0 * mn);
    }

    double change = 0.0;
    bool finite = true;
    for (int j = 0; j < m; ++j) {
      if (!std::isfinite(map_a[j])) finite = false;
      change = std::max(change, std::fabs(map_a[j] - a[j]));
    }
    for (int k = 0; k < n; ++k) {
      if (!std::isfinite(map_b[k])) finite = false;
      change = std::max(change, std::fabs(map_b[k] - b[k]));
    }
    trace.push_back(change);
    if (!finite || change > 1e8) {
      throw SaddleDivergenceError("saddle iteration diverged", trace);
    }

    // Damped step; halve further if the candidate leaves the activity box.
    double step = theta;
    for (int attempt = 0;; ++attempt) {
      bool ok = true;
      for (int j = 0; j < m && ok; ++j) {
        double cand = a[j] + step * (map_a[j] - a[j]);
        if (!(1.0 + cand > 0.0) || !(1.0 - r2 * cand > 0.0)) ok = false;
      }
      for (int k = 0; k < n && ok; ++k) {
        double cand = b[k] + step * (map_b[k] - b[k]);
        if (!(1.0 + cand > 0.0) || !(1.0 - r2 * cand > 0.0)) ok = false;
      }
      if (ok) {
        double alo = 0.0, ahi = 0.0, blo = 0.0, bhi = 0.0;
        for (int j = 0; j < m; ++j) {
          double cand = a[j] + step * (map_a[j] - a[j]);
          alo = std::min(alo, cand);
          ahi = std::max(ahi, cand);
        }
        for (int k = 0; k < n; ++k) {
          double cand = b[k] + step * (map_b[k] - b[k]);
          blo = std::min(blo, cand);
          bhi = std::max(bhi, cand);
        }
        for (double prod : {alo * blo, alo * bhi, ahi * blo, ahi * bhi}) {
          if (!(1.0 + r2 * prod > 0.0)) ok = false;
        }
      }
      if (ok) break;
      if (attempt >= 60) {
        throw SaddleBoundaryError(
            "iterate cannot stay inside the activity box", -1, -1);
      }
      step *= 0.5;
    }
    for (int j = 0; j < m; ++j) a[j] += step * (map_a[j] - a[j]);
    for (int k = 0; k < n; ++k) b[k] += step * (map_b[k] - b[k]);

    if (change <= opts.tol) {
      SaddlePoint sp = build_point(inst, lambda, std::move(a), std::move(b));
      sp.iterations = iter;
      sp.converged = true;
      return sp;
    }

    if (change > prev_change) {
      if (++growth_streak >= 3) {
        theta = std::max(theta * 0.5, 1.0 / 1048576.0);
        growth_streak = 0;
      }
    } else {
      growth_streak = 0;
      theta = std::min(1.0, theta * 1.05);
    }
    prev_change = change;
  }
  // Budget exhausted. A change that is still shrinking is merely slow, not
  // divergent.
  if (trace.size() >= 2 && trace.back() > trace[trace.size() - 2]) {
    throw SaddleDivergenceError(
        "residual change still growing after " +
            std::to_string(opts.max_iter) + " sweeps",
        trace);
  }
  SaddlePoint sp = build_point(inst, lambda, std::move(a), std::move(b));
  sp.iterations = opts.max_iter;
  sp.converged = false;
  return sp;
}

SaddlePoint saddle_from_ab(const BipartiteInstance& inst,
                           const std::vector<double>& a,
                           const std::vector<double>& b) {
  validate(inst);
  if (static_cast<int>(a.size()) != inst.m ||
      static_cast<int>(b.size()) != inst.n) {
    throw std::invalid_argument("saddle_from_ab: offset sizes must be m and n");
  }
  const double lambda = density_of(inst);
  const double r2 = lambda / (1.0 - lambda);
  check_box(a, r2, true);
  check_box(b, r2, false);
  check_pair_box(a, b, r2);
  return build_point(inst, lambda, a, b);
}

SaddleResiduals saddle_residuals(const BipartiteInstance& inst,
                                 const SaddlePoint& sp) {
  validate(inst);
  if (sp.m != inst.m || sp.n != inst.n) {
    throw std::invalid_argument("saddle_residuals: size mismatch");
  }
  const auto x = row_pattern_degrees(inst);
  const auto y = col_pattern_degrees(inst);

  SaddleResiduals res;
  res.row_residuals.assign(inst.m, 0.0);
  res.col_residuals.assign(inst.n, 0.0);
  for (int j = 0; j < inst.m; ++j) {
    for (int k = 0; k < inst.n; ++k) {
      res.row_residuals[j] += sp.lambda_mat[j][k];
      res.col_residuals[k] += sp.lambda_mat[j][k];
    }
  }
  for (const auto& [j, k] : inst.forbidden) {
    res.row_residuals[j] -= sp.lambda_mat[j][k];
    res.col_residuals[k] -= sp.lambda_mat[j][k];
  }
  for (int j = 0; j < inst.m; ++j) res.row_residuals[j] -= inst.s[j];
  for (int k = 0; k < inst.n; ++k) res.col_residuals[k] -= inst.t[k];

  double bal = 0.0;
  for (int j = 0; j < inst.m; ++j) bal += (inst.n - x[j]) * sp.a[j];
  for (int k = 0; k < inst.n; ++k) bal -= (inst.m - y[k]) * sp.b[k];
  res.balance_residual = bal;

  double mx = std::fabs(res.balance_residual);
  for (double v : res.row_residuals) mx = std::max(mx, std::fabs(v));
  for (double v : res.col_residuals) mx = std::max(mx, std::fabs(v));
  res.max_abs = mx;
  return res;
}

}  // namespace census
