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

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "census/instance.hpp"
#include "census/saddle.hpp"

using census::BipartiteInstance;
using census::Edge;
using census::SaddleOptions;
using census::SaddlePoint;

namespace {

doctest::Approx approx(double v) {
  return doctest::Approx(v).epsilon(1e-12);
}

BipartiteInstance make_bip(int m, int n, std::vector<int> s, std::vector<int> t,
                           std::vector<Edge> forbidden = {}) {
  BipartiteInstance inst;
  inst.m = m;
  inst.n = n;
  inst.s = std::move(s);
  inst.t = std::move(t);
  inst.forbidden = std::move(forbidden);
  return inst;
}

// Irregular test bed with a two-cell pattern; margins stay well inside the
// capacity box.
BipartiteInstance bed() {
  return make_bip(5, 7, {4, 3, 4, 3, 4}, {3, 3, 2, 3, 2, 3, 2},
                  {{0, 1}, {2, 3}});
}

}  // namespace

TEST_CASE("solve_saddle is immediate on regular instances") {
  auto inst = make_bip(4, 4, {2, 2, 2, 2}, {2, 2, 2, 2});
  auto sp = census::solve_saddle(inst);
  CHECK(sp.converged);
  CHECK(sp.iterations <= 2);
  for (double v : sp.a) CHECK(v == 0.0);
  for (double v : sp.b) CHECK(v == 0.0);
  for (const auto& row : sp.lambda_mat) {
    for (double l : row) CHECK(l == approx(0.5));
  }
  auto res = census::saddle_residuals(inst, sp);
  CHECK(res.max_abs <= 1e-12);
}

TEST_CASE("solve_saddle reaches the known point on skewed margins") {
  auto inst = make_bip(2, 3, {2, 1}, {1, 1, 1});
  auto sp = census::solve_saddle(inst);
  CHECK(sp.converged);
  CHECK(sp.iterations <= 3);
  CHECK(sp.a[0] == approx(1.0 / 3.0));
  CHECK(sp.a[1] == approx(-1.0 / 3.0));
  CHECK(sp.b[0] == approx(0.0));
  CHECK(sp.b[1] == approx(0.0));
  CHECK(sp.b[2] == approx(0.0));
  for (int k = 0; k < 3; ++k) {
    CHECK(sp.lambda_mat[0][k] == approx(2.0 / 3.0));
    CHECK(sp.lambda_mat[1][k] == approx(1.0 / 3.0));
  }
  auto res = census::saddle_residuals(inst, sp);
  CHECK(res.max_abs <= 1e-11);
}

TEST_CASE("solve_saddle rejects saturated rows") {
  // Row 0 must fill every allowed cell, which pushes the activity to the
  // boundary of its box.
  auto inst = make_bip(2, 2, {1, 1}, {1, 1}, {{0, 0}});
  CHECK_THROWS_AS(census::solve_saddle(inst), census::SaddleBoundaryError);
  try {
    census::solve_saddle(inst);
  } catch (const census::SaddleBoundaryError& e) {
    CHECK(e.row_index == 0);
  }
}

TEST_CASE("saddle_residuals at the zero point evaluate in closed form") {
  auto inst = make_bip(2, 3, {2, 1}, {1, 1, 1});
  std::vector<double> zero_a(2, 0.0), zero_b(3, 0.0);
  auto sp = census::saddle_from_ab(inst, zero_a, zero_b);
  auto res = census::saddle_residuals(inst, sp);
  // Row residual j is lambda*(n - x_j) - s_j when a = b = 0.
  CHECK(res.row_residuals[0] == approx(0.5 * 3 - 2));
  CHECK(res.row_residuals[1] == approx(0.5 * 3 - 1));
  for (double c : res.col_residuals) CHECK(c == approx(0.0));
  CHECK(res.balance_residual == approx(0.0));
  CHECK(res.max_abs == approx(0.5));
}

TEST_CASE("saddle_residuals detect a perturbed point") {
  auto inst = make_bip(4, 4, {2, 2, 2, 2}, {2, 2, 2, 2});
  auto sp = census::solve_saddle(inst);
  auto a = sp.a;
  a[0] += 0.01;
  auto moved = census::saddle_from_ab(inst, a, sp.b);
  auto res = census::saddle_residuals(inst, moved);
  CHECK(res.max_abs > 1e-4);
}

TEST_CASE("solve_saddle satisfies the cell identity and the pattern balance") {
  auto inst = bed();
  auto sp = census::solve_saddle(inst);
  REQUIRE(sp.converged);

  auto res = census::saddle_residuals(inst, sp);
  CHECK(res.max_abs <= 1e-11);

  // lambda_jk / lambda == 1 + a_j + b_k + Z_jk on every cell.
  for (int j = 0; j < inst.m; ++j) {
    for (int k = 0; k < inst.n; ++k) {
      double lhs = sp.lambda_mat[j][k] / sp.lambda;
      double rhs = 1.0 + sp.a[j] + sp.b[k] + sp.z_mat[j][k];
      CHECK(lhs == approx(rhs));
    }
  }

  // All cell probabilities stay strictly inside (0, 1).
  for (const auto& row : sp.lambda_mat) {
    for (double l : row) {
      CHECK(l > 0.0);
      CHECK(l < 1.0);
    }
  }

  // Pattern-size identity: X == sum (n-x_j) a_j + sum (m-y_k) b_k + Z over
  // allowed cells.
  auto x = census::row_pattern_degrees(inst);
  auto y = census::col_pattern_degrees(inst);
  double acc = 0.0;
  for (int j = 0; j < inst.m; ++j) acc += (inst.n - x[j]) * sp.a[j];
  for (int k = 0; k < inst.n; ++k) acc += (inst.m - y[k]) * sp.b[k];
  std::vector<std::vector<bool>> blocked(inst.m,
                                         std::vector<bool>(inst.n, false));
  for (const auto& [j, k] : inst.forbidden) blocked[j][k] = true;
  for (int j = 0; j < inst.m; ++j) {
    for (int k = 0; k < inst.n; ++k) {
      if (!blocked[j][k]) acc += sp.z_mat[j][k];
    }
  }
  CHECK(std::fabs(acc - static_cast<double>(inst.forbidden.size())) <= 1e-10);
}

TEST_CASE("gauge rescaling of activities leaves the cell probabilities fixed") {
  auto inst = bed();
  auto sp = census::solve_saddle(inst);
  REQUIRE(sp.converged);

  std::mt19937_64 rng(8128);
  std::vector<double> scales = {2.0};
  for (int i = 0; i < 6; ++i) {
    scales.push_back(0.5 + 1.5 * ((rng() >> 11) * 0x1.0p-53));
  }
  for (double c : scales) {
    CAPTURE(c);
    std::vector<double> a2(inst.m), b2(inst.n);
    for (int j = 0; j < inst.m; ++j) {
      double q2 = c * sp.q[j];
      a2[j] = (q2 - sp.r) / (sp.r * (1.0 + q2 * sp.r));
    }
    for (int k = 0; k < inst.n; ++k) {
      double r2 = sp.rr[k] / c;
      b2[k] = (r2 - sp.r) / (sp.r * (1.0 + r2 * sp.r));
    }
    auto moved = census::saddle_from_ab(inst, a2, b2);
    for (int j = 0; j < inst.m; ++j) {
      for (int k = 0; k < inst.n; ++k) {
        CHECK(std::fabs(moved.lambda_mat[j][k] - sp.lambda_mat[j][k]) <=
              1e-12);
      }
    }
  }
}

TEST_CASE("saddle_from_ab reproduces a solved point") {
  auto inst = bed();
  auto sp = census::solve_saddle(inst);
  auto rebuilt = census::saddle_from_ab(inst, sp.a, sp.b);
  for (int j = 0; j < inst.m; ++j) {
    for (int k = 0; k < inst.n; ++k) {
      CHECK(rebuilt.lambda_mat[j][k] == sp.lambda_mat[j][k]);
    }
  }
}

TEST_CASE("exhausting max_iter without divergence reports unconverged") {
  auto inst = bed();
  SaddleOptions opts;
  opts.tol = 1e-30;
  opts.max_iter = 3;
  auto sp = census::solve_saddle(inst, opts);
  CHECK_FALSE(sp.converged);
  CHECK(sp.iterations == 3);
}

TEST_CASE("lambda_from_qr") {
  CHECK(census::lambda_from_qr(1.0, 1.0) == 0.5);
  CHECK(census::lambda_from_qr(0.0, 2.0) == 0.0);
  CHECK(census::lambda_from_qr(2.0, 1.0) == approx(2.0 / 3.0));
  CHECK(census::lambda_from_qr(3.0, 0.5) > census::lambda_from_qr(1.0, 0.5));
}
