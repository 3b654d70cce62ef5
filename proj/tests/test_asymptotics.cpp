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

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "census/asymptotics.hpp"
#include "census/bigint.hpp"
#include "census/exact.hpp"
#include "census/instance.hpp"
#include "census/logspace.hpp"
#include "census/stats.hpp"

using census::BigCount;
using census::BigRational;
using census::BipartiteInstance;
using census::DigraphInstance;
using census::Edge;
using census::Kind;
using census::LogEstimate;
using census::MissHitMode;
using census::Which;

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

BipartiteInstance regular_square(int n, int deg, std::vector<Edge> forbidden = {}) {
  return make_bip(n, n, std::vector<int>(n, deg), std::vector<int>(n, deg),
                  std::move(forbidden));
}

// Every estimate must carry a component breakdown that sums back to its
// log value.
void check_components(const LogEstimate& est) {
  CHECK(std::isfinite(est.log_value));
  CHECK_FALSE(est.components.empty());
  CHECK_FALSE(est.error_order.empty());
  double sum = 0;
  for (const auto& [name, v] : est.components) sum += v;
  CHECK(std::fabs(sum - est.log_value) <=
        1e-12 * std::max(1.0, std::fabs(est.log_value)));
}

double log_of_rational(const BigRational& r) {
  return census::log_big(boost::multiprecision::numerator(r)) -
         census::log_big(boost::multiprecision::denominator(r));
}

}  // namespace

TEST_CASE("estimate_log_count_bipartite on regular margins") {
  auto inst = regular_square(10, 5);
  auto st = census::compute_stats(inst);
  auto est = census::estimate_log_count_bipartite(inst, st);
  check_components(est);
  CHECK(est.components.at("exponent") == approx(-0.5));
  double expected = -census::log_binomial(100, 50) +
                    20.0 * census::log_binomial(10, 5) - 0.5;
  CHECK(est.log_value == approx(expected));
}

TEST_CASE("estimate_log_count_bipartite rejects degenerate inputs") {
  auto zero = make_bip(2, 2, {0, 0}, {0, 0});
  CHECK_THROWS_AS(census::estimate_log_count_bipartite(
                      zero, census::compute_stats(zero)),
                  std::domain_error);
  auto full = make_bip(2, 2, {2, 2}, {2, 2});
  CHECK_THROWS_AS(census::estimate_log_count_bipartite(
                      full, census::compute_stats(full)),
                  std::domain_error);
  // Row 0 wants 2 ones but only 1 free cell remains.
  auto tight = make_bip(2, 2, {2, 0}, {1, 1}, {{0, 0}});
  CHECK_THROWS_AS(census::estimate_log_count_bipartite(
                      tight, census::compute_stats(tight)),
                  std::invalid_argument);
}

TEST_CASE("estimate_log_count_digraph on regular margins") {
  DigraphInstance dig;
  dig.n = 10;
  dig.s.assign(10, 5);
  dig.t.assign(10, 5);
  auto st = census::compute_stats(dig);
  auto est = census::estimate_log_count_digraph(dig, st);
  check_components(est);
  CHECK(est.components.at("exponent") == approx(-0.5));
  double expected = -census::log_binomial(90, 50) +
                    20.0 * census::log_binomial(9, 5) - 0.5;
  CHECK(est.log_value == approx(expected));
}

TEST_CASE("digraph estimate differs from the reduced bipartite one by the "
          "documented pattern term") {
  DigraphInstance dig;
  dig.n = 6;
  dig.s = {3, 2, 3, 2, 3, 2};
  dig.t = {2, 3, 2, 3, 2, 3};
  dig.arcs = {{0, 1}, {2, 3}};

  auto dst = census::compute_stats(dig);
  auto est_d = census::estimate_log_count_digraph(dig, dst);
  check_components(est_d);

  auto red = census::digraph_to_bipartite(dig);
  auto bst = census::compute_stats(red);
  auto est_b = census::estimate_log_count_bipartite(red, bst);
  check_components(est_b);

  double cov = 0;
  for (int j = 0; j < dig.n; ++j) {
    cov += (dig.s[j] - dst.s_bar) * (dig.t[j] - dst.t_bar);
  }
  double n2 = static_cast<double>(dig.n) * dig.n;
  double predicted_gap = (bst.Y - dst.Y - cov) / (2.0 * dst.A * n2);
  CHECK(est_d.log_value - est_b.log_value == approx(predicted_gap));
}

TEST_CASE("miss_hit_factor vanishes without a pattern") {
  auto st = census::compute_stats(regular_square(8, 3));
  for (auto mode : {MissHitMode::General, MissHitMode::HostSemiregular,
                    MissHitMode::PatternSemiregular}) {
    for (auto which : {Which::Miss, Which::Hit}) {
      auto est = census::miss_hit_factor(st, 8, 8, mode, which);
      CHECK(est.log_value == approx(0.0));
    }
  }
}

TEST_CASE("miss_hit_factor single edge at half density") {
  for (int n : {6, 8}) {
    auto st = census::compute_stats(regular_square(n, n / 2, {{0, 0}}));
    CAPTURE(n);
    double target = -1.5 / (static_cast<double>(n) * n);
    auto miss =
        census::miss_hit_factor(st, n, n, MissHitMode::HostSemiregular,
                                Which::Miss);
    auto hit = census::miss_hit_factor(st, n, n, MissHitMode::HostSemiregular,
                                       Which::Hit);
    check_components(miss);
    check_components(hit);
    CHECK(miss.log_value == approx(target));
    CHECK(hit.log_value == approx(target));
  }
}

TEST_CASE("general and host-constant forms agree on constant margins") {
  std::vector<std::vector<Edge>> patterns = {
      {{0, 0}},
      {{0, 0}, {1, 1}, {2, 2}},
      {{0, 0}, {0, 1}, {1, 0}},
      {{0, 0}, {1, 3}, {4, 2}, {5, 5}},
  };
  for (const auto& pattern : patterns) {
    auto st = census::compute_stats(regular_square(8, 4, pattern));
    for (auto which : {Which::Miss, Which::Hit}) {
      auto general =
          census::miss_hit_factor(st, 8, 8, MissHitMode::General, which);
      auto reduced = census::miss_hit_factor(
          st, 8, 8, MissHitMode::HostSemiregular, which);
      CHECK(std::fabs(general.log_value - reduced.log_value) <= 1e-12);
    }
  }
}

TEST_CASE("pattern-constant form on a perfect matching") {
  std::vector<Edge> matching;
  for (int j = 0; j < 6; ++j) matching.emplace_back(j, j);
  auto st = census::compute_stats(regular_square(6, 3, matching));
  auto hit = census::miss_hit_factor(st, 6, 6,
                                     MissHitMode::PatternSemiregular,
                                     Which::Hit);
  check_components(hit);
  // x = y = 1 with lambda 1/2 leaves only the shape term (1-lambda)/(2*lambda).
  CHECK(hit.log_value == approx(0.5));
}

TEST_CASE("miss_hit_factor rejects a mode whose hypothesis fails") {
  auto skew = make_bip(2, 3, {2, 1}, {1, 1, 1}, {{0, 1}});
  auto st = census::compute_stats(skew);
  CHECK_THROWS_AS(census::miss_hit_factor(st, 2, 3,
                                          MissHitMode::HostSemiregular,
                                          Which::Miss),
                  std::invalid_argument);
  auto single = census::compute_stats(regular_square(4, 2, {{0, 0}}));
  CHECK_THROWS_AS(census::miss_hit_factor(single, 4, 4,
                                          MissHitMode::PatternSemiregular,
                                          Which::Hit),
                  std::invalid_argument);
}

TEST_CASE("hit factor nearly matches the avoided complement") {
  // Containment at density lambda mirrors avoidance at density 1-lambda;
  // the two closed forms agree up to their own error order.
  auto inst = regular_square(8, 3, {{0, 0}});
  auto st = census::compute_stats(inst);
  auto hit = census::miss_hit_factor(st, 8, 8, MissHitMode::General,
                                     Which::Hit);
  auto co = census::complement_margins(inst);
  auto cst = census::compute_stats(co);
  auto miss = census::miss_hit_factor(cst, 8, 8, MissHitMode::General,
                                      Which::Miss);
  CHECK(std::fabs(hit.log_value - miss.log_value) <= 2.0 / 8.0);
}

TEST_CASE("induced_prob on an empty window is zero") {
  auto base = census::compute_stats(regular_square(8, 4));
  auto win = census::compute_induced_stats(0, 0, {}, base.lambda);
  auto est = census::induced_prob(win, base, 8, 8, Kind::Bipartite);
  CHECK(est.log_value == approx(0.0));
}

TEST_CASE("induced_prob matches the display on a one-cell window") {
  auto base = census::compute_stats(regular_square(8, 4));
  auto win = census::compute_induced_stats(1, 1, {}, base.lambda);
  auto est = census::induced_prob(win, base, 8, 8, Kind::Bipartite);
  check_components(est);

  double lam = 0.5, A = 0.125, m = 8, n = 8;
  double w1 = -0.5, w2 = 0.25;
  double expected = std::log(1 - lam) +
                    (0.5 + 0.0) * (1 / m + 1 / n) -
                    w1 * w1 / (4 * A * m * n) -
                    (n + 1) * w2 / (4 * A * n * n) -
                    (m + 1) * w2 / (4 * A * m * m);
  CHECK(est.log_value == approx(expected));
}

TEST_CASE("induced_prob tracks the exact window probability") {
  auto host = regular_square(8, 4);
  auto base = census::compute_stats(host);
  auto exact_window_log = [&](const std::vector<Edge>& pattern) {
    census::ProbQuery q;
    q.mode = census::ProbQuery::Mode::Induced;
    q.window_rows = 2;
    q.window_cols = 2;
    q.pattern = pattern;
    return log_of_rational(census::prob_exact(host, q).value);
  };

  // The window corrections are asymptotic in n; at n = 8 they overshoot by
  // up to about 0.21 in the log for a 2x2 window.
  for (auto pattern : std::vector<std::vector<Edge>>{{}, {{0, 0}}}) {
    auto win = census::compute_induced_stats(2, 2, pattern, base.lambda);
    auto est = census::induced_prob(win, base, 8, 8, Kind::Bipartite);
    CAPTURE(pattern.size());
    CHECK(std::fabs(exact_window_log(pattern) - est.log_value) <= 0.25);
  }

  // A diagonal window pattern at half density has every centered moment
  // equal to zero, so only the window-size term remains and the estimate
  // lands within 0.01 of the exact value already at n = 8.
  std::vector<Edge> diagonal{{0, 0}, {1, 1}};
  auto win = census::compute_induced_stats(2, 2, diagonal, base.lambda);
  auto est = census::induced_prob(win, base, 8, 8, Kind::Bipartite);
  CHECK(std::fabs(exact_window_log(diagonal) - est.log_value) <= 0.01);
}

TEST_CASE("induced_prob digraph single-vertex window") {
  DigraphInstance dig;
  dig.n = 8;
  dig.s.assign(8, 4);
  dig.t.assign(8, 4);
  auto base = census::compute_stats(dig);
  double p = census::arc_density(dig);
  auto win = census::compute_induced_stats_digraph(1, {}, p);
  auto est = census::induced_prob(win, base, 8, 8, Kind::Digraph);
  check_components(est);
  CHECK(est.log_value == approx(1.0 / 8.0));
}

TEST_CASE("induced_prob rejects irregular hosts and stale windows") {
  auto skew = census::compute_stats(make_bip(2, 3, {2, 1}, {1, 1, 1}));
  auto win = census::compute_induced_stats(1, 1, {}, skew.lambda);
  CHECK_THROWS_AS(census::induced_prob(win, skew, 2, 3, Kind::Bipartite),
                  std::invalid_argument);

  auto base = census::compute_stats(regular_square(8, 4));
  auto off = census::compute_induced_stats(1, 1, {}, 0.3);
  CHECK_THROWS_AS(census::induced_prob(off, base, 8, 8, Kind::Bipartite),
                  std::invalid_argument);

  auto with_pattern = census::compute_stats(regular_square(8, 4, {{0, 0}}));
  auto win2 = census::compute_induced_stats(1, 1, {}, with_pattern.lambda);
  CHECK_THROWS_AS(
      census::induced_prob(win2, with_pattern, 8, 8, Kind::Bipartite),
      std::invalid_argument);
}

TEST_CASE("expected_isomorph_count of a perfect matching equals the expected "
          "permanent estimate") {
  auto host = census::compute_stats(regular_square(7, 3));
  census::PatternShape shape{1, 1, 7};
  BigCount class_size = 1;
  for (int i = 2; i <= 7; ++i) class_size *= i;
  auto iso = census::expected_isomorph_count(shape, class_size, host, 7, 7,
                                             census::IsoWhich::Contained,
                                             Kind::Bipartite);
  check_components(iso);
  auto ep = census::expected_permanent_estimate(7, host.lambda, 0.0, 0.0);
  check_components(ep);
  CHECK(iso.log_value == approx(ep.log_value));
}

TEST_CASE("expected_isomorph_count degenerate and linear behavior") {
  auto host = census::compute_stats(regular_square(8, 4));

  census::PatternShape empty{0, 0, 0};
  auto none = census::expected_isomorph_count(empty, 1, host, 8, 8,
                                              census::IsoWhich::Contained,
                                              Kind::Bipartite);
  CHECK(none.log_value == approx(0.0));

  // x = y = 2 kills the shape exponent; only the leading part remains.
  census::PatternShape sq{2, 2, 4};
  auto est = census::expected_isomorph_count(sq, 12, host, 8, 8,
                                             census::IsoWhich::Contained,
                                             Kind::Bipartite);
  CHECK(est.log_value == approx(std::log(12.0) + 4 * std::log(0.5)));

  auto doubled = census::expected_isomorph_count(sq, 24, host, 8, 8,
                                                 census::IsoWhich::Contained,
                                                 Kind::Bipartite);
  CHECK(doubled.log_value - est.log_value == approx(std::log(2.0)));

  // Disjoint variant swaps the density roles.
  census::PatternShape one{1, 1, 8};
  auto dis = census::expected_isomorph_count(one, 1, host, 8, 8,
                                             census::IsoWhich::Disjoint,
                                             Kind::Bipartite);
  double lam = host.lambda;
  CHECK(dis.log_value ==
        approx(8 * std::log(1 - lam) + lam / (2 * (1 - lam))));
}

TEST_CASE("expected_isomorph_count digraph shape rules") {
  DigraphInstance dig;
  dig.n = 6;
  dig.s.assign(6, 2);
  dig.t.assign(6, 2);
  auto host = census::compute_stats(dig);

  // x = 2 zeroes the digraph shape exponent x*(x-2).
  census::PatternShape sq{2, 2, 6};
  auto est = census::expected_isomorph_count(sq, 10, host, 6, 6,
                                             census::IsoWhich::Contained,
                                             Kind::Digraph);
  check_components(est);
  double p = 2.0 / 5.0;
  CHECK(est.log_value == approx(std::log(10.0) + 6 * std::log(p)));

  census::PatternShape bad{1, 2, 4};
  CHECK_THROWS_AS(census::expected_isomorph_count(bad, 1, host, 6, 6,
                                                  census::IsoWhich::Contained,
                                                  Kind::Digraph),
                  std::invalid_argument);
}

TEST_CASE("expected_permanent_estimate pinned value and errors") {
  auto est = census::expected_permanent_estimate(3, 0.5, 0.0, 0.0);
  check_components(est);
  CHECK(est.log_value == approx(std::log(6.0) - 3 * std::log(2.0) + 0.5));

  CHECK_THROWS_AS(census::expected_permanent_estimate(3, 0.0, 0.0, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(census::expected_permanent_estimate(3, 1.0, 0.0, 0.0),
                  std::domain_error);
}

TEST_CASE("expected_permanent_estimate stays near the exact average") {
  for (int n : {4, 6}) {
    auto inst = regular_square(n, n / 2);
    auto exact = census::expected_permanent_exact(inst);
    double exact_log = log_of_rational(exact);
    auto est = census::expected_permanent_estimate(n, 0.5, 0.0, 0.0);
    CAPTURE(n);
    CHECK(std::fabs(exact_log - est.log_value) <= 0.3);
  }
}

TEST_CASE("permanent_bounds pinned values") {
  auto b32 = census::permanent_bounds(3, 2);
  CHECK(b32.vdw_log == approx(std::log(16.0 / 9.0)));
  CHECK(b32.gurvits_log == approx(std::log(2.0)));
  CHECK(b32.minc_bregman_log == approx(1.5 * std::log(2.0)));

  // Every member of the (3, 2) class has permanent exactly 2.
  auto inst = regular_square(3, 2);
  census::for_each_member(inst, [&](const auto& mat) {
    CHECK(census::permanent_exact(mat) == 2);
    return true;
  });

  auto b21 = census::permanent_bounds(2, 1);
  CHECK(b21.vdw_log == approx(std::log(0.5)));
  CHECK(b21.gurvits_log == approx(0.0));
  CHECK(b21.minc_bregman_log == approx(0.0));

  CHECK_THROWS_AS(census::permanent_bounds(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(census::permanent_bounds(3, 3), std::invalid_argument);
}

TEST_CASE("permanent_bounds ordering sweep") {
  for (int n = 2; n <= 50; ++n) {
    for (int s = 1; s < n; ++s) {
      auto b = census::permanent_bounds(n, s);
      CAPTURE(n);
      CAPTURE(s);
      CHECK(b.vdw_log <= b.gurvits_log + 1e-9);
      CHECK(b.gurvits_log <= b.minc_bregman_log + 1e-9);
    }
  }
}

TEST_CASE("averaging_normalize pinned traces") {
  auto r1 = census::averaging_normalize({1.0, -1.0});
  CHECK(r1.steps == 1);
  CHECK(r1.z == std::vector<double>{0.0, 0.0});
  CHECK(r1.trace.size() == 1);
  CHECK(r1.trace[0].max_index == 0);
  CHECK(r1.trace[0].min_index == 1);
  CHECK(r1.trace[0].new_value == 0.0);

  auto r2 = census::averaging_normalize({1.0, 0.0, -1.0});
  CHECK(r2.steps == 1);
  CHECK(r2.z == std::vector<double>{0.0, 0.0, 0.0});

  auto r3 = census::averaging_normalize({0.6, 0.6, -0.6, -0.6});
  CHECK(r3.steps == 2);
  for (double v : r3.z) CHECK(v == 0.0);

  auto r4 = census::averaging_normalize({0.25, -0.25});
  CHECK(r4.steps == 0);
  CHECK(r4.z == std::vector<double>{0.25, -0.25});
}

TEST_CASE("averaging_normalize invariants on seeded vectors") {
  std::mt19937_64 rng(515253);
  for (int trial = 0; trial < 60; ++trial) {
    int half = 1 + static_cast<int>(rng() % 12);
    std::vector<double> z;
    for (int i = 0; i < half; ++i) {
      double v = ((rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0;
      z.push_back(v);
      z.push_back(-v);
    }
    if (rng() & 1u) z.push_back(0.0);
    std::shuffle(z.begin(), z.end(), rng);

    auto res = census::averaging_normalize(z);
    CAPTURE(trial);
    int n = static_cast<int>(z.size());
    CHECK(res.steps <= std::max((2 * n - 1) / 3, 1));
    for (double v : res.z) {
      CHECK(v >= -0.5);
      CHECK(v <= 0.5);
    }
    BigRational in_sum = 0, out_sum = 0;
    for (double v : z) in_sum += BigRational(v);
    for (const auto& v : res.z_exact) out_sum += v;
    CHECK(in_sum == out_sum);
    // The spread of the touched extremes never grows along the trace.
    for (std::size_t i = 1; i < res.trace.size(); ++i) {
      double prev = res.trace[i - 1].max_value - res.trace[i - 1].min_value;
      double cur = res.trace[i].max_value - res.trace[i].min_value;
      CHECK(cur <= prev + 1e-15);
    }
  }
}

TEST_CASE("averaging_normalize input validation") {
  CHECK_THROWS_AS(census::averaging_normalize({0.5, 0.6}),
                  std::invalid_argument);
  CHECK_THROWS_AS(census::averaging_normalize({1.5, -1.5}),
                  std::invalid_argument);
}
