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

#include "census/exact.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace census {

namespace {

constexpr int kBruteCellLimit = 28;
constexpr int kAutoBruteCellLimit = 20;
constexpr int kDpClassLimit = 14;

BigCount big_factorial(long long n) {
  BigCount f = 1;
  for (long long i = 2; i <= n; ++i) f *= i;
  return f;
}

// ----------------------------------------------------------------- brute

// Plain row-by-row search. Deliberately shares nothing with the dp engine
// so the two can vouch for each other.
class BruteCounter {
 public:
  explicit BruteCounter(const BipartiteInstance& inst)
      : m_(inst.m), n_(inst.n), s_(inst.s), res_(inst.t), frow_(inst.m, 0) {
    for (const auto& [j, k] : inst.forbidden) frow_[j] |= (1u << k);
  }

  BigCount run() {
    place_row(0);
    return BigCount(count_);
  }

 private:
  void place_row(int j) {
    if (j == m_ - 1) {
      // The last row is forced by the residuals.
      int need = s_[j];
      for (int k = 0; k < n_; ++k) {
        if (res_[k] > 1) return;
        if (res_[k] == 1) {
          if ((frow_[j] >> k) & 1u) return;
          --need;
          if (need < 0) return;
        }
      }
      if (need == 0) ++count_;
      return;
    }
    pick(j, 0, s_[j]);
  }

  // Chooses the remaining `need` ones of row j among columns k..n-1.
  void pick(int j, int k, int need) {
    if (need == 0) {
      for (int c = k; c < n_; ++c) {
        if (res_[c] > m_ - 1 - j) return;
      }
      place_row(j + 1);
      return;
    }
    if (n_ - k < need) return;
    if (res_[k] >= 1 && !((frow_[j] >> k) & 1u)) {
      --res_[k];
      pick(j, k + 1, need - 1);
      ++res_[k];
    }
    if (res_[k] <= m_ - 1 - j) {
      pick(j, k + 1, need);
    }
  }

  int m_, n_;
  const std::vector<int>& s_;
  std::vector<int> res_;
  std::vector<uint32_t> frow_;
  unsigned long long count_ = 0;
};

// -------------------------------------------------------------------- dp

// Column-by-column count. Rows are grouped into classes by (row sum,
// forbidden column set); at each depth classes whose unprocessed forbidden
// columns coincide merge into a group, and rows of one group with equal
// residual are interchangeable. The memoized state is the per-group
// histogram of residuals.
class DpCounter {
 public:
  using Bucket = std::pair<int, int>;  // (residual, rows at that residual)
  using GroupState = std::vector<Bucket>;
  using State = std::vector<GroupState>;

  DpCounter(const BipartiteInstance& inst, std::size_t state_limit)
      : n_(inst.n), state_limit_(state_limit) {
    // Columns carrying forbidden cells go first so classes merge early.
    std::vector<int> y(inst.n, 0);
    for (const auto& [j, k] : inst.forbidden) ++y[k];
    for (int k = 0; k < inst.n; ++k) {
      if (y[k] > 0) cols_.push_back(k);
    }
    for (int k = 0; k < inst.n; ++k) {
      if (y[k] == 0) cols_.push_back(k);
    }
    std::vector<int> col_pos(inst.n);
    for (int p = 0; p < inst.n; ++p) col_pos[cols_[p]] = p;
    t_order_.resize(inst.n);
    for (int p = 0; p < inst.n; ++p) t_order_[p] = inst.t[cols_[p]];

    // Static row classes.
    std::vector<std::vector<int>> row_forbidden(inst.m);
    for (const auto& [j, k] : inst.forbidden) {
      row_forbidden[j].push_back(col_pos[k]);
    }
    std::map<std::pair<int, std::vector<int>>, int> class_ids;
    std::vector<int> class_res0;
    std::vector<int> class_rows;
    std::vector<std::vector<int>> class_forbidden;
    for (int j = 0; j < inst.m; ++j) {
      auto fb = row_forbidden[j];
      std::sort(fb.begin(), fb.end());
      auto key = std::make_pair(inst.s[j], fb);
      auto [it, inserted] =
          class_ids.emplace(key, static_cast<int>(class_res0.size()));
      if (inserted) {
        class_res0.push_back(inst.s[j]);
        class_rows.push_back(0);
        class_forbidden.push_back(fb);
      }
      ++class_rows[it->second];
    }
    num_classes_ = static_cast<int>(class_res0.size());
    if (num_classes_ > kDpClassLimit) {
      throw ResourceLimitError(
          "dp engine: " + std::to_string(num_classes_) +
          " row classes after merging, limit is " +
          std::to_string(kDpClassLimit));
    }

    // Depth tables: group ids, per-column eligibility, remaining capacity.
    class_group_.assign(n_ + 1, std::vector<int>(num_classes_, 0));
    groups_at_.assign(n_ + 1, 0);
    group_blocked_.assign(n_ + 1, {});
    group_cap_.assign(n_ + 1, {});
    next_group_.assign(n_, {});
    for (int p = 0; p <= n_; ++p) {
      std::map<std::vector<int>, int> group_ids;
      std::vector<std::vector<int>> group_remaining;
      for (int c = 0; c < num_classes_; ++c) {
        std::vector<int> remaining;
        for (int q : class_forbidden[c]) {
          if (q >= p) remaining.push_back(q);
        }
        auto [it, inserted] =
            group_ids.emplace(remaining, static_cast<int>(group_remaining.size()));
        if (inserted) group_remaining.push_back(remaining);
        class_group_[p][c] = it->second;
      }
      groups_at_[p] = static_cast<int>(group_remaining.size());
      group_blocked_[p].resize(groups_at_[p]);
      group_cap_[p].resize(groups_at_[p]);
      for (int g = 0; g < groups_at_[p]; ++g) {
        const auto& rem = group_remaining[g];
        group_blocked_[p][g] =
            p < n_ && std::binary_search(rem.begin(), rem.end(), p);
        group_cap_[p][g] = (n_ - p) - static_cast<int>(rem.size());
      }
    }
    for (int p = 0; p < n_; ++p) {
      next_group_[p].resize(groups_at_[p]);
      for (int c = 0; c < num_classes_; ++c) {
        next_group_[p][class_group_[p][c]] = class_group_[p + 1][c];
      }
    }

    initial_.assign(groups_at_[0], {});
    std::vector<std::map<int, int>> acc(groups_at_[0]);
    for (int c = 0; c < num_classes_; ++c) {
      acc[class_group_[0][c]][class_res0[c]] += class_rows[c];
    }
    for (int g = 0; g < groups_at_[0]; ++g) {
      initial_[g].assign(acc[g].begin(), acc[g].end());
    }
    memo_.resize(n_ + 1);
  }

  BigCount run() {
    // A row demanding more than its allowed columns kills the count.
    for (int g = 0; g < groups_at_[0]; ++g) {
      for (const auto& [r, cnt] : initial_[g]) {
        if (r > group_cap_[0][g]) return BigCount(0);
      }
    }
    return count_at(0, initial_);
  }

 private:
  struct Item {
    int group;      // group id at the current depth
    int residual;   // residual before this column, >= 1
    int cnt;        // interchangeable rows in the bucket
    int min_take;   // cnt when skipping would strand the rows, else 0
  };

  static void encode16(std::string& out, int v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
  }

  static std::string encode_state(const State& st) {
    std::string key;
    for (const auto& g : st) {
      for (const auto& [r, c] : g) {
        encode16(key, r);
        encode16(key, c);
      }
      encode16(key, 0xFFFF);
    }
    return key;
  }

  const BigCount& binom(int nn, int kk) {
    auto& row = choose_[nn];
    if (row.empty()) {
      row.resize(nn + 1);
      row[0] = 1;
      for (int k = 1; k <= nn; ++k) {
        row[k] = row[k - 1] * (nn - k + 1) / k;
      }
    }
    return row[kk];
  }

  BigCount count_at(int p, const State& state) {
    if (p == n_) {
      for (const auto& g : state) {
        for (const auto& [r, cnt] : g) {
          if (r != 0) return BigCount(0);
        }
      }
      return BigCount(1);
    }
    std::string key = encode_state(state);
    auto& table = memo_[p];
    if (auto it = table.find(key); it != table.end()) return it->second;

    const int T = t_order_[p];
    std::vector<Item> items;
    for (int g = 0; g < static_cast<int>(state.size()); ++g) {
      if (group_blocked_[p][g]) continue;
      int cap_after = group_cap_[p + 1][next_group_[p][g]];
      for (const auto& [r, cnt] : state[g]) {
        if (r == 0) continue;
        items.push_back({g, r, cnt, r > cap_after ? cnt : 0});
      }
    }
    std::size_t ni = items.size();
    std::vector<int> suffix_max(ni + 1, 0), suffix_min(ni + 1, 0);
    for (std::size_t i = ni; i-- > 0;) {
      suffix_max[i] = suffix_max[i + 1] + items[i].cnt;
      suffix_min[i] = suffix_min[i + 1] + items[i].min_take;
    }

    BigCount total = 0;
    std::vector<int> take(ni, 0);
    // Depth-first over per-bucket take counts; bounds keep every branch
    // completable.
    auto rec = [&](auto&& self, std::size_t i, int remaining,
                   const BigCount& ways) -> void {
      if (i == ni) {
        if (remaining == 0) total += ways * count_at(p + 1, child(p, state, take));
        return;
      }
      const Item& it = items[i];
      int lo = std::max(it.min_take, remaining - suffix_max[i + 1]);
      int hi = std::min(it.cnt, remaining - suffix_min[i + 1]);
      for (int u = lo; u <= hi; ++u) {
        take[i] = u;
        self(self, i + 1, remaining - u, ways * binom(it.cnt, u));
      }
      take[i] = 0;
    };
    if (T <= suffix_max[0] && T >= suffix_min[0]) {
      rec(rec, 0, T, BigCount(1));
    }

    if (++states_ > state_limit_) {
      throw ResourceLimitError("dp engine: state limit of " +
                               std::to_string(state_limit_) + " exceeded");
    }
    return table.emplace(std::move(key), std::move(total)).first->second;
  }

  State child(int p, const State& state, const std::vector<int>& take) const {
    std::vector<std::map<int, int>> acc(groups_at_[p + 1]);
    std::size_t item_idx = 0;
    for (int g = 0; g < static_cast<int>(state.size()); ++g) {
      int ng = next_group_[p][g];
      bool eligible = !group_blocked_[p][g];
      for (const auto& [r, cnt] : state[g]) {
        int taken = 0;
        if (eligible && r >= 1) {
          taken = take[item_idx++];
        }
        if (taken > 0) acc[ng][r - 1] += taken;
        if (cnt - taken > 0) acc[ng][r] += cnt - taken;
      }
    }
    State out(groups_at_[p + 1]);
    for (int g = 0; g < groups_at_[p + 1]; ++g) {
      out[g].assign(acc[g].begin(), acc[g].end());
    }
    return out;
  }

  int n_;
  std::size_t state_limit_;
  std::size_t states_ = 0;
  int num_classes_ = 0;
  std::vector<int> cols_;
  std::vector<int> t_order_;
  std::vector<std::vector<int>> class_group_;   // [depth][class] -> group
  std::vector<int> groups_at_;
  std::vector<std::vector<char>> group_blocked_;
  std::vector<std::vector<int>> group_cap_;
  std::vector<std::vector<int>> next_group_;
  State initial_;
  std::vector<std::unordered_map<std::string, BigCount>> memo_;
  std::map<int, std::vector<BigCount>> choose_;
};

BigCount count_dp(const BipartiteInstance& inst, const CountOptions& opts) {
  DpCounter counter(inst, opts.state_limit);
  return counter.run();
}

}  // namespace

BigCount count_exact(const BipartiteInstance& inst, const CountOptions& opts) {
  validate(inst);
  long long cells = static_cast<long long>(inst.m) * inst.n;
  CountEngine engine = opts.engine;
  if (engine == CountEngine::Auto) {
    engine = cells <= kAutoBruteCellLimit ? CountEngine::Brute : CountEngine::Dp;
  }
  if (engine == CountEngine::Brute) {
    if (cells > kBruteCellLimit) {
      throw std::invalid_argument("brute engine limited to m*n <= " +
                                  std::to_string(kBruteCellLimit));
    }
    return BruteCounter(inst).run();
  }
  return count_dp(inst, opts);
}

BigCount count_exact_digraph(const DigraphInstance& dig,
                             const CountOptions& opts) {
  return count_exact(digraph_to_bipartite(dig), opts);
}

void for_each_member(
    const BipartiteInstance& inst,
    const std::function<bool(const std::vector<std::vector<uint8_t>>&)>& visit) {
  validate(inst);
  if (inst.n > 32 || static_cast<long long>(inst.m) * inst.n > 64) {
    throw std::invalid_argument(
        "for_each_member limited to n <= 32 and m*n <= 64");
  }
  const int m = inst.m, n = inst.n;
  std::vector<uint32_t> frow(m, 0);
  for (const auto& [j, k] : inst.forbidden) frow[j] |= (1u << k);
  // allowed_after[j][k]: allowed cells of row j at columns >= k
  std::vector<std::vector<int>> allowed_after(m, std::vector<int>(n + 1, 0));
  for (int j = 0; j < m; ++j) {
    for (int k = n; k-- > 0;) {
      allowed_after[j][k] =
          allowed_after[j][k + 1] + (((frow[j] >> k) & 1u) ? 0 : 1);
    }
  }

  std::vector<std::vector<uint8_t>> mat(m, std::vector<uint8_t>(n, 0));
  std::vector<int> res(inst.t);
  bool stopped = false;

  // Emits entries with 0 tried before 1, so matrices appear in ascending
  // row-major order of their 0-1 strings.
  auto pick = [&](auto&& self, auto&& next_row, int j, int k, int need) -> void {
    if (stopped) return;
    if (need == 0) {
      for (int c = k; c < n; ++c) {
        if (res[c] > m - 1 - j) return;
        mat[j][c] = 0;
      }
      next_row(next_row, self, j + 1);
      return;
    }
    if (allowed_after[j][k] < need) return;
    if (res[k] <= m - 1 - j) {
      mat[j][k] = 0;
      self(self, next_row, j, k + 1, need);
      if (stopped) return;
    }
    if (res[k] >= 1 && !((frow[j] >> k) & 1u)) {
      mat[j][k] = 1;
      --res[k];
      self(self, next_row, j, k + 1, need - 1);
      ++res[k];
    }
  };
  auto row = [&](auto&& self, auto&& pick_fn, int j) -> void {
    if (stopped) return;
    if (j == m) {
      if (!visit(mat)) stopped = true;
      return;
    }
    pick_fn(pick_fn, self, j, 0, inst.s[j]);
  };
  row(row, pick, 0);
}

BigCount permanent_exact(const std::vector<std::vector<uint8_t>>& mat) {
  const int n = static_cast<int>(mat.size());
  if (n == 0) return BigCount(1);
  if (n > 30) {
    throw std::invalid_argument("permanent limited to n <= 30");
  }
  for (const auto& row : mat) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("permanent requires a square matrix");
    }
    for (uint8_t v : row) {
      if (v > 1) {
        throw std::invalid_argument("permanent requires 0-1 entries");
      }
    }
  }

  // Inclusion-exclusion over column subsets, visited in Gray-code order so
  // one row-sum update per step.
  std::vector<long long> rs(n, 0);
  BigCount total = 0;
  const uint64_t full = (n == 64) ? ~0ull : (1ull << n);
  for (uint64_t k = 1; k < full; ++k) {
    int bit = __builtin_ctzll(k);
    uint64_t gray = k ^ (k >> 1);
    bool added = (gray >> bit) & 1ull;
    for (int i = 0; i < n; ++i) {
      rs[i] += added ? mat[i][bit] : -static_cast<long long>(mat[i][bit]);
    }
    bool zero = false;
    for (int i = 0; i < n; ++i) {
      if (rs[i] == 0) {
        zero = true;
        break;
      }
    }
    if (zero) continue;
    // Chunk the product: 12 factors of at most 30 stay below 2^63.
    BigCount term = 1;
    uint64_t chunk = 1;
    int in_chunk = 0;
    for (int i = 0; i < n; ++i) {
      chunk *= static_cast<uint64_t>(rs[i]);
      if (++in_chunk == 12) {
        term *= chunk;
        chunk = 1;
        in_chunk = 0;
      }
    }
    if (in_chunk > 0) term *= chunk;
    int parity = (n - __builtin_popcountll(gray)) & 1;
    if (parity) {
      total -= term;
    } else {
      total += term;
    }
  }
  return total;
}

namespace {

std::vector<Edge> checked_pattern(int m, int n, std::vector<Edge> pattern) {
  std::sort(pattern.begin(), pattern.end());
  if (std::adjacent_find(pattern.begin(), pattern.end()) != pattern.end()) {
    throw std::invalid_argument("pattern has duplicate cells");
  }
  for (const auto& [j, k] : pattern) {
    if (j < 0 || j >= m || k < 0 || k >= n) {
      throw std::invalid_argument("pattern cell out of range");
    }
  }
  return pattern;
}

}  // namespace

ExactProbability prob_exact(const BipartiteInstance& inst,
                            const ProbQuery& query, const CountOptions& opts) {
  validate(inst);
  if (!inst.forbidden.empty()) {
    throw std::invalid_argument(
        "prob_exact: the host instance must have no forbidden cells");
  }
  auto pattern = checked_pattern(inst.m, inst.n, query.pattern);
  BigCount den = count_exact(inst, opts);
  if (den == 0) {
    throw std::domain_error("prob_exact: the matrix class is empty");
  }

  std::vector<int> x(inst.m, 0), y(inst.n, 0);
  for (const auto& [j, k] : pattern) {
    ++x[j];
    ++y[k];
  }

  BigCount num;
  switch (query.mode) {
    case ProbQuery::Mode::Disjoint: {
      BipartiteInstance sub = inst;
      sub.forbidden = pattern;
      num = count_exact(sub, opts);
      break;
    }
    case ProbQuery::Mode::Contains: {
      BipartiteInstance sub = inst;
      for (int j = 0; j < inst.m; ++j) {
        if (inst.s[j] < x[j]) {
          throw std::invalid_argument(
              "contains mode requires s[j] >= pattern row degree at row " +
              std::to_string(j));
        }
        sub.s[j] = inst.s[j] - x[j];
      }
      for (int k = 0; k < inst.n; ++k) {
        if (inst.t[k] < y[k]) {
          throw std::invalid_argument(
              "contains mode requires t[k] >= pattern column degree at column " +
              std::to_string(k));
        }
        sub.t[k] = inst.t[k] - y[k];
      }
      sub.forbidden = pattern;
      num = count_exact(sub, opts);
      break;
    }
    case ProbQuery::Mode::Induced: {
      int J = query.window_rows, K = query.window_cols;
      if (J < 0 || J > inst.m || K < 0 || K > inst.n) {
        throw std::invalid_argument("induced window out of range");
      }
      for (const auto& [j, k] : pattern) {
        if (j >= J || k >= K) {
          throw std::invalid_argument(
              "induced mode requires the pattern inside the window");
        }
      }
      bool infeasible = false;
      BipartiteInstance sub = inst;
      for (int j = 0; j < inst.m; ++j) {
        if (inst.s[j] < x[j]) infeasible = true;
        sub.s[j] = std::max(inst.s[j] - x[j], 0);
      }
      for (int k = 0; k < inst.n; ++k) {
        if (inst.t[k] < y[k]) infeasible = true;
        sub.t[k] = std::max(inst.t[k] - y[k], 0);
      }
      if (infeasible) {
        num = 0;
        break;
      }
      sub.forbidden.clear();
      for (int j = 0; j < J; ++j) {
        for (int k = 0; k < K; ++k) {
          sub.forbidden.emplace_back(j, k);
        }
      }
      num = count_exact(sub, opts);
      break;
    }
  }
  return ExactProbability::make(std::move(num), std::move(den));
}

BigRational expected_permanent_exact(const BipartiteInstance& inst,
                                     EPermPath path, const CountOptions& opts) {
  validate(inst);
  if (inst.m != inst.n) {
    throw std::invalid_argument("expected permanent requires a square class");
  }
  if (!inst.forbidden.empty()) {
    throw std::invalid_argument(
        "expected permanent requires no forbidden cells");
  }
  const int n = inst.n;
  auto constant = [](const std::vector<int>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<int>()) ==
           v.end();
  };
  bool const_margins = constant(inst.s) && constant(inst.t);
  if (path == EPermPath::Auto) {
    if (const_margins && n <= 12) {
      path = EPermPath::Symmetry;
    } else if (n <= 7) {
      path = EPermPath::Enumeration;
    } else {
      throw std::invalid_argument(
          "expected permanent: instance outside both evaluation paths");
    }
  }
  if (path == EPermPath::Symmetry) {
    if (!const_margins) {
      throw std::invalid_argument("symmetry path requires constant margins");
    }
    if (n > 12) {
      throw std::invalid_argument("symmetry path limited to n <= 12");
    }
    int sv = inst.s[0];
    if (sv == 0) return BigRational(0);
    BigCount den = count_exact(inst, opts);
    if (den == 0) {
      throw std::domain_error("expected permanent: the matrix class is empty");
    }
    // Placements of an identity-positioned permutation are in bijection with
    // the class at margins lowered by one avoiding the diagonal; by row and
    // column symmetry every permutation placement is equally likely.
    BipartiteInstance sub = inst;
    for (auto& v : sub.s) --v;
    for (auto& v : sub.t) --v;
    for (int i = 0; i < n; ++i) sub.forbidden.emplace_back(i, i);
    BigCount num = count_exact(sub, opts);
    return BigRational(big_factorial(n) * num, den);
  }
  if (n > 7) {
    throw std::invalid_argument("enumeration path limited to n <= 7");
  }
  BigCount total = 0;
  BigCount members = 0;
  for_each_member(inst, [&](const std::vector<std::vector<uint8_t>>& mat) {
    total += permanent_exact(mat);
    ++members;
    return true;
  });
  if (members == 0) {
    throw std::domain_error("expected permanent: the matrix class is empty");
  }
  return BigRational(total, members);
}

namespace {

constexpr int kAutIncidentLimit = 10;

// Stabilizer order of the incident part: pairs of row/column permutations
// preserving the edge set. Rows permute within equal-degree classes; for a
// fixed row image the valid column permutations factor over groups of
// columns with equal neighborhoods.
BigCount aut_incident_bipartite(const std::vector<uint16_t>& col_masks,
                                const std::vector<int>& row_deg) {
  const int ir = static_cast<int>(row_deg.size());
  std::map<uint16_t, int> orig_count;
  for (uint16_t mask : col_masks) ++orig_count[mask];

  BigCount total = 0;
  std::vector<int> g(ir, -1);
  std::vector<char> used(ir, 0);
  auto complete = [&]() {
    std::map<uint16_t, int> remapped;
    for (uint16_t mask : col_masks) {
      uint16_t out = 0;
      for (int r = 0; r < ir; ++r) {
        if ((mask >> r) & 1u) out |= static_cast<uint16_t>(1u << g[r]);
      }
      ++remapped[out];
    }
    if (remapped != orig_count) return;
    BigCount ways = 1;
    for (const auto& [mask, cnt] : remapped) ways *= big_factorial(cnt);
    total += ways;
  };
  auto rec = [&](auto&& self, int r) -> void {
    if (r == ir) {
      complete();
      return;
    }
    for (int img = 0; img < ir; ++img) {
      if (used[img] || row_deg[img] != row_deg[r]) continue;
      used[img] = 1;
      g[r] = img;
      self(self, r + 1);
      used[img] = 0;
    }
  };
  rec(rec, 0);
  return total;
}

}  // namespace

BigCount aut_count(int m, int n, const std::vector<Edge>& pattern) {
  if (m < 0 || n < 0) {
    throw std::invalid_argument("aut_count: negative dimensions");
  }
  auto cells = checked_pattern(m, n, pattern);
  std::vector<int> rows, cols;
  for (const auto& [j, k] : cells) {
    rows.push_back(j);
    cols.push_back(k);
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  const int ir = static_cast<int>(rows.size());
  const int ic = static_cast<int>(cols.size());
  if (ir > kAutIncidentLimit || ic > kAutIncidentLimit) {
    throw std::invalid_argument("aut_count: more than " +
                                std::to_string(kAutIncidentLimit) +
                                " incident vertices on one side");
  }

  std::vector<uint16_t> col_masks(ic, 0);
  std::vector<int> row_deg(ir, 0);
  for (const auto& [j, k] : cells) {
    int rj = static_cast<int>(std::lower_bound(rows.begin(), rows.end(), j) -
                              rows.begin());
    int ck = static_cast<int>(std::lower_bound(cols.begin(), cols.end(), k) -
                              cols.begin());
    col_masks[ck] |= static_cast<uint16_t>(1u << rj);
    ++row_deg[rj];
  }

  BigCount incident = aut_incident_bipartite(col_masks, row_deg);
  return incident * big_factorial(m - ir) * big_factorial(n - ic);
}

BigCount aut_count_digraph(int n, const std::vector<Edge>& arcs) {
  if (n < 0) {
    throw std::invalid_argument("aut_count_digraph: negative size");
  }
  auto cells = checked_pattern(n, n, arcs);
  for (const auto& [u, v] : cells) {
    if (u == v) {
      throw std::invalid_argument("aut_count_digraph: loop arc");
    }
  }
  std::vector<int> verts;
  for (const auto& [u, v] : cells) {
    verts.push_back(u);
    verts.push_back(v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  const int iv = static_cast<int>(verts.size());
  if (iv > kAutIncidentLimit) {
    throw std::invalid_argument("aut_count_digraph: more than " +
                                std::to_string(kAutIncidentLimit) +
                                " incident vertices");
  }

  std::vector<std::pair<int, int>> local_arcs;
  std::vector<std::pair<int, int>> deg(iv, {0, 0});
  auto index_of = [&](int v) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) -
                            verts.begin());
  };
  std::vector<std::vector<char>> has_arc(iv, std::vector<char>(iv, 0));
  for (const auto& [u, v] : cells) {
    int a = index_of(u), b = index_of(v);
    has_arc[a][b] = 1;
    ++deg[a].first;
    ++deg[b].second;
    local_arcs.emplace_back(a, b);
  }

  unsigned long long incident = 0;
  std::vector<int> pi(iv, -1);
  std::vector<char> used(iv, 0);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == iv) {
      for (const auto& [a, b] : local_arcs) {
        if (!has_arc[pi[a]][pi[b]]) return;
      }
      ++incident;
      return;
    }
    for (int img = 0; img < iv; ++img) {
      if (used[img] || deg[img] != deg[v]) continue;
      used[img] = 1;
      pi[v] = img;
      self(self, v + 1);
      used[img] = 0;
    }
  };
  rec(rec, 0);
  return BigCount(incident) * big_factorial(n - iv);
}

}  // namespace census
