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

#include "census/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "census/asymptotics.hpp"
#include "census/bigint.hpp"
#include "census/saddle.hpp"
#include "census/stats.hpp"

namespace census {

namespace {

uint64_t splitmix64(uint64_t v) {
  v += 0x9E3779B97F4A7C15ull;
  v = (v ^ (v >> 30)) * 0xBF58476D1CE4E5B9ull;
  v = (v ^ (v >> 27)) * 0x94D049BB133111EBull;
  return v ^ (v >> 31);
}

}  // namespace

uint64_t CounterRng::next_u64() {
  return splitmix64(splitmix64(splitmix64(seed_) ^ stream_) ^ counter_++);
}

uint64_t CounterRng::next_below(uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("next_below: bound must be positive");
  }
  const uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

namespace {

using nlohmann::json;

long long target_edges(const SweepConfig& cfg, int m, int n) {
  if (cfg.density_den <= 0 || cfg.density_num < 0 ||
      cfg.density_num > cfg.density_den) {
    throw std::invalid_argument("density must be a fraction in [0, 1]");
  }
  const long long cells = static_cast<long long>(m) * n;
  const long long scaled = cfg.density_num * cells;
  if (scaled % cfg.density_den != 0) {
    throw std::domain_error("density " + std::to_string(cfg.density_num) +
                            "/" + std::to_string(cfg.density_den) +
                            " gives a non-integral edge count at size " +
                            std::to_string(m) + "x" + std::to_string(n));
  }
  return scaled / cfg.density_den;
}

// Steps tail entries by one until the sum matches, staying inside [0, hi].
void repair_margins(std::vector<int>& v, long long target, int hi,
                    const char* side) {
  long long diff = std::accumulate(v.begin(), v.end(), 0ll) - target;
  while (diff != 0) {
    bool moved = false;
    for (int i = static_cast<int>(v.size()) - 1; i >= 0 && diff != 0; --i) {
      if (diff > 0 && v[i] > 0) {
        --v[i];
        --diff;
        moved = true;
      } else if (diff < 0 && v[i] < hi) {
        ++v[i];
        ++diff;
        moved = true;
      }
    }
    if (!moved) {
      throw std::domain_error(
          std::string("margin repair stuck: ") + side + " entry " +
          std::to_string(v.size() - 1) + " is pinned at its bound");
    }
  }
}

std::vector<int> sample_distinct(CounterRng& rng, int count, int range) {
  std::vector<int> pool(range);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < count; ++i) {
    int j = i + static_cast<int>(rng.next_below(range - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

std::vector<Edge> sample_pattern(const SweepConfig& cfg, CounterRng& rng,
                                 int m, int n) {
  switch (cfg.pattern) {
    case PatternKind::None:
      return {};
    case PatternKind::SingleEdge: {
      int j = static_cast<int>(rng.next_below(m));
      int k = static_cast<int>(rng.next_below(n));
      return {{j, k}};
    }
    case PatternKind::MatchingK: {
      if (cfg.matching_k < 0 || cfg.matching_k > std::min(m, n)) {
        throw std::invalid_argument("matching_k out of range for size " +
                                    std::to_string(m) + "x" +
                                    std::to_string(n));
      }
      auto rows = sample_distinct(rng, cfg.matching_k, m);
      auto cols = sample_distinct(rng, cfg.matching_k, n);
      std::vector<Edge> edges;
      edges.reserve(cfg.matching_k);
      for (int i = 0; i < cfg.matching_k; ++i) {
        edges.emplace_back(rows[i], cols[i]);
      }
      std::sort(edges.begin(), edges.end());
      return edges;
    }
    case PatternKind::Custom:
      return cfg.pattern_edges;
  }
  return {};
}

std::string pattern_label(const SweepConfig& cfg,
                          const BipartiteInstance& inst) {
  if (cfg.family == Family::Custom) {
    return inst.forbidden.empty() ? "none" : "custom";
  }
  switch (cfg.pattern) {
    case PatternKind::None:
      return "none";
    case PatternKind::SingleEdge:
      return "single_edge";
    case PatternKind::MatchingK:
      return "matching_" + std::to_string(cfg.matching_k);
    case PatternKind::Custom:
      return "custom";
  }
  return "none";
}

double elapsed_ms(std::chrono::steady_clock::time_point from) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - from)
      .count();
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

BipartiteInstance generate_instance(const SweepConfig& cfg, int index) {
  if (index < 0) {
    throw std::invalid_argument("generate_instance: negative index");
  }
  if (cfg.family == Family::Custom) {
    if (index >= static_cast<int>(cfg.custom_instances.size())) {
      throw std::invalid_argument("generate_instance: index beyond the "
                                  "custom instance list");
    }
    BipartiteInstance inst = cfg.custom_instances[index];
    validate(inst);
    return inst;
  }
  if (cfg.per_size <= 0) {
    throw std::invalid_argument("per_size must be positive");
  }
  const int size_index = index / cfg.per_size;
  if (size_index >= static_cast<int>(cfg.sizes.size())) {
    throw std::invalid_argument("generate_instance: index beyond the sweep");
  }
  const auto [m, n] = cfg.sizes[size_index];
  if (m <= 0 || n <= 0) {
    throw std::invalid_argument("sizes must be positive");
  }
  const long long N = target_edges(cfg, m, n);
  if (N % m != 0 || N % n != 0) {
    throw std::domain_error("density does not give constant margins at size " +
                            std::to_string(m) + "x" + std::to_string(n));
  }
  const int s0 = static_cast<int>(N / m);
  const int t0 = static_cast<int>(N / n);

  std::vector<int> s(m, s0), t(n, t0);
  CounterRng rng(cfg.seed, static_cast<uint64_t>(index));
  if (cfg.family == Family::NearRegular) {
    for (int j = 0; j < m; ++j) {
      int d = static_cast<int>(rng.next_below(3)) - 1;
      s[j] = std::clamp(s0 + d, 0, n);
    }
    repair_margins(s, N, n, "row");
    for (int k = 0; k < n; ++k) {
      int d = static_cast<int>(rng.next_below(3)) - 1;
      t[k] = std::clamp(t0 + d, 0, m);
    }
    repair_margins(t, N, m, "column");
  }

  BipartiteInstance inst;
  inst.m = m;
  inst.n = n;
  inst.s = std::move(s);
  inst.t = std::move(t);
  inst.forbidden = sample_pattern(cfg, rng, m, n);
  validate(inst);
  return inst;
}

std::vector<ComparisonRow> run_compare_sweep(const SweepConfig& cfg) {
  const bool custom = cfg.family == Family::Custom;
  const int num_sizes = custom ? static_cast<int>(cfg.custom_instances.size())
                               : static_cast<int>(cfg.sizes.size());
  const int per = custom ? 1 : cfg.per_size;

  std::vector<ComparisonRow> rows;
  rows.reserve(static_cast<std::size_t>(num_sizes) * std::max(per, 0));
  for (int si = 0; si < num_sizes; ++si) {
    for (int ii = 0; ii < per; ++ii) {
      ComparisonRow row;
      row.size_index = si;
      row.instance_index = ii;
      auto fail = [&row](const std::string& msg) {
        if (!row.error.empty()) row.error += "; ";
        row.error += msg;
      };

      BipartiteInstance inst;
      try {
        inst = generate_instance(cfg, si * per + ii);
      } catch (const std::exception& e) {
        fail(e.what());
        rows.push_back(std::move(row));
        continue;
      }
      row.m = inst.m;
      row.n = inst.n;

      bool have_estimate = false;
      try {
        StatsBundle stats = compute_stats(inst);
        row.lambda = stats.lambda;
        row.pattern_label = pattern_label(cfg, inst);
        auto from = std::chrono::steady_clock::now();
        LogEstimate est = estimate_log_count_bipartite(inst, stats);
        if (cfg.include_timings) row.ms_estimate = elapsed_ms(from);
        row.estimate_log = est.log_value;
        have_estimate = true;
      } catch (const std::exception& e) {
        fail(e.what());
      }

      try {
        SaddlePoint sp = solve_saddle(inst);
        row.saddle_residual = saddle_residuals(inst, sp).max_abs;
      } catch (const std::exception& e) {
        fail(e.what());
      }

      if (cfg.exact_enabled) {
        try {
          CountOptions copts;
          copts.engine = cfg.engine;
          copts.state_limit = cfg.state_limit;
          auto from = std::chrono::steady_clock::now();
          BigCount cnt = count_exact(inst, copts);
          if (cfg.include_timings) row.ms_exact = elapsed_ms(from);
          if (cnt == 0) {
            fail("exact count is zero");
          } else {
            row.exact_log = log_big(cnt);
          }
        } catch (const std::exception& e) {
          fail(e.what());
        }
      }
      if (row.exact_log && have_estimate) {
        row.log_ratio = *row.exact_log - row.estimate_log;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string report_to_csv(const std::vector<ComparisonRow>& rows,
                          const SweepConfig& cfg) {
  (void)cfg;
  std::string out =
      "m,n,lambda,pattern,exact_log,estimate_log,log_ratio,saddle_residual,"
      "ms_exact,ms_estimate\n";
  for (const auto& row : rows) {
    out += std::to_string(row.m);
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += fmt_double(row.lambda);
    out += ',';
    out += row.pattern_label;
    out += ',';
    if (row.exact_log) out += fmt_double(*row.exact_log);
    out += ',';
    out += fmt_double(row.estimate_log);
    out += ',';
    if (row.log_ratio) out += fmt_double(*row.log_ratio);
    out += ',';
    out += fmt_double(row.saddle_residual);
    out += ',';
    out += fmt_double(row.ms_exact);
    out += ',';
    out += fmt_double(row.ms_estimate);
    out += '\n';
  }
  return out;
}

std::string report_to_json(const std::vector<ComparisonRow>& rows,
                           const SweepConfig& cfg) {
  (void)cfg;
  json arr = json::array();
  for (const auto& row : rows) {
    json r;
    r["size_index"] = row.size_index;
    r["instance_index"] = row.instance_index;
    r["m"] = row.m;
    r["n"] = row.n;
    r["lambda"] = row.lambda;
    r["pattern"] = row.pattern_label;
    if (row.exact_log) {
      r["exact_log"] = *row.exact_log;
    } else {
      r["exact_log"] = nullptr;
    }
    r["estimate_log"] = row.estimate_log;
    if (row.log_ratio) {
      r["log_ratio"] = *row.log_ratio;
    } else {
      r["log_ratio"] = nullptr;
    }
    r["saddle_residual"] = row.saddle_residual;
    r["ms_exact"] = row.ms_exact;
    r["ms_estimate"] = row.ms_estimate;
    r["error"] = row.error;
    arr.push_back(std::move(r));
  }
  json doc;
  doc["rows"] = std::move(arr);
  return doc.dump(2) + "\n";
}

SweepConfig sweep_config_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("sweep config: ") + e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("sweep config must be a JSON object");
  }
  static const std::vector<std::string> known = {
      "family",  "sizes",    "density",        "pattern",
      "seed",    "per_size", "engine",         "exact",
      "output",  "format",   "include_timings", "state_limit",
      "instances"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::invalid_argument("sweep config: unknown key '" + key + "'");
    }
  }

  SweepConfig cfg;
  if (doc.contains("family")) {
    const std::string f = doc["family"].get<std::string>();
    if (f == "regular") {
      cfg.family = Family::Regular;
    } else if (f == "near_regular") {
      cfg.family = Family::NearRegular;
    } else if (f == "custom") {
      cfg.family = Family::Custom;
    } else {
      throw std::invalid_argument("sweep config: unknown family '" + f + "'");
    }
  }
  if (doc.contains("sizes")) {
    for (const auto& entry : doc["sizes"]) {
      if (!entry.is_array() || entry.size() != 2) {
        throw std::invalid_argument(
            "sweep config: each size must be a [m, n] pair");
      }
      cfg.sizes.emplace_back(entry[0].get<int>(), entry[1].get<int>());
    }
  }
  if (doc.contains("density")) {
    const auto& d = doc["density"];
    if (!d.is_object() || !d.contains("num") || !d.contains("den") ||
        d.size() != 2) {
      throw std::invalid_argument(
          "sweep config: density must be {\"num\": int, \"den\": int}");
    }
    cfg.density_num = d["num"].get<long long>();
    cfg.density_den = d["den"].get<long long>();
  }
  if (doc.contains("pattern")) {
    const auto& p = doc["pattern"];
    if (!p.is_object() || !p.contains("kind")) {
      throw std::invalid_argument(
          "sweep config: pattern must be an object with a kind");
    }
    const std::string kind = p["kind"].get<std::string>();
    if (kind == "none") {
      cfg.pattern = PatternKind::None;
    } else if (kind == "single_edge") {
      cfg.pattern = PatternKind::SingleEdge;
    } else if (kind == "matching_k") {
      cfg.pattern = PatternKind::MatchingK;
      cfg.matching_k = p.at("k").get<int>();
    } else if (kind == "custom") {
      for (const auto& e : p.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
          throw std::invalid_argument(
              "sweep config: pattern edges must be [row, col] pairs");
        }
        cfg.pattern_edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
      cfg.pattern = PatternKind::Custom;
    } else {
      throw std::invalid_argument("sweep config: unknown pattern kind '" +
                                  kind + "'");
    }
  }
  if (doc.contains("seed")) cfg.seed = doc["seed"].get<uint64_t>();
  if (doc.contains("per_size")) cfg.per_size = doc["per_size"].get<int>();
  if (doc.contains("engine")) {
    const std::string e = doc["engine"].get<std::string>();
    if (e == "auto") {
      cfg.engine = CountEngine::Auto;
    } else if (e == "dp") {
      cfg.engine = CountEngine::Dp;
    } else if (e == "brute") {
      cfg.engine = CountEngine::Brute;
    } else {
      throw std::invalid_argument("sweep config: unknown engine '" + e + "'");
    }
  }
  if (doc.contains("exact")) cfg.exact_enabled = doc["exact"].get<bool>();
  if (doc.contains("output")) {
    cfg.output_path = doc["output"].get<std::string>();
  }
  if (doc.contains("format")) {
    cfg.format = doc["format"].get<std::string>();
    if (cfg.format != "csv" && cfg.format != "json") {
      throw std::invalid_argument("sweep config: format must be csv or json");
    }
  }
  if (doc.contains("include_timings")) {
    cfg.include_timings = doc["include_timings"].get<bool>();
  }
  if (doc.contains("state_limit")) {
    cfg.state_limit = doc["state_limit"].get<std::size_t>();
  }
  if (doc.contains("instances")) {
    for (const auto& item : doc["instances"]) {
      cfg.custom_instances.push_back(bipartite_from_json(item));
    }
  }
  if (cfg.family == Family::Custom) {
    if (cfg.custom_instances.empty()) {
      throw std::invalid_argument(
          "sweep config: custom family needs instances");
    }
  } else if (cfg.sizes.empty() && !doc.contains("sizes")) {
    throw std::invalid_argument("sweep config: sizes are required");
  }
  return cfg;
}

}  // namespace census
