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
#include <optional>
#include <string>
#include <vector>

#include "census/exact.hpp"
#include "census/instance.hpp"

namespace census {

// Counter-based generator: the value stream is a pure function of
// (seed, stream, counter), so draws are reproducible regardless of the
// order in which instances are generated.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

  uint64_t next_u64();
  // Uniform on {0, 1, ..., bound-1}, bound >= 1, by rejection (unbiased).
  uint64_t next_below(uint64_t bound);
  // Uniform on [0, 1) with 53 random bits.
  double next_unit();

 private:
  uint64_t seed_;
  uint64_t stream_;
  uint64_t counter_ = 0;
};

enum class Family { Regular, NearRegular, Custom };
enum class PatternKind { None, SingleEdge, MatchingK, Custom };

struct SweepConfig {
  Family family = Family::Regular;
  std::vector<std::pair<int, int>> sizes;  // (m, n) per sweep point
  // Target density as a fraction; sum(s) = round-to-integer of
  // num/den * m * n must be exact for every size.
  long long density_num = 1, density_den = 2;
  PatternKind pattern = PatternKind::None;
  int matching_k = 0;                  // PatternKind::MatchingK
  std::vector<Edge> pattern_edges;     // PatternKind::Custom
  uint64_t seed = 0;
  int per_size = 1;  // instances generated per size entry
  CountEngine engine = CountEngine::Auto;
  bool exact_enabled = true;
  std::string output_path;             // empty: stdout
  std::string format = "csv";          // "csv" or "json"
  bool include_timings = false;        // timings break byte-determinism
  std::size_t state_limit = 1000000;
  std::vector<BipartiteInstance> custom_instances;  // Family::Custom
};

SweepConfig sweep_config_from_json(const std::string& json_text);

// Deterministic instance for (config, index). The near-regular family
// perturbs each row sum by -1/0/+1, mirrors the draw on the column side,
// then repairs both sums to the common target by stepping entries at the
// tail within [0, n] and [0, m]. Pattern edges are sampled without
// replacement. Throws std::domain_error naming the offending entry when the
// repair cannot reach the target.
BipartiteInstance generate_instance(const SweepConfig& cfg, int index);

struct ComparisonRow {
  int size_index = 0;
  int instance_index = 0;
  int m = 0, n = 0;
  double lambda = 0;
  std::string pattern_label;
  std::optional<double> exact_log;
  double estimate_log = 0;
  std::optional<double> log_ratio;  // exact_log - estimate_log
  double saddle_residual = 0;
  double ms_exact = 0, ms_estimate = 0;
  std::string error;  // empty on success
};

// One row per (size, instance), ordered by (size_index, instance_index).
// Rows that fail (resource limits, domain errors) carry the message in
// .error and leave the failed fields absent; the sweep itself never throws
// for per-row failures.
std::vector<ComparisonRow> run_compare_sweep(const SweepConfig& cfg);

// Fixed column set:
// m,n,lambda,pattern,exact_log,estimate_log,log_ratio,saddle_residual,
// ms_exact,ms_estimate. Absent values are empty cells; per-row error text
// appears only in the json format. Timing columns are written as 0 unless
// cfg.include_timings.
std::string report_to_csv(const std::vector<ComparisonRow>& rows,
                          const SweepConfig& cfg);
std::string report_to_json(const std::vector<ComparisonRow>& rows,
                           const SweepConfig& cfg);

}  // namespace census
