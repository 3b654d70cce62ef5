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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "census/asymptotics.hpp"
#include "census/exact.hpp"
#include "census/harness.hpp"
#include "census/instance.hpp"
#include "census/saddle.hpp"
#include "census/stats.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitRowError = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open input file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text) { return json::parse(text); }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot open output file '" + path + "'");
  }
  out << text;
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

census::CountEngine parse_engine(const std::string& name) {
  if (name == "auto") return census::CountEngine::Auto;
  if (name == "dp") return census::CountEngine::Dp;
  if (name == "brute") return census::CountEngine::Brute;
  throw std::invalid_argument("unknown engine '" + name + "'");
}

std::vector<census::Edge> parse_edges(const std::string& text) {
  json doc = json::parse(text);
  if (!doc.is_array()) {
    throw std::invalid_argument("edge list must be a JSON array of pairs");
  }
  std::vector<census::Edge> edges;
  for (const auto& e : doc) {
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument("each edge must be a [row, col] pair");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return edges;
}

json estimate_to_json(const census::LogEstimate& est) {
  json doc;
  doc["log_value"] = est.log_value;
  doc["error_order"] = est.error_order;
  doc["components"] = json::object();
  for (const auto& [name, value] : est.components) {
    doc["components"][name] = value;
  }
  return doc;
}

json rational_to_json(const census::BigRational& q) {
  json doc;
  doc["num"] = boost::multiprecision::numerator(q).str();
  doc["den"] = boost::multiprecision::denominator(q).str();
  doc["approx"] = q.convert_to<double>();
  return doc;
}

struct GlobalFlags {
  uint64_t seed = 0;
  bool seed_set = false;
  std::string engine = "auto";
  double tol = 1e-12;
};

int run(int argc, char** argv) {
  CLI::App app{"exact and asymptotic counting of 0-1 matrices with "
               "forbidden positions"};
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--seed", g.seed, "seed override for seeded subcommands");
  app.add_option("--engine", g.engine, "exact engine: auto, dp, brute")
      ->check(CLI::IsMember({"auto", "dp", "brute"}));
  app.add_option("--tol", g.tol, "saddle convergence tolerance");

  std::string input = "-";
  std::size_t state_limit = census::CountOptions{}.state_limit;

  auto* c_count = app.add_subcommand("count", "exact count of the class");
  c_count->add_option("input", input, "instance JSON file, - for stdin");
  c_count->add_option("--state-limit", state_limit, "dp state budget");

  auto* c_perm = app.add_subcommand("perm", "permanent of a 0-1 matrix");
  c_perm->add_option("input", input, "JSON {\"matrix\": [[...]]}");

  std::string prob_mode = "disjoint";
  std::string pattern_text = "[]";
  int window_rows = 0, window_cols = 0;
  auto* c_prob = app.add_subcommand("prob", "exact pattern probability");
  c_prob->add_option("input", input, "host instance JSON");
  c_prob->add_option("--mode", prob_mode, "disjoint, contains, induced")
      ->check(CLI::IsMember({"disjoint", "contains", "induced"}));
  c_prob->add_option("--pattern", pattern_text, "pattern edges as JSON");
  c_prob->add_option("--window-rows", window_rows, "induced window rows");
  c_prob->add_option("--window-cols", window_cols, "induced window cols");
  c_prob->add_option("--state-limit", state_limit, "dp state budget");

  std::string eperm_path = "auto";
  auto* c_eperm = app.add_subcommand("eperm", "exact expected permanent");
  c_eperm->add_option("input", input, "square instance JSON");
  c_eperm->add_option("--path", eperm_path, "auto, symmetry, enumeration")
      ->check(CLI::IsMember({"auto", "symmetry", "enumeration"}));
  c_eperm->add_option("--state-limit", state_limit, "dp state budget");

  auto* c_aut = app.add_subcommand(
      "aut", "automorphism order of the instance's forbidden pattern");
  c_aut->add_option("input", input, "instance JSON");

  std::string dump_lambda;
  int max_iter = census::SaddleOptions{}.max_iter;
  auto* c_saddle = app.add_subcommand("saddle", "solve the margin equations");
  c_saddle->add_option("input", input, "instance JSON");
  c_saddle->add_option("--dump-lambda", dump_lambda,
                       "write the cell probability matrix as CSV");
  c_saddle->add_option("--max-iter", max_iter, "sweep limit");

  auto* c_estimate =
      app.add_subcommand("estimate", "asymptotic log-count estimate");
  c_estimate->add_option("input", input, "instance JSON");

  std::string mh_mode = "general";
  std::string mh_which = "miss";
  auto* c_misshit =
      app.add_subcommand("miss-hit", "log correction to the leading factor");
  c_misshit->add_option("input", input, "instance JSON (pattern = forbidden)");
  c_misshit->add_option("--mode", mh_mode,
                        "general, host_semiregular, pattern_semiregular")
      ->check(CLI::IsMember(
          {"general", "host_semiregular", "pattern_semiregular"}));
  c_misshit->add_option("--which", mh_which, "miss or hit")
      ->check(CLI::IsMember({"miss", "hit"}));

  auto* c_induced =
      app.add_subcommand("induced", "induced-pattern log-probability");
  c_induced->add_option("input", input, "pattern-free host instance JSON");
  c_induced->add_option("--pattern", pattern_text, "window pattern as JSON");
  c_induced->add_option("--window-rows", window_rows, "window rows")
      ->required();
  c_induced->add_option("--window-cols", window_cols,
                        "window cols (bipartite only)");

  auto* c_eperm_est =
      app.add_subcommand("eperm-est", "expected permanent estimate");
  c_eperm_est->add_option("input", input, "square pattern-free instance JSON");

  int bounds_n = 0, bounds_s = 0;
  auto* c_bounds =
      app.add_subcommand("bounds", "permanent bounds for line sum s");
  c_bounds->add_option("--n", bounds_n, "matrix order")->required();
  c_bounds->add_option("--s", bounds_s, "common line sum")->required();

  auto* c_avg = app.add_subcommand("avg", "averaging normalization");
  c_avg->add_option("input", input, "JSON {\"z\": [...]}");

  double chk_a = 0.1, chk_b = 0.3, chk_eps = 0.1;
  auto* c_check =
      app.add_subcommand("check", "applicability report for the hypotheses");
  c_check->add_option("input", input, "instance JSON");
  c_check->add_option("--a", chk_a, "log-density exponent");
  c_check->add_option("--b", chk_b, "error exponent");
  c_check->add_option("--eps", chk_eps, "degree-spread exponent");

  std::string config_path, out_override;
  auto* c_sweep =
      app.add_subcommand("sweep", "exact-vs-estimate comparison sweep");
  c_sweep->add_option("--config", config_path, "sweep config JSON")
      ->required();
  c_sweep->add_option("--out", out_override, "report path override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  g.seed_set = app.count("--seed") > 0;

  census::CountOptions copts;
  copts.engine = parse_engine(g.engine);
  copts.state_limit = state_limit;

  if (c_count->parsed()) {
    auto parsed = census::instance_from_json(parse_json(read_input(input)));
    census::BigCount value =
        std::holds_alternative<census::BipartiteInstance>(parsed)
            ? census::count_exact(std::get<census::BipartiteInstance>(parsed),
                                  copts)
            : census::count_exact_digraph(
                  std::get<census::DigraphInstance>(parsed), copts);
    emit(json{{"value", value.str()}});
    return kExitOk;
  }

  if (c_perm->parsed()) {
    json doc = json::parse(read_input(input));
    if (!doc.is_object() || !doc.contains("matrix")) {
      throw std::invalid_argument("perm input needs a \"matrix\" key");
    }
    std::vector<std::vector<uint8_t>> mat;
    for (const auto& row : doc["matrix"]) {
      mat.emplace_back();
      for (const auto& v : row) mat.back().push_back(v.get<uint8_t>());
    }
    emit(json{{"value", census::permanent_exact(mat).str()}});
    return kExitOk;
  }

  if (c_prob->parsed()) {
    auto inst = census::bipartite_from_json(parse_json(read_input(input)));
    census::ProbQuery query;
    query.pattern = parse_edges(pattern_text);
    if (prob_mode == "disjoint") {
      query.mode = census::ProbQuery::Mode::Disjoint;
    } else if (prob_mode == "contains") {
      query.mode = census::ProbQuery::Mode::Contains;
    } else {
      query.mode = census::ProbQuery::Mode::Induced;
      query.window_rows = window_rows;
      query.window_cols = window_cols;
    }
    auto prob = census::prob_exact(inst, query, copts);
    json doc;
    doc["num"] = prob.numerator.str();
    doc["den"] = prob.denominator.str();
    doc["approx"] = prob.value.convert_to<double>();
    emit(doc);
    return kExitOk;
  }

  if (c_eperm->parsed()) {
    auto inst = census::bipartite_from_json(parse_json(read_input(input)));
    census::EPermPath path = census::EPermPath::Auto;
    if (eperm_path == "symmetry") path = census::EPermPath::Symmetry;
    if (eperm_path == "enumeration") path = census::EPermPath::Enumeration;
    emit(rational_to_json(census::expected_permanent_exact(inst, path, copts)));
    return kExitOk;
  }

  if (c_aut->parsed()) {
    auto parsed = census::instance_from_json(parse_json(read_input(input)));
    census::BigCount value;
    if (std::holds_alternative<census::BipartiteInstance>(parsed)) {
      const auto& inst = std::get<census::BipartiteInstance>(parsed);
      value = census::aut_count(inst.m, inst.n, inst.forbidden);
    } else {
      const auto& dig = std::get<census::DigraphInstance>(parsed);
      value = census::aut_count_digraph(dig.n, dig.arcs);
    }
    emit(json{{"value", value.str()}});
    return kExitOk;
  }

  if (c_saddle->parsed()) {
    auto inst = census::bipartite_from_json(parse_json(read_input(input)));
    census::SaddleOptions sopts;
    sopts.tol = g.tol;
    sopts.max_iter = max_iter;
    census::SaddlePoint sp = census::solve_saddle(inst, sopts);
    census::SaddleResiduals res = census::saddle_residuals(inst, sp);
    json doc;
    doc["lambda"] = sp.lambda;
    doc["r"] = sp.r;
    doc["a"] = sp.a;
    doc["b"] = sp.b;
    doc["iterations"] = sp.iterations;
    doc["converged"] = sp.converged;
    doc["residuals"] = {{"max_abs", res.max_abs},
                        {"balance", res.balance_residual}};
    if (!dump_lambda.empty()) {
      std::string csv;
      char buf[64];
      for (const auto& row : sp.lambda_mat) {
        for (std::size_t k = 0; k < row.size(); ++k) {
          std::snprintf(buf, sizeof buf, "%.15g", row[k]);
          csv += buf;
          csv += (k + 1 < row.size()) ? ',' : '\n';
        }
      }
      write_output(dump_lambda, csv);
    }
    emit(doc);
    return kExitOk;
  }

  if (c_estimate->parsed()) {
    auto parsed = census::instance_from_json(parse_json(read_input(input)));
    census::LogEstimate est;
    if (std::holds_alternative<census::BipartiteInstance>(parsed)) {
      const auto& inst = std::get<census::BipartiteInstance>(parsed);
      est = census::estimate_log_count_bipartite(inst,
                                                 census::compute_stats(inst));
    } else {
      const auto& dig = std::get<census::DigraphInstance>(parsed);
      est = census::estimate_log_count_digraph(dig, census::compute_stats(dig));
    }
    emit(estimate_to_json(est));
    return kExitOk;
  }

  if (c_misshit->parsed()) {
    auto parsed = census::instance_from_json(parse_json(read_input(input)));
    census::MissHitMode mode = census::MissHitMode::General;
    if (mh_mode == "host_semiregular") {
      mode = census::MissHitMode::HostSemiregular;
    } else if (mh_mode == "pattern_semiregular") {
      mode = census::MissHitMode::PatternSemiregular;
    }
    census::Which which =
        mh_which == "miss" ? census::Which::Miss : census::Which::Hit;
    census::LogEstimate est;
    if (std::holds_alternative<census::BipartiteInstance>(parsed)) {
      const auto& inst = std::get<census::BipartiteInstance>(parsed);
      est = census::miss_hit_factor(census::compute_stats(inst), inst.m,
                                    inst.n, mode, which);
    } else {
      const auto& dig = std::get<census::DigraphInstance>(parsed);
      est = census::miss_hit_factor(census::compute_stats(dig), dig.n, dig.n,
                                    mode, which);
    }
    emit(estimate_to_json(est));
    return kExitOk;
  }

  if (c_induced->parsed()) {
    auto parsed = census::instance_from_json(parse_json(read_input(input)));
    auto pattern = parse_edges(pattern_text);
    census::LogEstimate est;
    if (std::holds_alternative<census::BipartiteInstance>(parsed)) {
      const auto& inst = std::get<census::BipartiteInstance>(parsed);
      auto base = census::compute_stats(inst);
      auto ind = census::compute_induced_stats(window_rows, window_cols,
                                               pattern, base.lambda);
      est = census::induced_prob(ind, base, inst.m, inst.n,
                                 census::Kind::Bipartite);
    } else {
      const auto& dig = std::get<census::DigraphInstance>(parsed);
      auto base = census::compute_stats(dig);
      auto ind = census::compute_induced_stats_digraph(
          window_rows, pattern, census::arc_density(dig));
      est = census::induced_prob(ind, base, dig.n, dig.n,
                                 census::Kind::Digraph);
    }
    emit(estimate_to_json(est));
    return kExitOk;
  }

  if (c_eperm_est->parsed()) {
    auto inst = census::bipartite_from_json(parse_json(read_input(input)));
    if (inst.m != inst.n) {
      throw std::invalid_argument("eperm-est needs a square instance");
    }
    if (!inst.forbidden.empty()) {
      throw std::invalid_argument("eperm-est needs a pattern-free instance");
    }
    auto stats = census::compute_stats(inst);
    emit(estimate_to_json(census::expected_permanent_estimate(
        inst.n, stats.lambda, stats.R, stats.C)));
    return kExitOk;
  }

  if (c_bounds->parsed()) {
    auto b = census::permanent_bounds(bounds_n, bounds_s);
    json doc;
    doc["vdw_log"] = b.vdw_log;
    doc["gurvits_log"] = b.gurvits_log;
    doc["minc_bregman_log"] = b.minc_bregman_log;
    emit(doc);
    return kExitOk;
  }

  if (c_avg->parsed()) {
    json doc = json::parse(read_input(input));
    if (!doc.is_object() || !doc.contains("z")) {
      throw std::invalid_argument("avg input needs a \"z\" key");
    }
    std::vector<double> z = doc["z"].get<std::vector<double>>();
    auto res = census::averaging_normalize(z);
    json out;
    out["z"] = res.z;
    out["steps"] = res.steps;
    json trace = json::array();
    for (const auto& st : res.trace) {
      trace.push_back({{"min_index", st.min_index},
                       {"max_index", st.max_index},
                       {"min_value", st.min_value},
                       {"max_value", st.max_value},
                       {"new_value", st.new_value}});
    }
    out["trace"] = std::move(trace);
    emit(out);
    return kExitOk;
  }

  if (c_check->parsed()) {
    auto parsed = census::instance_from_json(parse_json(read_input(input)));
    census::ApplicabilityReport rep =
        std::holds_alternative<census::BipartiteInstance>(parsed)
            ? census::check_applicability(
                  std::get<census::BipartiteInstance>(parsed), chk_a, chk_b,
                  chk_eps)
            : census::check_applicability(
                  std::get<census::DigraphInstance>(parsed), chk_a, chk_b,
                  chk_eps);
    json doc;
    switch (rep.overall) {
      case census::ApplicabilityReport::Overall::Pass:
        doc["overall"] = "pass";
        break;
      case census::ApplicabilityReport::Overall::Warn:
        doc["overall"] = "warn";
        break;
      case census::ApplicabilityReport::Overall::Fail:
        doc["overall"] = "fail";
        break;
    }
    doc["notes"] = rep.notes;
    json checks = json::array();
    for (const auto& chk : rep.checks) {
      checks.push_back({{"name", chk.name},
                        {"lhs", chk.lhs},
                        {"threshold", chk.threshold},
                        {"pass", chk.pass},
                        {"mandatory", chk.mandatory}});
    }
    doc["checks"] = std::move(checks);
    emit(doc);
    return kExitOk;
  }

  // sweep
  census::SweepConfig cfg;
  try {
    cfg = census::sweep_config_from_json(read_input(config_path));
    if (g.seed_set) cfg.seed = g.seed;
    if (app.count("--engine") > 0) cfg.engine = parse_engine(g.engine);
    if (!out_override.empty()) cfg.output_path = out_override;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  auto rows = census::run_compare_sweep(cfg);
  std::string report = cfg.format == "json"
                           ? census::report_to_json(rows, cfg)
                           : census::report_to_csv(rows, cfg);
  write_output(cfg.output_path, report);
  for (const auto& row : rows) {
    if (!row.error.empty()) return kExitRowError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
