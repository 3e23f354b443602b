// Copyright 2026 The fracchrom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// fracchrom: command-line front end.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fracchrom/augment.hpp"
#include "fracchrom/corpus.hpp"
#include "fracchrom/fractional_lp.hpp"
#include "fracchrom/graph.hpp"
#include "fracchrom/json_io.hpp"
#include "fracchrom/sampler.hpp"
#include "fracchrom/two_factor.hpp"

namespace {

using namespace fracchrom;

constexpr std::uint64_t kDefaultSeed = 0x5eed'2026;

struct RunConfig {
  std::string input;
  std::string extra;  // certificate path for verify
  std::string format = "json";
  std::uint64_t seed = kDefaultSeed;
  std::int64_t trials = 0;
  bool exact = false;
  std::int64_t max_orientations = EnumerationLimits{}.max_orientations;
  std::int64_t max_branches = EnumerationLimits{}.max_branches;
  std::string two_factor_path;
  std::string phase4 = "start";
  bool require_class = false;
  bool first_qualifying = false;
  int search_max_n = 0;
  int gen_n = 0;
  bool triangle_free = false;
  bool bridgeless = false;
  std::string output_path;

  EnumerationLimits limits() const { return {max_orientations, max_branches}; }
  SamplerOptions sampler() const {
    return {phase4 == "recompute" ? Phase4Feasibility::kRecompute : Phase4Feasibility::kStart};
  }
};

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph read_graph(const std::string& path) { return parse_graph_auto(read_file(path)); }

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, path + ": " + e.what());
  }
}

Json graph_summary(const Graph& g) { return {{"n", g.order()}, {"m", g.size()}}; }

void emit(const RunConfig& cfg, const Json& j, const std::string& text) {
  std::string out = cfg.format == "text" ? text : j.dump(2) + "\n";
  if (cfg.output_path.empty()) {
    std::cout << out;
  } else {
    std::ofstream f(cfg.output_path);
    if (!f) throw IoError("cannot write " + cfg.output_path);
    f << out;
  }
}

TwoFactor pick_two_factor(const RunConfig& cfg, const Graph& g) {
  if (!cfg.two_factor_path.empty()) {
    Json j = read_json(cfg.two_factor_path);
    return two_factor_from_json(g, j.contains("two_factor") ? j.at("two_factor") : j);
  }
  if (cfg.first_qualifying)
    std::cerr << "warning: --first-qualifying skips cycle maximisation; "
                 "the split-cycle guarantees may not hold\n";
  return select_two_factor(g, {cfg.first_qualifying, std::nullopt});
}

std::string cycles_text(const TwoFactor& tf) {
  std::ostringstream os;
  for (const auto& c : tf.cycles()) {
    os << "  (";
    for (size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << ")\n";
  }
  return os.str();
}

int cmd_validate(const RunConfig& cfg) {
  Graph g = read_graph(cfg.input);
  auto r = analyze(g);
  bool pass = r.is_cubic && r.is_triangle_free;
  Json j = {{"graph", graph_summary(g)}, {"report", to_json(r)}};
  if (cfg.require_class) j["class_check"] = pass ? "pass" : "fail";
  std::ostringstream t;
  t << "n=" << g.order() << " m=" << g.size() << "\n"
    << "cubic: " << r.is_cubic << "\nsubcubic: " << r.is_subcubic << "\ntriangle-free: " << r.is_triangle_free
    << "\nconnected: " << r.is_connected << "\nbridgeless: " << r.is_bridgeless << "\n";
  if (r.triangle_witness)
    t << "triangle: " << (*r.triangle_witness)[0] << " " << (*r.triangle_witness)[1] << " "
      << (*r.triangle_witness)[2] << "\n";
  if (cfg.require_class) t << "class check: " << (pass ? "pass" : "fail") << "\n";
  emit(cfg, j, t.str());
  return cfg.require_class && !pass ? 2 : 0;
}

int cmd_two_factor(const RunConfig& cfg) {
  Graph g = read_graph(cfg.input);
  TwoFactor tf = pick_two_factor(cfg, g);
  bool ks = satisfies_ks_condition(g, tf);
  Json j = {{"graph", graph_summary(g)}, {"components", tf.num_cycles()}, {"small_cut_condition", ks}};
  j["two_factor"] = to_json(tf);
  emit(cfg, j, std::to_string(tf.num_cycles()) + " cycles\n" + cycles_text(tf));
  return 0;
}

int cmd_prob(const RunConfig& cfg) {
  Graph g = read_graph(cfg.input);
  TwoFactor tf = pick_two_factor(cfg, g);
  auto report = deficiency_report(g, tf);
  Json j = {{"graph", graph_summary(g)}, {"two_factor", to_json(tf)}};
  j["deficiency"] = to_json(report);
  Rational target = target_marginal();
  std::ostringstream t;
  bool monte = cfg.trials > 0 && !cfg.exact;
  if (monte) {
    auto mc = monte_carlo(g, tf, cfg.trials, cfg.seed, cfg.sampler());
    j["mode"] = "monte-carlo";
    j["phases"] = "1-4";
    j["monte_carlo"] = to_json(mc);
    bool ok = mc.violations == 0;
    double low = 1.0;
    Json rows = Json::array();
    for (Vertex v = 0; v < g.order(); ++v) {
      double bound = to_double((Rational(88) + report[v].epsilon) / 256);
      bool vok = mc.frequency(v) + 4 * mc.std_error(v) >= bound;
      ok = ok && vok;
      low = std::min(low, mc.frequency(v));
      rows.push_back({{"vertex", v}, {"bound", bound}, {"within_4_sigma", vok}});
    }
    j["bounds"] = rows;
    j["min_frequency"] = low;
    j["verdict"] = ok ? "pass" : "fail";
    t << "mode: monte-carlo, trials " << mc.trials << ", seed " << mc.seed << "\n"
      << "violations: " << mc.violations << "\nmin frequency: " << low << "\nverdict: " << (ok ? "pass" : "fail")
      << "\n";
  } else {
    auto res = exact_phase5_distribution(g, tf, cfg.limits(), cfg.sampler());
    j["mode"] = "exact";
    Json rows = Json::array();
    bool ok = true;
    for (Vertex v = 0; v < g.order(); ++v) {
      Rational bound = (Rational(88) + report[v].epsilon) / 256;
      bool vok = res.phase4.marginals[v] >= bound;
      ok = ok && vok;
      rows.push_back({{"vertex", v},
                      {"epsilon", rational_json(report[v].epsilon)},
                      {"phase4", rational_json(res.phase4.marginals[v])},
                      {"bound", rational_json(bound)},
                      {"meets_bound", vok},
                      {"final", rational_json(res.law.marginals[v])}});
    }
    Rational low = *std::min_element(res.law.marginals.begin(), res.law.marginals.end());
    ok = ok && low >= target;
    j["marginals"] = rows;
    j["plan"] = to_json(res.plan);
    j["min_marginal"] = rational_json(low);
    j["target"] = rational_json(target);
    j["verdict"] = ok ? "pass" : "fail";
    t << "mode: exact\n";
    for (Vertex v = 0; v < g.order(); ++v)
      t << "  " << v << ": phase4 " << to_string(res.phase4.marginals[v]) << " final "
        << to_string(res.law.marginals[v]) << " eps " << to_string(report[v].epsilon) << "\n";
    t << "deficient: " << res.plan.order.size() << "\nmin marginal: " << to_string(low) << " ("
      << to_double(low) << ") vs " << to_string(target) << "\nverdict: " << (ok ? "pass" : "fail") << "\n";
  }
  emit(cfg, j, t.str());
  return 0;
}

int cmd_chif(const RunConfig& cfg) {
  Graph g = read_graph(cfg.input);
  auto lp = chi_f_exact(g);
  Json j = {{"graph", graph_summary(g)}};
  j.update(to_json(lp));
  emit(cfg, j, to_string(lp.value) + "\n");
  return 0;
}

int cmd_certify(const RunConfig& cfg) {
  Graph g = read_graph(cfg.input);
  auto sc = chi_f_upper_subcubic(g, cfg.limits(), cfg.sampler());
  auto verdict = verify_certificate(g, sc.cert);
  Json j = {{"graph", graph_summary(g)}, {"steps", sc.steps}, {"verified", verdict.ok}};
  j["certificate"] = to_json(sc.cert);
  std::ostringstream t;
  for (const auto& s : sc.steps) t << s << "\n";
  t << "k = " << to_string(sc.cert.k) << ", N = " << sc.cert.n_copies.get_str() << ", "
    << sc.cert.sets.size() << " distinct sets, verified: " << (verdict.ok ? "yes" : "no") << "\n";
  emit(cfg, j, t.str());
  return verdict.ok ? 0 : 4;
}

int cmd_verify(const RunConfig& cfg) {
  Graph g = read_graph(cfg.input);
  Json cj = read_json(cfg.extra);
  auto cert = certificate_from_json(cj.contains("certificate") ? cj.at("certificate") : cj);
  auto verdict = verify_certificate(g, cert);
  Json j = {{"graph", graph_summary(g)}, {"k", rational_json(cert.k)}, {"ok", verdict.ok},
            {"problems", verdict.problems}};
  std::string text = verdict.ok ? "ok\n" : "invalid: " + verdict.problems.front() + "\n";
  emit(cfg, j, text);
  return verdict.ok ? 0 : 2;
}

int cmd_corpus(const RunConfig& cfg) {
  Json j;
  std::ostringstream t;
  if (!cfg.input.empty()) {
    Json rows = Json::array();
    t << "name,n,cubic,triangle_free,bridgeless,chi_f,min_marginal,deficient\n";
    for (const auto& entry : load_corpus_dir(cfg.input)) {
      auto row = summarize(entry, cfg.limits(), cfg.sampler());
      rows.push_back(to_json(row));
      t << row.name << "," << row.order << "," << row.report.is_cubic << "," << row.report.is_triangle_free << ","
        << row.report.is_bridgeless << "," << (row.chi_f ? to_string(*row.chi_f) : "") << ","
        << (row.min_marginal ? to_string(*row.min_marginal) : "") << ","
        << (row.deficient ? std::to_string(*row.deficient) : "") << "\n";
    }
    j["graphs"] = rows;
  }
  if (cfg.search_max_n > 0) {
    Json hits = Json::array();
    auto found = search_deficient(cfg.search_max_n);
    for (const auto& h : found)
      hits.push_back({{"graph6", to_graph6(h.graph)}, {"two_factor", to_json(h.factor)}, {"deficient", h.deficient}});
    j["search"] = {{"max_n", cfg.search_max_n}, {"hits", hits}};
    t << "# deficient search up to n=" << cfg.search_max_n << ": " << found.size() << " graphs\n";
    for (const auto& h : found) t << "# " << to_graph6(h.graph) << " deficient=" << h.deficient.size() << "\n";
  }
  emit(cfg, j, t.str());
  return 0;
}

int cmd_gen_cubic(const RunConfig& cfg) {
  auto gs = cubic_graphs(cfg.gen_n, cfg.triangle_free, cfg.bridgeless);
  Json a = Json::array();
  std::ostringstream t;
  for (const auto& g : gs) {
    a.push_back(to_graph6(g));
    t << to_graph6(g) << "\n";
  }
  emit(cfg, {{"n", cfg.gen_n}, {"count", gs.size()}, {"graph6", a}}, t.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracchrom: fractional colouring of triangle-free subcubic graphs"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("-o,--output", cfg.output_path, "Write output to a file");
  };
  auto add_engine = [&](CLI::App* sub) {
    sub->add_option("--max-orient", cfg.max_orientations, "Orientation guard for exact enumeration")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-branches", cfg.max_branches, "Branch guard for exact enumeration")
        ->check(CLI::PositiveNumber);
    sub->add_option("--phase4-feasibility", cfg.phase4, "When Phase 4 reads feasibility")
        ->check(CLI::IsMember({"start", "recompute"}));
  };
  auto add_factor = [&](CLI::App* sub) {
    sub->add_option("--two-factor", cfg.two_factor_path, "Pinned 2-factor JSON");
    sub->add_flag("--first-qualifying", cfg.first_qualifying, "Take the first qualifying 2-factor");
  };

  auto* validate = app.add_subcommand("validate", "Parse and analyse a graph");
  validate->add_option("path", cfg.input)->required();
  validate->add_flag("--require-cubic-triangle-free", cfg.require_class, "Exit 2 unless cubic and triangle-free");
  add_common(validate);

  auto* two = app.add_subcommand("two-factor", "Select a 2-factor");
  two->add_option("path", cfg.input)->required();
  add_factor(two);
  add_common(two);

  auto* prob = app.add_subcommand("prob", "Vertex marginals of the sampler");
  prob->add_option("path", cfg.input)->required();
  prob->add_flag("--exact", cfg.exact, "Exact enumeration (default unless --trials is given)");
  prob->add_option("--trials", cfg.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  prob->add_option("--seed", cfg.seed, "64-bit seed");
  add_factor(prob);
  add_engine(prob);
  add_common(prob);

  auto* chif = app.add_subcommand("chif", "Exact fractional chromatic number");
  chif->add_option("path", cfg.input)->required();
  add_common(chif);

  auto* certify = app.add_subcommand("certify", "32/11 multiset certificate");
  certify->add_option("path", cfg.input)->required();
  add_engine(certify);
  add_common(certify);

  auto* verify = app.add_subcommand("verify", "Check a certificate against a graph");
  verify->add_option("path", cfg.input)->required();
  verify->add_option("certificate", cfg.extra)->required();
  add_common(verify);

  auto* corpus = app.add_subcommand("corpus", "Summarise a directory of graphs");
  corpus->add_option("dir", cfg.input);
  corpus->add_option("--search-deficient", cfg.search_max_n,
                     "Also search generated graphs up to this order for deficient vertices");
  add_engine(corpus);
  add_common(corpus);

  auto* gen = app.add_subcommand("gen-cubic", "Connected cubic graphs up to isomorphism, as graph6");
  gen->add_option("n", cfg.gen_n)->required();
  gen->add_flag("--triangle-free", cfg.triangle_free);
  gen->add_flag("--bridgeless", cfg.bridgeless);
  add_common(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(cfg);
    if (*two) return cmd_two_factor(cfg);
    if (*prob) return cmd_prob(cfg);
    if (*chif) return cmd_chif(cfg);
    if (*certify) return cmd_certify(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*corpus) return cmd_corpus(cfg);
    if (*gen) return cmd_gen_cubic(cfg);
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
