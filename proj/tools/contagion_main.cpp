// Batch experiment runner for the contagion toolkit: graph generation,
// structural analysis, cascade simulation, structure learning against the
// query oracle, probability-bound verification, and full experiment specs.
//
// Machine-readable outputs go to files; stdout carries the human summary.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "contagion/analysis.hpp"
#include "contagion/cascade.hpp"
#include "contagion/experiment.hpp"
#include "contagion/generators.hpp"
#include "contagion/graph.hpp"
#include "contagion/learners.hpp"
#include "contagion/oracle.hpp"
#include "contagion/verification.hpp"

namespace {

using namespace contagion;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

std::string girth_to_string(const GirthValue& g) {
  return g.is_finite() ? std::to_string(g.value()) : std::string("infinite");
}

nlohmann::json certification_to_json(const CertificationReport& report) {
  nlohmann::json j{
      {"delta", report.delta},
      {"rho", report.growth.rho},
      {"rho_witness_d", report.growth.witness_d},
      {"rho_witness_count", report.growth.witness_count},
      {"growth_condition_ok", report.growth_condition_ok},
      {"girth_condition_ok", report.girth_condition_ok},
      {"certified", report.certified}};
  if (report.girth_value.is_finite()) {
    j["girth"] = report.girth_value.value();
    j["effective_even_girth"] = *report.effective_even_girth;
  } else {
    j["girth"] = nullptr;
  }
  if (report.required_girth) j["required_girth"] = *report.required_girth;
  return j;
}

struct GenerateArgs {
  std::string family;
  std::uint32_t n = 0;
  std::uint32_t degree = 0;
  std::vector<std::uint32_t> lengths;
  double edge_probability = 0.1;
  double p = 0.5;
  std::optional<double> p_lo, p_hi;
  std::uint64_t seed = 0;
  std::string out;
};

int run_generate(const GenerateArgs& args) {
  GraphFamilySpec spec;
  spec.family = family_from_name(args.family);
  spec.n = args.n;
  spec.degree = args.degree;
  spec.path_lengths = args.lengths;
  spec.edge_probability = args.edge_probability;
  spec.p_lo = args.p_lo.value_or(args.p);
  spec.p_hi = args.p_hi.value_or(args.p);
  spec.seed = args.seed;
  const ContagionGraph g = generate(spec);
  save_edge_list(g, args.out);
  std::cout << spec.describe() << ": wrote " << g.vertex_count()
            << " vertices, " << g.edge_count() << " edges to " << args.out
            << "\n";
  return 0;
}

int run_analyze(const std::string& path, std::optional<double> delta_lb,
                std::uint64_t budget, const std::string& out) {
  const ContagionGraph g = load_edge_list(path);
  const auto report = certify_for_algorithm1(g, delta_lb, budget);
  std::cout << "vertices = " << g.vertex_count() << "\n"
            << "edges = " << g.edge_count() << "\n"
            << "delta = " << detail::format_double(g.delta()) << "\n"
            << "max_degree = " << max_degree(g) << "\n"
            << "girth = " << girth_to_string(report.girth_value) << "\n"
            << "rho = " << detail::format_double(report.growth.rho)
            << " (witness d=" << report.growth.witness_d
            << ", count=" << report.growth.witness_count << ")\n";
  std::cout << "growth_condition = "
            << (report.growth_condition_ok ? "ok" : "violated") << "\n";
  if (report.required_girth)
    std::cout << "required_girth = " << *report.required_girth << "\n";
  std::cout << "certified = " << (report.certified ? "yes" : "no") << "\n";
  if (!out.empty()) {
    auto file = open_out(out);
    file << certification_to_json(report).dump(2) << '\n';
  }
  return 0;
}

int run_simulate(const std::string& path, const std::vector<VertexId>& seeds,
                 std::uint64_t seed, const std::string& trace_path,
                 const std::string& out) {
  const ContagionGraph g = load_edge_list(path);
  const RandomStream stream(seed);
  const auto outcome =
      simulate_cascade(g, seeds, stream.substream("simulate"));
  std::cout << "infected " << outcome.infected.size() << " of "
            << g.vertex_count() << " vertices\n";
  if (!trace_path.empty()) {
    auto file = open_out(trace_path);
    write_trace(outcome, file);
  }
  if (!out.empty()) {
    nlohmann::json active = nlohmann::json::array();
    for (const auto& e : outcome.active_edges) {
      active.push_back({{"step", outcome.step[e.to]},
                        {"from", e.from},
                        {"to", e.to}});
    }
    nlohmann::json steps = nlohmann::json::object();
    for (VertexId v : outcome.infected)
      steps[std::to_string(v)] = outcome.step[v];
    auto file = open_out(out);
    file << nlohmann::json{{"infected", outcome.infected},
                           {"steps", steps},
                           {"active_edges", active}}
                .dump(2)
         << '\n';
  }
  return 0;
}

struct LearnArgs {
  std::string path;
  std::string learner = "large-girth";
  std::optional<double> delta_lb;
  double delta_fail = 0.2;
  std::optional<std::uint32_t> rounds;
  double chernoff_constant = 32.0;
  std::uint32_t max_deg = 0;
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 0;
  std::string out;
  std::string report_path;
};

LearnerKind learner_from_cli(const std::string& name) {
  if (name == "tree") return LearnerKind::tree;
  if (name == "large-girth") return LearnerKind::large_girth;
  if (name == "bounded-degree") return LearnerKind::bounded_degree;
  throw CLI::ValidationError("--learner",
                             "expected tree|large-girth|bounded-degree");
}

int run_learn(const LearnArgs& args) {
  const ContagionGraph g = load_edge_list(args.path);
  const LearnerKind kind = learner_from_cli(args.learner);
  LearnerConfig config;
  config.delta_lb = args.delta_lb.value_or(g.delta());
  config.delta_fail = args.delta_fail;
  config.rounds_override = args.rounds;
  config.chernoff_constant = args.chernoff_constant;

  QueryOracle oracle(g, RandomStream(args.seed), args.budget, config.delta_lb);
  EdgeList predicted;
  switch (kind) {
    case LearnerKind::tree:
      predicted = learn_tree(oracle, config);
      break;
    case LearnerKind::large_girth:
      predicted = learn_large_girth(oracle, config);
      break;
    case LearnerKind::bounded_degree: {
      const std::uint32_t cap = args.max_deg > 0 ? args.max_deg : max_degree(g);
      predicted = learn_bounded_degree(oracle, config, cap);
      break;
    }
  }

  const auto truth = g.edge_pairs();
  const auto trial =
      contagion::detail::score_trial(0, predicted, truth,
                                     oracle.queries_used(), true);
  std::cout << "learner = " << args.learner << "\n"
            << "predicted_edges = " << trial.predicted_edges << "\n"
            << "true_edges = " << trial.true_edges << "\n"
            << "precision = " << detail::format_double(trial.precision) << "\n"
            << "recall = " << detail::format_double(trial.recall) << "\n"
            << "exact_match = " << (trial.exact_match ? "yes" : "no") << "\n"
            << "queries_used = " << trial.queries_used << "\n";
  if (!args.out.empty()) {
    auto file = open_out(args.out);
    write_edge_set(g.vertex_count(), predicted, file);
  }
  if (!args.report_path.empty()) {
    auto file = open_out(args.report_path);
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [u, v] : predicted) edges.push_back({u, v});
    file << nlohmann::json{{"learner", learner_name(kind)},
                           {"predicted_edges", edges},
                           {"precision", trial.precision},
                           {"recall", trial.recall},
                           {"exact_match", trial.exact_match},
                           {"queries_used", trial.queries_used}}
                .dump(2)
         << '\n';
  }
  return 0;
}

struct VerifyArgs {
  std::string path;
  std::string check = "all";
  std::optional<VertexId> u, v, w;
  std::optional<std::uint32_t> k;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::string out;
  std::string csv;
};

int run_verify(const VerifyArgs& args) {
  const ContagionGraph g = load_edge_list(args.path);
  const RandomStream stream(args.seed);
  const auto girth_eff = girth(g).even_lower_bound();
  std::vector<BoundCheckReport> reports;

  auto descriptor = args.path;

  auto pick_far_pair = [&]() -> std::optional<std::pair<VertexId, VertexId>> {
    for (VertexId u = 0; u < g.vertex_count(); ++u)
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (u == v || g.has_edge(u, v)) continue;
        const auto d = shortest_path_distance(g, u, v);
        if (!d) return std::pair(u, v);
        if (girth_eff && 2 * *d >= *girth_eff) return std::pair(u, v);
      }
    return std::nullopt;
  };
  auto pick_near_pair = [&]() -> std::optional<std::pair<VertexId, VertexId>> {
    for (VertexId u = 0; u < g.vertex_count(); ++u)
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (u == v || g.has_edge(u, v)) continue;
        const auto d = shortest_path_distance(g, u, v);
        if (!d || *d < 2) continue;
        if (girth_eff && 2 * *d >= *girth_eff) continue;
        if (count_simple_paths(g, u, v, *d, args.budget) != 1) continue;
        return std::pair(u, v);
      }
    return std::nullopt;
  };

  const bool all = args.check == "all";
  if (all || args.check == "long-path") {
    VertexId u = args.u.value_or(0), v = args.v.value_or(0);
    if (!args.u || !args.v) {
      // Farthest reachable pair by default.
      std::uint32_t best = 0;
      for (VertexId a = 0; a < g.vertex_count(); ++a)
        for (VertexId b = 0; b < g.vertex_count(); ++b) {
          if (a == b) continue;
          const auto d = shortest_path_distance(g, a, b);
          if (d && *d > best) { best = *d; u = a; v = b; }
        }
    }
    std::uint32_t k = args.k.value_or(0);
    if (k == 0) {
      const auto d = shortest_path_distance(g, u, v);
      k = girth_eff ? *girth_eff / 2 : (d ? *d : 1);
      k = std::max<std::uint32_t>(k, 1);
    }
    reports.push_back(check_long_path_bound(g, u, v, k, args.trials, stream,
                                            descriptor, args.budget));
  }
  if (all || args.check == "adjacent") {
    VertexId u, v, w;
    if (args.u && args.v && args.w) {
      u = *args.u; v = *args.v; w = *args.w;
    } else {
      if (g.edge_count() == 0)
        throw std::runtime_error("adjacent check needs at least one edge");
      u = g.edges()[0].u;
      v = g.edges()[0].v;
      w = 0;
      while (w == u || w == v) ++w;
      if (w >= g.vertex_count())
        throw std::runtime_error("adjacent check needs a third vertex");
    }
    reports.push_back(check_adjacent_separation(g, u, v, w, args.trials,
                                                stream, descriptor,
                                                args.budget));
  }
  if (all || args.check == "near") {
    std::optional<std::pair<VertexId, VertexId>> pair;
    if (args.u && args.v) pair = std::pair(*args.u, *args.v);
    else pair = pick_near_pair();
    if (pair) {
      reports.push_back(check_near_pair_separation(g, pair->first,
                                                   pair->second, args.trials,
                                                   stream, descriptor,
                                                   args.budget));
    } else if (!all) {
      throw std::runtime_error("no qualifying near pair in this graph");
    }
  }
  if (all || args.check == "far") {
    std::optional<std::pair<VertexId, VertexId>> pair;
    if (args.u && args.v) pair = std::pair(*args.u, *args.v);
    else pair = pick_far_pair();
    if (pair) {
      reports.push_back(check_far_pair_infection(g, pair->first, pair->second,
                                                 args.trials, stream,
                                                 descriptor, args.budget));
    } else if (!all) {
      throw std::runtime_error("no qualifying far pair in this graph");
    }
  }

  bool ok = true;
  for (const auto& r : reports) {
    std::cout << r.claim << ": estimate="
              << detail::format_double(r.estimate)
              << " bound=" << detail::format_double(r.bound) << " ("
              << (r.bound_is_upper ? "upper" : "lower")
              << ") verdict=" << (r.within_bound ? "within" : "VIOLATION")
              << (r.in_scope ? "" : " [outside guarantee scope]") << "\n";
    ok = ok && r.within_bound;
  }
  if (!args.out.empty()) {
    auto file = open_out(args.out);
    file << nlohmann::json(reports).dump(2) << '\n';
  }
  if (!args.csv.empty()) {
    auto file = open_out(args.csv);
    file << bound_check_csv_header() << '\n';
    for (const auto& r : reports) file << bound_check_csv_row(r) << '\n';
  }
  return ok ? 0 : 2;
}

int run_experiment_cmd(const std::string& config_path,
                       std::optional<std::uint64_t> seed,
                       std::optional<std::uint32_t> jobs,
                       const std::string& out_prefix) {
  ExperimentSpec spec = load_experiment_spec(config_path);
  if (seed) spec.master_seed = *seed;
  if (jobs) spec.jobs = *jobs;
  if (!out_prefix.empty()) {
    spec.csv_path = out_prefix + ".csv";
    spec.json_path = out_prefix + ".json";
  }
  const RecoveryReport report = run_experiment_with_outputs(spec);
  std::cout << "trials = " << report.trials.size() << "\n"
            << "exact_recovery_rate = "
            << detail::format_double(report.exact_recovery_rate) << "\n"
            << "mean_precision = "
            << detail::format_double(report.mean_precision) << "\n"
            << "mean_recall = " << detail::format_double(report.mean_recall)
            << "\n"
            << "total_queries = " << report.total_queries << "\n"
            << "in_scope_trials = " << report.in_scope_trials << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"independent-cascade simulation and structure-learning toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd =
      app.add_subcommand("generate", "generate a graph family edge list");
  generate_cmd->add_option("family", gen.family,
                           "tree|cycle|star_cycle_h|generalized_theta|"
                           "bounded_degree_random|erdos_renyi")
      ->required();
  generate_cmd->add_option("--n", gen.n, "size parameter");
  generate_cmd->add_option("--deg", gen.degree, "degree (bounded_degree_random)");
  generate_cmd->add_option("--lengths", gen.lengths,
                           "path lengths (generalized_theta)")
      ->delimiter(',');
  generate_cmd->add_option("--edge-prob", gen.edge_probability,
                           "edge probability (erdos_renyi)");
  generate_cmd->add_option("--p", gen.p, "constant infection probability");
  double plo = 0, phi = 0;
  auto* plo_opt = generate_cmd->add_option("--p-lo", plo, "probability range low");
  auto* phi_opt = generate_cmd->add_option("--p-hi", phi, "probability range high");
  generate_cmd->add_option("--seed", gen.seed, "generator seed");
  generate_cmd->add_option("--out", gen.out, "output edge-list file")->required();

  std::string analyze_path, analyze_out;
  std::optional<double> analyze_delta_lb;
  std::uint64_t analyze_budget = kDefaultEnumerationBudget;
  auto* analyze_cmd = app.add_subcommand(
      "analyze", "exact girth / growth-rate / certification report");
  analyze_cmd->add_option("file", analyze_path, "edge-list file")->required();
  analyze_cmd->add_option("--delta-lb", analyze_delta_lb,
                          "contagion parameter lower bound to certify with");
  analyze_cmd->add_option("--budget", analyze_budget, "enumeration budget");
  analyze_cmd->add_option("--out", analyze_out, "JSON report path");

  std::string sim_path, sim_trace, sim_out;
  std::vector<VertexId> sim_seeds;
  std::uint64_t sim_seed = 0;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "run one contagion round");
  simulate_cmd->add_option("file", sim_path, "edge-list file")->required();
  simulate_cmd->add_option("--seeds", sim_seeds, "seed vertices")
      ->delimiter(',')
      ->required();
  simulate_cmd->add_option("--seed", sim_seed, "random seed");
  simulate_cmd->add_option("--trace", sim_trace,
                           "write `t u v` active-edge trace to this file");
  simulate_cmd->add_option("--out", sim_out, "JSON outcome path");

  LearnArgs learn;
  auto* learn_cmd = app.add_subcommand(
      "learn", "reconstruct the edge set through the query oracle");
  learn_cmd->add_option("file", learn.path, "edge-list file (hidden graph)")
      ->required();
  learn_cmd->add_option("--learner", learn.learner,
                        "tree|large-girth|bounded-degree");
  learn_cmd->add_option("--delta-lb", learn.delta_lb,
                        "contagion parameter lower bound (default: exact)");
  learn_cmd->add_option("--delta-fail", learn.delta_fail,
                        "admissible failure probability");
  learn_cmd->add_option("--m", learn.rounds, "override rounds per vertex");
  learn_cmd->add_option("--c", learn.chernoff_constant,
                        "large-girth round-count constant");
  learn_cmd->add_option("--max-deg", learn.max_deg,
                        "degree cap (bounded-degree learner)");
  learn_cmd->add_option("--budget", learn.budget, "query budget");
  learn_cmd->add_option("--seed", learn.seed, "oracle random seed");
  learn_cmd->add_option("--out", learn.out, "predicted edge-list path");
  learn_cmd->add_option("--report", learn.report_path, "JSON report path");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Monte Carlo probability-bound checks");
  verify_cmd->add_option("file", verify.path, "edge-list file")->required();
  verify_cmd->add_option("--check", verify.check,
                         "long-path|adjacent|near|far|all");
  verify_cmd->add_option("--u", verify.u, "seed vertex");
  verify_cmd->add_option("--v", verify.v, "target vertex");
  verify_cmd->add_option("--w", verify.w, "witness vertex (adjacent check)");
  verify_cmd->add_option("--k", verify.k, "chain length (long-path check)");
  verify_cmd->add_option("--trials", verify.trials, "Monte Carlo trials");
  verify_cmd->add_option("--seed", verify.seed, "random seed");
  verify_cmd->add_option("--budget", verify.budget, "enumeration budget");
  verify_cmd->add_option("--out", verify.out, "JSON report path");
  verify_cmd->add_option("--csv", verify.csv, "CSV summary path");

  std::string exp_config, exp_out;
  std::optional<std::uint64_t> exp_seed;
  std::optional<std::uint32_t> exp_jobs;
  auto* experiment_cmd = app.add_subcommand(
      "experiment", "run a full experiment spec (JSON config)");
  experiment_cmd->add_option("config", exp_config, "experiment config file")
      ->required();
  experiment_cmd->add_option("--seed", exp_seed, "override master seed");
  experiment_cmd->add_option("--jobs", exp_jobs, "parallel trial workers");
  experiment_cmd->add_option("--out", exp_out,
                             "output prefix (writes PREFIX.csv, PREFIX.json)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate_cmd->parsed()) {
      if (*plo_opt) gen.p_lo = plo;
      if (*phi_opt) gen.p_hi = phi;
      return run_generate(gen);
    }
    if (analyze_cmd->parsed())
      return run_analyze(analyze_path, analyze_delta_lb, analyze_budget,
                         analyze_out);
    if (simulate_cmd->parsed())
      return run_simulate(sim_path, sim_seeds, sim_seed, sim_trace, sim_out);
    if (learn_cmd->parsed()) return run_learn(learn);
    if (verify_cmd->parsed()) return run_verify(verify);
    if (experiment_cmd->parsed())
      return run_experiment_cmd(exp_config, exp_seed, exp_jobs, exp_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
