#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "contagion/analysis.hpp"
#include "contagion/generators.hpp"
#include "contagion/graph.hpp"
#include "contagion/learners.hpp"
#include "contagion/oracle.hpp"
#include "contagion/parallel.hpp"

namespace contagion {

enum class LearnerKind { tree, large_girth, bounded_degree };

inline std::string learner_name(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::tree: return "tree";
    case LearnerKind::large_girth: return "large_girth";
    case LearnerKind::bounded_degree: return "bounded_degree";
  }
  throw std::invalid_argument("unknown learner");
}

inline LearnerKind learner_from_name(const std::string& name) {
  if (name == "tree") return LearnerKind::tree;
  if (name == "large_girth") return LearnerKind::large_girth;
  if (name == "bounded_degree") return LearnerKind::bounded_degree;
  throw std::invalid_argument("unknown learner: " + name);
}

/// A reproducible batch run: graphs, oracles, one learner, aggregate report.
/// Everything is a pure function of the spec; per-trial seeds are
/// hash-derived from the master seed, never sequential reuse.
struct ExperimentSpec {
  GraphFamilySpec family;
  bool fresh_graph_per_trial = true;
  LearnerKind learner = LearnerKind::large_girth;
  LearnerConfig config;
  std::uint32_t learner_max_degree = 0;  // bounded_degree learner cap
  std::uint32_t trials = 0;
  std::uint64_t master_seed = 0;
  std::uint32_t jobs = 1;
  bool run_scope_check = true;
  std::string csv_path;   // empty = no CSV written
  std::string json_path;  // empty = no JSON written
};

struct TrialResult {
  std::uint32_t trial = 0;
  std::size_t predicted_edges = 0;
  std::size_t true_edges = 0;
  std::size_t correct_edges = 0;
  double precision = 1.0;
  double recall = 1.0;
  bool exact_match = false;
  std::uint64_t queries_used = 0;
  bool in_scope = true;
};

struct RecoveryReport {
  std::vector<TrialResult> trials;
  double exact_recovery_rate = 0.0;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  std::uint64_t total_queries = 0;
  std::uint32_t in_scope_trials = 0;
};

namespace detail {

inline TrialResult score_trial(std::uint32_t index, const EdgeList& predicted,
                               const EdgeList& truth,
                               std::uint64_t queries_used, bool in_scope) {
  TrialResult r;
  r.trial = index;
  r.predicted_edges = predicted.size();
  r.true_edges = truth.size();
  r.correct_edges = 0;
  for (const auto& e : predicted)
    if (std::binary_search(truth.begin(), truth.end(), e)) ++r.correct_edges;
  r.precision = predicted.empty()
                    ? 1.0
                    : static_cast<double>(r.correct_edges) / predicted.size();
  r.recall = truth.empty()
                 ? 1.0
                 : static_cast<double>(r.correct_edges) / truth.size();
  r.exact_match = predicted == truth;
  r.queries_used = queries_used;
  r.in_scope = in_scope;
  return r;
}

/// Scope verdict for the learner actually being run. Enumeration blowups on
/// stress graphs downgrade to "out of scope", never to an error: running a
/// learner outside its guarantee is a legitimate experiment.
inline bool scope_check(const ContagionGraph& g, LearnerKind kind,
                        const LearnerConfig& config,
                        std::uint32_t learner_max_degree) {
  switch (kind) {
    case LearnerKind::tree:
      return !girth(g).is_finite();
    case LearnerKind::large_girth:
      try {
        return certify_for_algorithm1(g, config.delta_lb).certified;
      } catch (const enumeration_budget_error&) {
        return false;
      }
    case LearnerKind::bounded_degree:
      return max_degree(g) <= learner_max_degree;
  }
  return false;
}

}  // namespace detail

inline RecoveryReport run_experiment(const ExperimentSpec& spec) {
  spec.config.validate();
  if (spec.learner == LearnerKind::bounded_degree &&
      spec.learner_max_degree < 1)
    throw std::invalid_argument(
        "bounded_degree learner needs learner_max_degree >= 1");

  const RandomStream master(spec.master_seed);
  RecoveryReport report;
  report.trials.resize(spec.trials);

  parallel_for_index(spec.trials, spec.jobs, [&](std::uint32_t t) {
    GraphFamilySpec family = spec.family;
    family.seed =
        master.derive_seed("trial-graph", spec.fresh_graph_per_trial ? t : 0);
    const ContagionGraph g = generate(family);

    QueryOracle oracle(g, RandomStream(master.derive_seed("trial-oracle", t)),
                       std::nullopt, spec.config.delta_lb);
    EdgeList predicted;
    switch (spec.learner) {
      case LearnerKind::tree:
        predicted = learn_tree(oracle, spec.config);
        break;
      case LearnerKind::large_girth:
        predicted = learn_large_girth(oracle, spec.config);
        break;
      case LearnerKind::bounded_degree:
        predicted =
            learn_bounded_degree(oracle, spec.config, spec.learner_max_degree);
        break;
    }
    const bool in_scope =
        !spec.run_scope_check ||
        detail::scope_check(g, spec.learner, spec.config,
                            spec.learner_max_degree);
    report.trials[t] = detail::score_trial(t, predicted, g.edge_pairs(),
                                           oracle.queries_used(), in_scope);
  });

  std::uint32_t exact = 0;
  for (const auto& r : report.trials) {
    exact += r.exact_match ? 1 : 0;
    report.mean_precision += r.precision;
    report.mean_recall += r.recall;
    report.total_queries += r.queries_used;
    report.in_scope_trials += r.in_scope ? 1 : 0;
  }
  if (spec.trials > 0) {
    report.exact_recovery_rate = static_cast<double>(exact) / spec.trials;
    report.mean_precision /= spec.trials;
    report.mean_recall /= spec.trials;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Report serialization. CSV carries one row per trial for spreadsheets;
// JSON carries the full detail including the spec echo. Both are
// byte-deterministic for a fixed spec and master seed.
// ---------------------------------------------------------------------------

inline void write_recovery_csv(const RecoveryReport& report,
                               std::ostream& out) {
  out << "trial,predicted_edges,true_edges,correct_edges,precision,recall,"
         "exact_match,queries_used,in_scope\n";
  for (const auto& r : report.trials) {
    out << r.trial << ',' << r.predicted_edges << ',' << r.true_edges << ','
        << r.correct_edges << ',' << detail::format_double(r.precision) << ','
        << detail::format_double(r.recall) << ',' << (r.exact_match ? 1 : 0)
        << ',' << r.queries_used << ',' << (r.in_scope ? 1 : 0) << '\n';
  }
}

inline nlohmann::json spec_to_json(const ExperimentSpec& spec) {
  nlohmann::json family{{"kind", family_name(spec.family.family)},
                        {"p_lo", spec.family.p_lo},
                        {"p_hi", spec.family.p_hi}};
  switch (spec.family.family) {
    case GraphFamily::generalized_theta:
      family["path_lengths"] = spec.family.path_lengths;
      break;
    case GraphFamily::bounded_degree_random:
      family["n"] = spec.family.n;
      family["degree"] = spec.family.degree;
      break;
    case GraphFamily::erdos_renyi:
      family["n"] = spec.family.n;
      family["edge_probability"] = spec.family.edge_probability;
      break;
    default:
      family["n"] = spec.family.n;
      break;
  }
  nlohmann::json config{{"delta_lb", spec.config.delta_lb},
                        {"delta_fail", spec.config.delta_fail},
                        {"chernoff_constant", spec.config.chernoff_constant}};
  if (spec.config.rounds_override)
    config["rounds_override"] = *spec.config.rounds_override;
  nlohmann::json j{{"family", family},
                   {"learner", learner_name(spec.learner)},
                   {"config", config},
                   {"trials", spec.trials},
                   {"master_seed", spec.master_seed},
                   {"fresh_graph_per_trial", spec.fresh_graph_per_trial},
                   {"run_scope_check", spec.run_scope_check}};
  if (spec.learner == LearnerKind::bounded_degree)
    j["learner_max_degree"] = spec.learner_max_degree;
  return j;
}

inline nlohmann::json report_to_json(const RecoveryReport& report,
                                     const ExperimentSpec& spec) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& r : report.trials) {
    trials.push_back({{"trial", r.trial},
                      {"predicted_edges", r.predicted_edges},
                      {"true_edges", r.true_edges},
                      {"correct_edges", r.correct_edges},
                      {"precision", r.precision},
                      {"recall", r.recall},
                      {"exact_match", r.exact_match},
                      {"queries_used", r.queries_used},
                      {"in_scope", r.in_scope}});
  }
  return nlohmann::json{
      {"spec", spec_to_json(spec)},
      {"trials", trials},
      {"aggregate",
       {{"exact_recovery_rate", report.exact_recovery_rate},
        {"mean_precision", report.mean_precision},
        {"mean_recall", report.mean_recall},
        {"total_queries", report.total_queries},
        {"in_scope_trials", report.in_scope_trials}}}};
}

/// Writes whichever report files the spec names; returns the report.
inline RecoveryReport run_experiment_with_outputs(const ExperimentSpec& spec) {
  RecoveryReport report = run_experiment(spec);
  if (!spec.csv_path.empty()) {
    std::ofstream out(spec.csv_path);
    if (!out) throw std::runtime_error("cannot open " + spec.csv_path);
    write_recovery_csv(report, out);
  }
  if (!spec.json_path.empty()) {
    std::ofstream out(spec.json_path);
    if (!out) throw std::runtime_error("cannot open " + spec.json_path);
    out << report_to_json(report, spec).dump(2) << '\n';
  }
  return report;
}

// ---------------------------------------------------------------------------
// Experiment configuration files (JSON).
// ---------------------------------------------------------------------------

inline GraphFamilySpec family_spec_from_json(const nlohmann::json& j) {
  GraphFamilySpec spec;
  spec.family = family_from_name(j.at("kind").get<std::string>());
  spec.n = j.value("n", 0u);
  spec.degree = j.value("degree", 0u);
  if (j.contains("path_lengths"))
    spec.path_lengths = j.at("path_lengths").get<std::vector<std::uint32_t>>();
  spec.edge_probability = j.value("edge_probability", 0.0);
  spec.p_lo = j.at("p_lo").get<double>();
  spec.p_hi = j.at("p_hi").get<double>();
  spec.seed = j.value("seed", std::uint64_t{0});
  return spec;
}

inline ExperimentSpec experiment_spec_from_json(const nlohmann::json& j) {
  ExperimentSpec spec;
  spec.family = family_spec_from_json(j.at("family"));
  spec.learner = learner_from_name(j.at("learner").get<std::string>());
  const auto& config = j.at("config");
  spec.config.delta_lb = config.at("delta_lb").get<double>();
  spec.config.delta_fail = config.at("delta_fail").get<double>();
  if (config.contains("rounds_override"))
    spec.config.rounds_override = config.at("rounds_override").get<std::uint32_t>();
  spec.config.chernoff_constant = config.value("chernoff_constant", 32.0);
  spec.learner_max_degree = j.value("learner_max_degree", 0u);
  spec.trials = j.at("trials").get<std::uint32_t>();
  spec.master_seed = j.at("master_seed").get<std::uint64_t>();
  spec.fresh_graph_per_trial = j.value("fresh_graph_per_trial", true);
  spec.run_scope_check = j.value("run_scope_check", true);
  spec.jobs = j.value("jobs", 1u);
  if (j.contains("outputs")) {
    spec.csv_path = j.at("outputs").value("csv", "");
    spec.json_path = j.at("outputs").value("json", "");
  }
  return spec;
}

inline ExperimentSpec load_experiment_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return experiment_spec_from_json(j);
}

}  // namespace contagion
