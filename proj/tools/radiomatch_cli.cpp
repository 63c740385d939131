#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "radiomatch/batch.hpp"
#include "radiomatch/generators.hpp"
#include "radiomatch/graph_io.hpp"
#include "radiomatch/oracles.hpp"

namespace {

using namespace radiomatch;

struct GraphArgs {
  std::string gen;
  std::string file;
};

void add_graph_options(CLI::App* cmd, GraphArgs& args) {
  cmd->add_option("--gen", args.gen,
                  "generator spec: path:N, star:D, complete:N, grid:WxH, "
                  "erdos_renyi:N,P, cliques_star:C,S");
  cmd->add_option("--graph", args.file, "edge-list file (line 1 \"n m\", then \"u v\" rows)");
}

LogMode parse_log_mode(const std::string& name) {
  if (name == "ln") return LogMode::NaturalLog;
  if (name == "log2") return LogMode::Log2;
  throw std::runtime_error("--log-mode must be ln or log2");
}

std::vector<NodeIndex> parse_index_list(const std::string& text) {
  std::vector<NodeIndex> out;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(static_cast<NodeIndex>(std::stoul(field)));
  return out;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  const std::string resolved = resolve_output_path(out_path);
  std::ofstream out(resolved);
  if (!out) throw std::runtime_error("cannot write to " + resolved);
  out << content;
}

int run_match_command(const GraphArgs& graph_args, MatchBatchConfig config,
                      const std::string& format, const std::string& out_path) {
  const GraphInput input = load_graph_input(graph_args.gen, graph_args.file, config.seed);
  const MatchBatchReport report = run_match_batch(input, config);
  emit(format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n", out_path);
  return report.validity_violations() == 0 ? 0 : 1;
}

int run_naf_command(const GraphArgs& graph_args, NafBatchConfig config, const std::string& format,
                    const std::string& out_path) {
  const GraphInput input = load_graph_input(graph_args.gen, graph_args.file, config.seed);
  const NafBatchReport report = run_naf_batch(input, config);
  emit(format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n", out_path);
  for (const auto& trial : report.trials) {
    if (!trial.invariants_ok) return 1;
  }
  return 0;
}

int run_sweep_command(const std::string& family, const std::vector<NodeIndex>& n_list,
                      const std::vector<double>& c_list, MatchBatchConfig base,
                      const std::string& out_path) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  int violations = 0;
  for (NodeIndex n : n_list) {
    for (double c : c_list) {
      std::string spec = family;
      const auto hole = spec.find("{n}");
      if (hole == std::string::npos) throw std::runtime_error("sweep family needs a {n} placeholder");
      spec.replace(hole, 3, std::to_string(n));
      MatchBatchConfig config = base;
      config.c = c;
      const GraphInput input = load_graph_input(spec, "", config.seed);
      const MatchBatchReport report = run_match_batch(input, config);
      violations += report.validity_violations();
      nlohmann::ordered_json row;
      row["graph"] = spec;
      row["n"] = report.n;
      row["C"] = c;
      row["summary"] = report.to_json()["summary"];
      rows.push_back(std::move(row));
    }
  }
  nlohmann::ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["command"] = "sweep";
  doc["runs"] = std::move(rows);
  emit(doc.dump(2) + "\n", out_path);
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "radiomatch: simulator and oracles for low-energy handshake matching in "
      "no-collision-detection radio networks"};
  app.require_subcommand(1);

  // match ------------------------------------------------------------------
  auto* match = app.add_subcommand("match", "run matching trials and report statistics");
  GraphArgs match_graph;
  add_graph_options(match, match_graph);
  MatchBatchConfig match_config;
  std::string match_log_mode = "ln", match_id_mode = "index";
  std::string match_format = "json", match_out;
  match->add_option("--C", match_config.c, "schedule constant C")->check(CLI::PositiveNumber);
  match->add_option("--trials", match_config.trials, "number of trials")
      ->check(CLI::PositiveNumber);
  match->add_option("--seed", match_config.seed, "master seed (default 1, echoed in the report)");
  match->add_option("--history-every", match_config.history_every,
                    "per-round invariant checks on every k-th trial (0 = off)");
  match->add_option("--jobs", match_config.jobs, "concurrent trial runners");
  match->add_option("--budget-sec", match_config.budget_seconds,
                    "wall-clock budget; exceeding it aborts the batch cleanly");
  match->add_option("--log-mode", match_log_mode, "ln (default) or log2");
  match->add_option("--id-mode", match_id_mode, "index (default) or random wire ids");
  match->add_option("--format", match_format, "json (default) or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  match->add_option("--out", match_out,
                    "output path (default stdout; relative paths join RADIOMATCH_OUT_DIR "
                    "when set)");

  // naf ---------------------------------------------------------------------
  auto* naf = app.add_subcommand("naf", "build neighbor assignments and report coverage/load");
  GraphArgs naf_graph;
  add_graph_options(naf, naf_graph);
  NafBatchConfig naf_config;
  std::string naf_log_mode = "ln", naf_format = "json", naf_out;
  double naf_load_hint = 0;
  auto* k_option = naf->add_option("--k", naf_config.k, "restricted passes after the opening run");
  auto* l_option =
      naf->add_option("--L", naf_load_hint, "known feasible load; sets k = ceil(2 L ln n)");
  k_option->excludes(l_option);
  naf->add_option("--C", naf_config.c, "schedule constant C")->check(CLI::PositiveNumber);
  naf->add_option("--trials", naf_config.trials, "number of trials")->check(CLI::PositiveNumber);
  naf->add_option("--seed", naf_config.seed, "master seed (default 1, echoed in the report)");
  naf->add_option("--jobs", naf_config.jobs, "concurrent trial runners");
  naf->add_option("--budget-sec", naf_config.budget_seconds, "wall-clock budget");
  naf->add_option("--log-mode", naf_log_mode, "ln (default) or log2");
  naf->add_option("--format", naf_format, "json (default) or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  naf->add_option("--out", naf_out, "output path (default stdout)");

  // oracle -------------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "centralized exact computations");
  oracle->require_subcommand(1);

  auto* mc = oracle->add_subcommand("mc", "matching cover number (n <= 12)");
  GraphArgs mc_graph;
  add_graph_options(mc, mc_graph);

  auto* nafload = oracle->add_subcommand("nafload", "minimum assignment load");
  GraphArgs nafload_graph;
  add_graph_options(nafload, nafload_graph);

  auto* greedy = oracle->add_subcommand("greedy", "greedy matching over a shuffled edge order");
  GraphArgs greedy_graph;
  add_graph_options(greedy, greedy_graph);
  std::uint64_t greedy_seed = 1;
  greedy->add_option("--shuffle-seed", greedy_seed, "seed for the edge shuffle (default 1)");

  auto* pairprob =
      oracle->add_subcommand("pairprob", "exact single-round pairing probability for one edge");
  GraphArgs pairprob_graph;
  add_graph_options(pairprob, pairprob_graph);
  std::string pairprob_edge, pairprob_matched;
  double pairprob_rate = 0.5;
  bool pairprob_full = false;
  pairprob->add_option("--edge", pairprob_edge, "edge as \"u,v\"")->required();
  pairprob->add_option("--r", pairprob_rate, "participation rate in (0, 1]")->required();
  pairprob->add_option("--matched", pairprob_matched, "already-matched nodes, \"a,b,c\"");
  pairprob->add_flag("--full", pairprob_full, "enumerate all nodes, not just the 2-hop ball");

  auto* thm2 =
      oracle->add_subcommand("verify_thm2", "check minimum load against the matching cover number");
  GraphArgs thm2_graph;
  add_graph_options(thm2, thm2_graph);
  NodeIndex thm2_upto = 0;
  thm2->add_option("--all-connected-upto", thm2_upto,
                   "sweep every connected graph with 2..N nodes (N <= 7)");

  // sweep ----------------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "matching batches over an n x C grid");
  std::string sweep_family;
  std::string sweep_n_list, sweep_c_list, sweep_out;
  MatchBatchConfig sweep_config;
  sweep->add_option("--family", sweep_family, "graph spec with {n}, e.g. erdos_renyi:{n},0.2")
      ->required();
  sweep->add_option("--n-list", sweep_n_list, "comma-separated node counts")->required();
  sweep->add_option("--C-list", sweep_c_list, "comma-separated schedule constants")->required();
  sweep->add_option("--trials", sweep_config.trials, "trials per grid point");
  sweep->add_option("--seed", sweep_config.seed, "master seed");
  sweep->add_option("--jobs", sweep_config.jobs, "concurrent trial runners");
  sweep->add_option("--out", sweep_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (match->parsed()) {
      match_config.log_mode = parse_log_mode(match_log_mode);
      if (match_id_mode == "random") {
        match_config.id_mode = IdMode::Random;
      } else if (match_id_mode != "index") {
        throw std::runtime_error("--id-mode must be index or random");
      }
      return run_match_command(match_graph, match_config, match_format, match_out);
    }
    if (naf->parsed()) {
      naf_config.log_mode = parse_log_mode(naf_log_mode);
      if (l_option->count() > 0) {
        naf_config.k_from_load_hint = true;
        naf_config.load_hint = naf_load_hint;
      } else if (k_option->count() == 0) {
        throw std::runtime_error("naf needs --k or --L");
      }
      return run_naf_command(naf_graph, naf_config, naf_format, naf_out);
    }
    if (mc->parsed()) {
      const GraphInput input = load_graph_input(mc_graph.gen, mc_graph.file, 1);
      std::cout << oracles::matching_cover_number(input.graph) << '\n';
      return 0;
    }
    if (nafload->parsed()) {
      const GraphInput input = load_graph_input(nafload_graph.gen, nafload_graph.file, 1);
      std::cout << oracles::min_naf_load(input.graph) << '\n';
      return 0;
    }
    if (greedy->parsed()) {
      const GraphInput input = load_graph_input(greedy_graph.gen, greedy_graph.file, greedy_seed);
      const Matching m = oracles::greedy_matching(input.graph, greedy_seed);
      std::cout << "size = " << m.size()
                << ", maximal = " << (is_maximal(input.graph, m) ? "yes" : "no")
                << ", shuffle_seed = " << greedy_seed << '\n';
      for (const auto& [u, v] : m.pairs()) std::cout << u << ' ' << v << '\n';
      return 0;
    }
    if (pairprob->parsed()) {
      const GraphInput input = load_graph_input(pairprob_graph.gen, pairprob_graph.file, 1);
      const auto endpoints = parse_index_list(pairprob_edge);
      if (endpoints.size() != 2) throw std::runtime_error("--edge needs exactly \"u,v\"");
      std::vector<bool> matched(input.graph.node_count(), false);
      if (!pairprob_matched.empty()) {
        for (NodeIndex v : parse_index_list(pairprob_matched)) matched.at(v) = true;
      }
      const Edge edge{endpoints[0], endpoints[1]};
      const auto exact = oracles::pair_probability_exact(
          input.graph, matched, pairprob_rate, edge,
          pairprob_full ? oracles::Enumeration::Full : oracles::Enumeration::DistanceTwo);
      const double bound =
          oracles::pair_probability_lower_bound(input.graph, matched, pairprob_rate, edge);
      const bool ok = static_cast<double>(exact.value) >= bound - 1e-12;
      std::cout << "exact = " << static_cast<double>(exact.value) << " (" << exact.method << ")\n"
                << "bound = " << bound << '\n'
                << "exact >= bound: " << (ok ? "yes" : "NO") << '\n';
      return ok ? 0 : 1;
    }
    if (thm2->parsed()) {
      if (thm2_upto > 0) {
        int graphs = 0, counterexamples = 0;
        for (NodeIndex n = 2; n <= thm2_upto; ++n) {
          int bad = 0;
          const auto family = oracles::all_connected_graphs(n);
          for (const Graph& g : family) bad += !oracles::verify_naf_mc_theorem(g).consistent;
          std::cout << "n=" << n << ": " << family.size() << " graphs, " << bad
                    << " counterexamples\n";
          graphs += static_cast<int>(family.size());
          counterexamples += bad;
        }
        std::cout << (counterexamples == 0 ? "consistent" : "INCONSISTENT") << ": " << graphs
                  << " graphs, " << counterexamples << " counterexamples\n";
        return counterexamples == 0 ? 0 : 1;
      }
      const GraphInput input = load_graph_input(thm2_graph.gen, thm2_graph.file, 1);
      const auto result = oracles::verify_naf_mc_theorem(input.graph);
      std::cout << "min_load = " << result.naf_load << ", cover_number = " << result.cover_number
                << ", consistent = " << (result.consistent ? "yes" : "NO") << '\n';
      return result.consistent ? 0 : 1;
    }
    if (sweep->parsed()) {
      std::vector<double> c_list;
      std::istringstream in(sweep_c_list);
      std::string field;
      while (std::getline(in, field, ',')) c_list.push_back(std::stod(field));
      return run_sweep_command(sweep_family, parse_index_list(sweep_n_list), c_list, sweep_config,
                               sweep_out);
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  }
  return 2;
}
