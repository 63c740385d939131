#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "radiomatch/graph.hpp"
#include "radiomatch/matching.hpp"
#include "radiomatch/naf.hpp"

namespace radiomatch {

inline constexpr const char* kReportSchema = "radiomatch-report/1";

struct GraphInput {
  Graph graph;
  std::string description;  // generator spec or file path, echoed in reports
};

// Exactly one of `gen_spec` / `file_path` must be non-empty.
GraphInput load_graph_input(const std::string& gen_spec, const std::string& file_path,
                            std::uint64_t seed);

// ---------------------------------------------------------------------------
// Matching batches

struct MatchBatchConfig {
  double c = 100.0;
  LogMode log_mode = LogMode::NaturalLog;
  IdMode id_mode = IdMode::Index;
  std::uint64_t seed = 1;
  int trials = 1;
  // 0 disables; k > 0 turns on per-round invariant checks (and records when
  // pairs formed) for every k-th trial.
  int history_every = 0;
  int jobs = 1;
  double budget_seconds = 0;  // 0 = unlimited; exceeded budget aborts cleanly
};

struct MatchTrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  std::size_t matching_size = 0;
  bool valid = false;
  bool maximal = false;
  bool history_checked = false;
  std::uint64_t max_energy = 0;
  std::uint64_t total_energy = 0;
  std::uint64_t timesteps = 0;
  bool energy_bound_ok = false;        // max energy <= 20 C logn^2
  bool participation_bound_ok = false; // energy(v) <= 3 * rounds participated
  std::string violation;
  std::vector<std::uint64_t> energy;
  std::vector<std::uint32_t> rounds_participated;
  std::vector<RoundEvent> history;  // only when history_checked
  double wall_ms = 0;
};

struct MatchBatchReport {
  std::string graph_description;
  NodeIndex n = 0;
  std::size_t edge_count = 0;
  MatchBatchConfig config;
  double log_n = 0;
  std::uint64_t t_max = 0;
  std::uint64_t timesteps = 0;
  double energy_bound = 0;
  std::vector<MatchTrialRecord> trials;  // completed trials, in index order
  bool aborted = false;
  double wall_ms = 0;

  int validity_violations() const;
  int energy_bound_violations() const;
  int participation_bound_violations() const;
  double maximality_rate() const;
  bool timesteps_exact() const;  // every trial ran exactly 3 * t_max steps
  std::uint64_t max_energy_overall() const;

  // Timing fields are emitted only when include_timing is set, so two runs of
  // the same config and seed serialize byte-identically without them.
  nlohmann::ordered_json to_json(bool include_timing = true) const;
  std::string to_csv() const;
};

MatchBatchReport run_match_batch(const GraphInput& input, const MatchBatchConfig& config);

// ---------------------------------------------------------------------------
// Neighbor-assignment batches

struct NafBatchConfig {
  std::uint64_t k = 0;
  bool k_from_load_hint = false;
  double load_hint = 0;  // used when k_from_load_hint
  double c = 100.0;
  LogMode log_mode = LogMode::NaturalLog;
  std::uint64_t seed = 1;
  int trials = 1;
  int jobs = 1;
  double budget_seconds = 0;
};

struct NafTrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  NodeIndex assigned = 0;
  double coverage = 0;
  NodeIndex load = 0;
  bool load_total = false;
  bool load_within_bound = false;  // load <= k + 1
  bool opening_run_maximal = false;
  bool invariants_ok = false;
  std::vector<NodeIndex> assigned_after;
  std::uint64_t max_energy = 0;
  std::uint64_t total_timesteps = 0;
  std::string violation;
  double wall_ms = 0;
};

struct NafBatchReport {
  std::string graph_description;
  NodeIndex n = 0;
  std::size_t edge_count = 0;
  NafBatchConfig config;
  std::uint64_t k = 0;  // resolved iteration count
  std::vector<NodeIndex> unassignable;
  std::vector<NafTrialRecord> trials;
  bool aborted = false;
  double wall_ms = 0;

  double full_coverage_rate() const;
  int load_bound_violations() const;
  // Mean fraction of nodes still unassigned after pass i, across trials.
  std::vector<double> mean_uncovered_fraction() const;

  nlohmann::ordered_json to_json(bool include_timing = true) const;
  std::string to_csv() const;
};

NafBatchReport run_naf_batch(const GraphInput& input, const NafBatchConfig& config);

// Resolves a report path: absolute paths pass through; relative ones are
// joined onto RADIOMATCH_OUT_DIR when that is set.
std::string resolve_output_path(const std::string& path);

}  // namespace radiomatch
