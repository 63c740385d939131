#include "radiomatch/batch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "radiomatch/generators.hpp"
#include "radiomatch/graph_io.hpp"
#include "radiomatch/schedule.hpp"

namespace radiomatch {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs `count` trials across `jobs` workers.  Results land in index order
// regardless of scheduling; a trial is skipped (left empty) once the budget
// is exhausted.
template <typename Record, typename RunTrial>
std::pair<std::vector<Record>, bool> run_trials(int count, int jobs, double budget_seconds,
                                                const RunTrial& run_trial) {
  std::vector<std::optional<Record>> slots(count);
  std::atomic<int> next{0};
  std::atomic<bool> out_of_budget{false};
  const auto deadline = budget_seconds > 0
                            ? std::optional(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                               std::chrono::duration<double>(budget_seconds)))
                            : std::nullopt;
  const auto worker = [&] {
    for (;;) {
      const int index = next.fetch_add(1);
      if (index >= count) return;
      if (deadline && Clock::now() > *deadline) {
        out_of_budget.store(true);
        return;
      }
      slots[index] = run_trial(index);
    }
  };
  const int worker_count = std::clamp(jobs, 1, count);
  if (worker_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<Record> done;
  done.reserve(count);
  for (auto& slot : slots) {
    if (slot) done.push_back(std::move(*slot));
  }
  return {std::move(done), out_of_budget.load()};
}

nlohmann::ordered_json percentile_summary(std::vector<std::uint64_t> values) {
  nlohmann::ordered_json out;
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());
  const auto rank = [&](double q) {
    const std::size_t index =
        std::min(values.size() - 1,
                 static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size()))) -
                     (q > 0 ? 1 : 0));
    return values[index];
  };
  out["p50"] = rank(0.50);
  out["p90"] = rank(0.90);
  out["p99"] = rank(0.99);
  out["max"] = values.back();
  return out;
}

const char* log_mode_name(LogMode mode) { return mode == LogMode::NaturalLog ? "ln" : "log2"; }
const char* id_mode_name(IdMode mode) { return mode == IdMode::Index ? "index" : "random"; }

}  // namespace

GraphInput load_graph_input(const std::string& gen_spec, const std::string& file_path,
                            std::uint64_t seed) {
  if (gen_spec.empty() == file_path.empty()) {
    throw std::invalid_argument("need exactly one of a generator spec or a graph file");
  }
  if (!gen_spec.empty()) return {make_graph(gen_spec, seed), gen_spec};
  return {read_graph_file(file_path), file_path};
}

int MatchBatchReport::validity_violations() const {
  int count = 0;
  for (const auto& t : trials) count += !t.valid;
  return count;
}

int MatchBatchReport::energy_bound_violations() const {
  int count = 0;
  for (const auto& t : trials) count += !t.energy_bound_ok;
  return count;
}

int MatchBatchReport::participation_bound_violations() const {
  int count = 0;
  for (const auto& t : trials) count += !t.participation_bound_ok;
  return count;
}

double MatchBatchReport::maximality_rate() const {
  if (trials.empty()) return 0;
  int count = 0;
  for (const auto& t : trials) count += t.maximal;
  return static_cast<double>(count) / static_cast<double>(trials.size());
}

bool MatchBatchReport::timesteps_exact() const {
  for (const auto& t : trials) {
    if (t.timesteps != timesteps) return false;
  }
  return true;
}

std::uint64_t MatchBatchReport::max_energy_overall() const {
  std::uint64_t best = 0;
  for (const auto& t : trials) best = std::max(best, t.max_energy);
  return best;
}

nlohmann::ordered_json MatchBatchReport::to_json(bool include_timing) const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = "match";
  j["config"] = {{"graph", graph_description},
                 {"n", n},
                 {"edges", edge_count},
                 {"C", config.c},
                 {"log_mode", log_mode_name(config.log_mode)},
                 {"id_mode", id_mode_name(config.id_mode)},
                 {"seed", config.seed},
                 {"trials", config.trials},
                 {"history_every", config.history_every},
                 {"jobs", config.jobs}};
  j["schedule"] = {{"log_n", log_n},
                   {"t_max", t_max},
                   {"timesteps", timesteps},
                   {"energy_bound", energy_bound}};
  auto& rows = j["trials"] = nlohmann::ordered_json::array();
  std::vector<std::uint64_t> pooled_energy;
  for (const auto& t : trials) {
    nlohmann::ordered_json row;
    row["trial"] = t.trial;
    row["seed"] = t.seed;
    row["matching_size"] = t.matching_size;
    row["valid"] = t.valid;
    row["maximal"] = t.maximal;
    row["max_energy"] = t.max_energy;
    row["total_energy"] = t.total_energy;
    row["timesteps"] = t.timesteps;
    row["energy_bound_ok"] = t.energy_bound_ok;
    row["participation_bound_ok"] = t.participation_bound_ok;
    row["energy"] = t.energy;
    row["rounds_participated"] = t.rounds_participated;
    if (!t.violation.empty()) row["violation"] = t.violation;
    if (t.history_checked) {
      row["history_checked"] = true;
      auto& formed = row["pairs_formed"] = nlohmann::ordered_json::array();
      for (const auto& event : t.history) {
        for (const auto& [u, v] : event.added) formed.push_back({event.round, u, v});
      }
    }
    if (include_timing) row["wall_ms"] = t.wall_ms;
    rows.push_back(std::move(row));
    pooled_energy.insert(pooled_energy.end(), t.energy.begin(), t.energy.end());
  }
  nlohmann::ordered_json summary;
  summary["trials_requested"] = config.trials;
  summary["trials_completed"] = trials.size();
  summary["aborted"] = aborted;
  summary["validity_violations"] = validity_violations();
  summary["maximality_rate"] = maximality_rate();
  summary["max_energy"] = max_energy_overall();
  summary["energy_bound"] = energy_bound;
  summary["energy_bound_violations"] = energy_bound_violations();
  summary["participation_bound_violations"] = participation_bound_violations();
  summary["timesteps_exact"] = timesteps_exact();
  summary["energy_percentiles"] = percentile_summary(std::move(pooled_energy));
  if (include_timing) summary["wall_ms"] = wall_ms;
  j["summary"] = std::move(summary);
  return j;
}

std::string MatchBatchReport::to_csv() const {
  std::ostringstream out;
  out << "trial,seed,matching_size,valid,maximal,max_energy,total_energy,timesteps,"
         "energy_bound_ok\n";
  for (const auto& t : trials) {
    out << t.trial << ',' << t.seed << ',' << t.matching_size << ',' << t.valid << ','
        << t.maximal << ',' << t.max_energy << ',' << t.total_energy << ',' << t.timesteps << ','
        << t.energy_bound_ok << '\n';
  }
  return out.str();
}

MatchBatchReport run_match_batch(const GraphInput& input, const MatchBatchConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("need at least one trial");
  const auto start = Clock::now();
  const Graph& g = input.graph;
  const Schedule schedule(config.c, g.node_count(), config.log_mode);

  MatchBatchReport report;
  report.graph_description = input.description;
  report.n = g.node_count();
  report.edge_count = g.edge_count();
  report.config = config;
  report.log_n = schedule.log_n();
  report.t_max = schedule.rounds();
  report.timesteps = schedule.timesteps();
  report.energy_bound = schedule.energy_bound();

  const auto run_trial = [&](int index) -> MatchTrialRecord {
    const auto trial_start = Clock::now();
    MatchTrialRecord record;
    record.trial = index;
    record.seed = substream_seed(config.seed, static_cast<std::uint64_t>(index));
    const bool history =
        config.history_every > 0 && index % config.history_every == 0;
    MatchingRunConfig run_config{config.c, config.log_mode, config.id_mode, history, 0};
    MatchingRunResult result = run_matching(g, run_config, record.seed);

    record.matching_size = result.matching.size();
    record.valid = result.invariants_ok;
    record.violation = result.violation;
    record.maximal = record.valid && is_maximal(g, result.matching);
    record.history_checked = history;
    record.history = std::move(result.history);
    record.max_energy = result.ledger.max_energy();
    record.total_energy = result.ledger.total_energy();
    record.timesteps = result.timesteps;
    record.energy_bound_ok =
        static_cast<double>(record.max_energy) <= schedule.energy_bound();
    record.participation_bound_ok = true;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      if (result.ledger.energy[v] > 3 * static_cast<std::uint64_t>(result.ledger.rounds_participated[v])) {
        record.participation_bound_ok = false;
      }
    }
    record.energy = std::move(result.ledger.energy);
    record.rounds_participated = std::move(result.ledger.rounds_participated);
    record.wall_ms = ms_since(trial_start);
    return record;
  };

  auto [records, aborted] =
      run_trials<MatchTrialRecord>(config.trials, config.jobs, config.budget_seconds, run_trial);
  report.trials = std::move(records);
  report.aborted = aborted;
  report.wall_ms = ms_since(start);
  return report;
}

double NafBatchReport::full_coverage_rate() const {
  if (trials.empty()) return 0;
  int count = 0;
  for (const auto& t : trials) count += t.assigned == n;
  return static_cast<double>(count) / static_cast<double>(trials.size());
}

int NafBatchReport::load_bound_violations() const {
  int count = 0;
  for (const auto& t : trials) count += !t.load_within_bound;
  return count;
}

std::vector<double> NafBatchReport::mean_uncovered_fraction() const {
  std::vector<double> mean(k + 1, 0);
  if (trials.empty() || n == 0) return mean;
  for (const auto& t : trials) {
    for (std::size_t i = 0; i < mean.size() && i < t.assigned_after.size(); ++i) {
      mean[i] += 1.0 - static_cast<double>(t.assigned_after[i]) / static_cast<double>(n);
    }
  }
  for (auto& value : mean) value /= static_cast<double>(trials.size());
  return mean;
}

nlohmann::ordered_json NafBatchReport::to_json(bool include_timing) const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = "naf";
  j["config"] = {{"graph", graph_description},
                 {"n", n},
                 {"edges", edge_count},
                 {"k", k},
                 {"k_from_load_hint", config.k_from_load_hint},
                 {"load_hint", config.load_hint},
                 {"C", config.c},
                 {"log_mode", log_mode_name(config.log_mode)},
                 {"seed", config.seed},
                 {"trials", config.trials},
                 {"jobs", config.jobs}};
  j["unassignable"] = unassignable;
  auto& rows = j["trials"] = nlohmann::ordered_json::array();
  for (const auto& t : trials) {
    nlohmann::ordered_json row;
    row["trial"] = t.trial;
    row["seed"] = t.seed;
    row["assigned"] = t.assigned;
    row["coverage"] = t.coverage;
    row["load"] = t.load;
    row["load_total"] = t.load_total;
    row["load_within_bound"] = t.load_within_bound;
    row["opening_run_maximal"] = t.opening_run_maximal;
    row["invariants_ok"] = t.invariants_ok;
    row["assigned_after"] = t.assigned_after;
    row["max_energy"] = t.max_energy;
    row["total_timesteps"] = t.total_timesteps;
    if (!t.violation.empty()) row["violation"] = t.violation;
    if (include_timing) row["wall_ms"] = t.wall_ms;
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json summary;
  summary["trials_requested"] = config.trials;
  summary["trials_completed"] = trials.size();
  summary["aborted"] = aborted;
  summary["full_coverage_rate"] = full_coverage_rate();
  summary["load_bound"] = k + 1;
  summary["load_bound_violations"] = load_bound_violations();
  summary["mean_uncovered_fraction"] = mean_uncovered_fraction();
  if (include_timing) summary["wall_ms"] = wall_ms;
  j["summary"] = std::move(summary);
  return j;
}

std::string NafBatchReport::to_csv() const {
  std::ostringstream out;
  out << "trial,seed,assigned,coverage,load,load_total,load_within_bound,max_energy,"
         "total_timesteps\n";
  for (const auto& t : trials) {
    out << t.trial << ',' << t.seed << ',' << t.assigned << ',' << t.coverage << ',' << t.load
        << ',' << t.load_total << ',' << t.load_within_bound << ',' << t.max_energy << ','
        << t.total_timesteps << '\n';
  }
  return out.str();
}

NafBatchReport run_naf_batch(const GraphInput& input, const NafBatchConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("need at least one trial");
  const auto start = Clock::now();
  const Graph& g = input.graph;

  NafBatchReport report;
  report.graph_description = input.description;
  report.n = g.node_count();
  report.edge_count = g.edge_count();
  report.config = config;
  report.k = config.k_from_load_hint
                 ? NafRunConfig::iterations_for_load_hint(config.load_hint, g.node_count())
                 : config.k;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) == 0) report.unassignable.push_back(v);
  }

  const NafRunConfig run_config{report.k, config.c, config.log_mode};
  const auto run_trial = [&](int index) -> NafTrialRecord {
    const auto trial_start = Clock::now();
    NafTrialRecord record;
    record.trial = index;
    record.seed = substream_seed(config.seed, static_cast<std::uint64_t>(index));
    NafRunResult result = run_naf(g, run_config, record.seed);
    record.assigned = result.assignment.assigned_count();
    record.coverage = static_cast<double>(record.assigned) / static_cast<double>(g.node_count());
    record.load = result.load.load;
    record.load_total = result.load.total;
    record.load_within_bound = result.load.load <= report.k + 1;
    record.opening_run_maximal = result.opening_run_maximal;
    record.invariants_ok = result.invariants_ok;
    record.violation = result.violation;
    record.assigned_after = std::move(result.assigned_after);
    record.max_energy = result.ledger.max_energy();
    record.total_timesteps = result.total_timesteps;
    record.wall_ms = ms_since(trial_start);
    return record;
  };

  auto [records, aborted] =
      run_trials<NafTrialRecord>(config.trials, config.jobs, config.budget_seconds, run_trial);
  report.trials = std::move(records);
  report.aborted = aborted;
  report.wall_ms = ms_since(start);
  return report;
}

std::string resolve_output_path(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("RADIOMATCH_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string joined(dir);
  if (joined.back() != '/') joined.push_back('/');
  return joined + path;
}

}  // namespace radiomatch
