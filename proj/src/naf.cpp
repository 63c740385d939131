#include "radiomatch/naf.hpp"

#include <cmath>
#include <stdexcept>

namespace radiomatch {

std::uint64_t NafRunConfig::iterations_for_load_hint(double load_hint, NodeIndex n) {
  if (!(load_hint > 0)) throw std::invalid_argument("load hint must be positive");
  if (n < 2) throw std::invalid_argument("load hint needs n >= 2");
  return static_cast<std::uint64_t>(std::ceil(2.0 * load_hint * std::log(static_cast<double>(n))));
}

std::vector<RoleRestriction> restrict_roles(const std::vector<bool>& assigned) {
  std::vector<RoleRestriction> restrictions(assigned.size());
  for (std::size_t v = 0; v < assigned.size(); ++v) {
    restrictions[v] = assigned[v] ? RoleRestriction::AcceptOnly : RoleRestriction::RecruitOnly;
  }
  return restrictions;
}

NafRunResult run_naf(const Graph& g, const NafRunConfig& config, std::uint64_t seed) {
  const NodeIndex n = g.node_count();
  if (n < 2) throw std::invalid_argument("neighbor assignment needs at least two nodes");

  NafRunResult result;
  result.assignment = NafAssignment(n);
  for (NodeIndex v = 0; v < n; ++v) {
    if (g.degree(v) == 0) result.unassignable.push_back(v);
  }

  std::vector<bool> assigned(n, false);
  result.ledger = EnergyLedger(n);
  const MatchingRunConfig matching_config{config.c, config.log_mode, IdMode::Index, false, 0};

  for (std::uint64_t pass = 0; pass <= config.iterations; ++pass) {
    const std::uint64_t pass_seed = substream_seed(seed, pass);
    MatchingRunResult run = pass == 0
        ? run_matching(g, matching_config, pass_seed)
        : run_matching_restricted(g, matching_config, pass_seed, restrict_roles(assigned));
    if (!run.invariants_ok && result.invariants_ok) {
      result.invariants_ok = false;
      result.violation = run.violation;
    }
    // (Re-)assign both endpoints of every matched edge to each other.  An
    // accepter that already had a target gets re-pointed; only the two
    // endpoints' targets change, so no third node's in-degree grows.
    for (const auto& [u, v] : run.matching.pairs()) {
      result.assignment.target[u] = v;
      result.assignment.target[v] = u;
      assigned[u] = true;
      assigned[v] = true;
    }
    if (pass == 0) result.opening_run_maximal = is_maximal(g, run.matching);
    result.assigned_after.push_back(result.assignment.assigned_count());
    result.ledger.accumulate(run.ledger);
    result.total_timesteps += run.timesteps;
  }

  result.load = naf_load(g, result.assignment);
  return result;
}

}  // namespace radiomatch
