#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radiomatch/matching.hpp"

namespace radiomatch {

// Builds a neighbor assignment function (each node backed up by one of its
// neighbors) out of repeated matching runs: one unrestricted run, then k
// runs where only unassigned nodes may recruit and only assigned nodes may
// accept.  Every edge a run finds points both endpoints at each other, an
// accepter's old target being overwritten; that keeps the final in-degree
// within k+1.

struct NafRunConfig {
  std::uint64_t iterations = 0;  // k: restricted passes after the opening run
  double c = 100.0;
  LogMode log_mode = LogMode::NaturalLog;

  // k = ceil(2 * load_hint * ln n), the iteration count that makes full
  // coverage likely when an assignment of load `load_hint` exists.
  static std::uint64_t iterations_for_load_hint(double load_hint, NodeIndex n);
};

// Per-node role filter from the assigned flags: unassigned nodes may only
// recruit, assigned nodes may only accept.
std::vector<RoleRestriction> restrict_roles(const std::vector<bool>& assigned);

struct NafRunResult {
  NafAssignment assignment;                // possibly partial
  NafLoadResult load;
  std::vector<NodeIndex> assigned_after;   // count after pass i, i = 0..k
  EnergyLedger ledger;                     // summed over all passes
  std::vector<NodeIndex> unassignable;     // isolated vertices, reported not fatal
  bool opening_run_maximal = true;         // no edge left with both ends unassigned
  bool invariants_ok = true;
  std::string violation;
  std::uint64_t total_timesteps = 0;
};

// Runs all k+1 passes (no early exit when coverage completes).  Throws
// std::invalid_argument when n < 2.
NafRunResult run_naf(const Graph& g, const NafRunConfig& config, std::uint64_t seed);

}  // namespace radiomatch
