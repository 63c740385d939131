#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radiomatch/engine.hpp"
#include "radiomatch/graph.hpp"
#include "radiomatch/schedule.hpp"

namespace radiomatch {

// Distributed maximal matching by randomized three-step handshakes.
//
// Each round an unmatched node flips itself into one of three roles and, if
// active, runs one side of the handshake:
//   recruiter: send own id; listen; on hearing (own, y) commit to y and
//              confirm with (own, y).
//   accepter:  listen; on hearing solo x reply (x, own); listen; on hearing
//              (x', own) commit to x'.
// A handshake that completes commits both endpoints to each other in the
// same round, so the partner variables always encode a matching.

enum class Role : std::uint8_t { Recruiter, Accepter, Asleep };

// Used when building a neighbor assignment: a node restricted to one side of
// the handshake maps the disallowed role to Asleep; sampling probabilities
// are otherwise unchanged.
enum class RoleRestriction : std::uint8_t { None, RecruitOnly, AcceptOnly };

// Role from one uniform draw x in [0,1]: recruiter on x <= r/2, accepter on
// r/2 < x <= r, asleep otherwise.
Role role_for(double x, double rate);
Role restrict_role(Role role, RoleRestriction restriction);

class MatchingProcess final : public NodeProcess {
 public:
  struct Params {
    const Schedule* schedule = nullptr;   // may be null when fixed_rate is set
    std::optional<double> fixed_rate;     // overrides the schedule (single-round studies)
    RoleRestriction restriction = RoleRestriction::None;
  };

  MatchingProcess(WireId my_id, Params params);

  // Fresh protocol state; the id and params stay.
  void reset();
  // Starts the node already matched, so it sleeps through every round.
  void preset_partner(WireId partner);

  Action on_act(const TickInfo& tick, RandomStream& rng) override;
  void on_receive(const TickInfo& tick, const Reception& reception) override;

  const std::optional<WireId>& partner() const { return partner_; }
  std::uint64_t matched_round() const { return matched_round_; }  // 0 while unmatched
  Role current_role() const { return role_; }

 private:
  double rate_for(std::uint64_t round) const;
  bool past_schedule(std::uint64_t round) const;

  WireId my_id_;
  Params params_;
  std::optional<WireId> partner_;
  std::uint64_t matched_round_ = 0;
  Role role_ = Role::Asleep;
  // Scratch for the round in progress.
  std::optional<WireId> solo_heard_;
  bool responded_ = false;
  bool confirm_pending_ = false;
  Message confirm_;
};

struct MatchingRunConfig {
  double c = 100.0;
  LogMode log_mode = LogMode::NaturalLog;
  IdMode id_mode = IdMode::Index;
  // Check partner consistency at the end of every round (not just at the
  // end of the run) and record when pairs formed.
  bool capture_history = false;
  std::uint64_t trace_timesteps = 0;
};

struct RoundEvent {
  std::uint64_t round = 0;
  std::vector<std::pair<NodeIndex, NodeIndex>> added;
};

struct MatchingRunResult {
  Matching matching;
  EnergyLedger ledger;
  ActionTrace trace;
  std::uint64_t rounds = 0;
  std::uint64_t timesteps = 0;
  // Partner consistency: mutual, over edges, and never reassigned.  Checked
  // at every captured round and always at the end; zero tolerance.
  bool invariants_ok = true;
  std::string violation;
  std::vector<RoundEvent> history;  // rounds where pairs formed (capture_history)
};

// Runs the full schedule (exactly 3 * t_max timesteps) and extracts the
// matching from the partner variables.  Deterministic given the seed.  In
// random-id mode, colliding ids abort the run with std::runtime_error.
MatchingRunResult run_matching(const Graph& g, const MatchingRunConfig& config,
                               std::uint64_t seed);

// Same, with a per-node role restriction (the neighbor-assignment builder).
MatchingRunResult run_matching_restricted(const Graph& g, const MatchingRunConfig& config,
                                          std::uint64_t seed,
                                          std::span<const RoleRestriction> restrictions);

// M(t): the matching in force after `round`, reconstructed from history.
Matching matching_at(const std::vector<RoundEvent>& history, std::uint64_t round);

// Fraction of `round_count` independent single rounds, run at a fixed
// participation rate, in which the endpoints of `edge` commit to each other.
// Nodes flagged in `matched` sit the round out.  Drives the same process and
// delivery stack as full runs; used to cross-check the enumeration oracle.
double pair_match_frequency(const Graph& g, const std::vector<bool>& matched, double rate,
                            Edge edge, std::uint64_t round_count, std::uint64_t seed);

}  // namespace radiomatch
