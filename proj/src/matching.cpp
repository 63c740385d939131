#include "radiomatch/matching.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace radiomatch {

namespace {
constexpr std::uint64_t kIdStream = 0x1d5face;  // sub-seed tag for random ids
}

Role role_for(double x, double rate) {
  if (x <= rate / 2) return Role::Recruiter;
  if (x <= rate) return Role::Accepter;
  return Role::Asleep;
}

Role restrict_role(Role role, RoleRestriction restriction) {
  switch (restriction) {
    case RoleRestriction::None:
      return role;
    case RoleRestriction::RecruitOnly:
      return role == Role::Accepter ? Role::Asleep : role;
    case RoleRestriction::AcceptOnly:
      return role == Role::Recruiter ? Role::Asleep : role;
  }
  return role;
}

MatchingProcess::MatchingProcess(WireId my_id, Params params)
    : my_id_(std::move(my_id)), params_(params) {
  if (params_.schedule == nullptr && !params_.fixed_rate.has_value()) {
    throw std::invalid_argument("matching process needs a schedule or a fixed rate");
  }
}

void MatchingProcess::reset() {
  partner_.reset();
  matched_round_ = 0;
  role_ = Role::Asleep;
  solo_heard_.reset();
  responded_ = false;
  confirm_pending_ = false;
}

void MatchingProcess::preset_partner(WireId partner) {
  partner_ = std::move(partner);
  matched_round_ = 0;
}

double MatchingProcess::rate_for(std::uint64_t round) const {
  if (params_.fixed_rate) return *params_.fixed_rate;
  return params_.schedule->participation_rate(static_cast<double>(round));
}

bool MatchingProcess::past_schedule(std::uint64_t round) const {
  return params_.schedule != nullptr && round > params_.schedule->rounds();
}

Action MatchingProcess::on_act(const TickInfo& tick, RandomStream& rng) {
  switch (tick.step) {
    case 1: {
      solo_heard_.reset();
      responded_ = false;
      confirm_pending_ = false;
      if (partner_.has_value() || past_schedule(tick.round)) {
        role_ = Role::Asleep;
        return Action::sleep();
      }
      role_ = restrict_role(role_for(rng.uniform01(), rate_for(tick.round)), params_.restriction);
      switch (role_) {
        case Role::Recruiter:
          return Action::send(Message::solo(my_id_));
        case Role::Accepter:
          return Action::listen();
        case Role::Asleep:
          return Action::sleep();
      }
      return Action::sleep();
    }
    case 2:
      if (role_ == Role::Recruiter) return Action::listen();
      if (role_ == Role::Accepter && solo_heard_.has_value()) {
        responded_ = true;
        return Action::send(Message::pair(*solo_heard_, my_id_));
      }
      return Action::sleep();
    case 3:
      // A recruiter that committed still sends its confirmation; only then
      // does it go silent for the rest of the run.
      if (role_ == Role::Recruiter && confirm_pending_) return Action::send(confirm_);
      if (role_ == Role::Accepter && responded_) return Action::listen();
      return Action::sleep();
    default:
      return Action::sleep();
  }
}

void MatchingProcess::on_receive(const TickInfo& tick, const Reception& reception) {
  if (!reception.received) return;
  const Message& m = reception.message;
  switch (tick.step) {
    case 1:
      // Anything other than a solo here is ignored (cannot occur under
      // honest processes).
      if (role_ == Role::Accepter && m.kind == PayloadKind::Solo) solo_heard_ = m.first;
      break;
    case 2:
      if (role_ == Role::Recruiter && m.kind == PayloadKind::Pair && m.first == my_id_) {
        partner_ = m.second;
        matched_round_ = tick.round;
        confirm_pending_ = true;
        confirm_ = m;
      }
      break;
    case 3:
      if (role_ == Role::Accepter && responded_ && m.kind == PayloadKind::Pair &&
          m.second == my_id_) {
        partner_ = m.first;
        matched_round_ = tick.round;
      }
      break;
    default:
      break;
  }
}

namespace {

MatchingRunResult run_matching_impl(const Graph& g, const MatchingRunConfig& config,
                                    std::uint64_t seed,
                                    std::span<const RoleRestriction> restrictions) {
  const NodeIndex n = g.node_count();
  if (!restrictions.empty() && restrictions.size() != n) {
    throw std::invalid_argument("need one role restriction per node");
  }
  const Schedule schedule(config.c, n, config.log_mode);

  IdSpace ids = config.id_mode == IdMode::Index
                    ? IdSpace::index_ids(n)
                    : IdSpace::random_ids(n, config.c, substream_seed(seed, kIdStream));
  if (config.id_mode == IdMode::Random) {
    const auto dups = ids.duplicate_pairs();
    if (!dups.empty()) {
      std::ostringstream msg;
      msg << dups.size() << " duplicate wire id pair(s) among " << n << " nodes at "
          << ids.bits_per_id << " bits, first between nodes " << dups.front().first << " and "
          << dups.front().second << "; refusing to run";
      throw std::runtime_error(msg.str());
    }
  }

  std::vector<MatchingProcess> processes;
  processes.reserve(n);
  for (NodeIndex v = 0; v < n; ++v) {
    processes.emplace_back(ids.id_of[v],
                           MatchingProcess::Params{
                               &schedule, std::nullopt,
                               restrictions.empty() ? RoleRestriction::None : restrictions[v]});
  }
  std::vector<NodeProcess*> pointers;
  pointers.reserve(n);
  for (auto& p : processes) pointers.push_back(&p);

  MatchingRunResult result;
  result.rounds = schedule.rounds();

  std::vector<NodeIndex> previous(n, kNoNode);
  const auto partner_index = [&](NodeIndex v) -> NodeIndex {
    const auto& p = processes[v].partner();
    return p.has_value() ? ids.index_of(*p) : kNoNode;
  };
  const auto fail = [&](std::uint64_t round, NodeIndex v, const std::string& what) {
    if (!result.invariants_ok) return;
    std::ostringstream msg;
    msg << "round " << round << ", node " << v << ": " << what;
    result.invariants_ok = false;
    result.violation = msg.str();
  };
  const auto check_round = [&](std::uint64_t round) {
    RoundEvent event{round, {}};
    for (NodeIndex v = 0; v < n; ++v) {
      const NodeIndex p = partner_index(v);
      if (previous[v] != kNoNode && p != previous[v]) fail(round, v, "partner was reassigned");
      if (p != kNoNode) {
        if (p == v) {
          fail(round, v, "partnered with itself");
        } else if (!g.has_edge(v, p)) {
          fail(round, v, "partner is not a neighbor");
        } else if (partner_index(p) != v) {
          fail(round, v, "partner does not point back");
        }
        if (previous[v] == kNoNode && v < p) event.added.emplace_back(v, p);
      }
      previous[v] = p;
    }
    if (config.capture_history && !event.added.empty()) result.history.push_back(std::move(event));
  };

  const EngineConfig engine_config{RadioModel::NoCollisionDetection, ids.bits_per_id,
                                   config.trace_timesteps};
  RoundHook hook;
  if (config.capture_history) hook = check_round;

  EngineResult engine_result =
      run(g, pointers, schedule.timesteps(), seed, engine_config, hook);

  if (!config.capture_history) check_round(schedule.rounds());

  for (NodeIndex v = 0; v < n; ++v) {
    if (previous[v] != kNoNode && v < previous[v]) result.matching.add(v, previous[v]);
  }
  if (auto violation = validate_matching(g, result.matching)) {
    if (result.invariants_ok) {
      result.invariants_ok = false;
      result.violation = *violation;
    }
  }

  result.ledger = std::move(engine_result.ledger);
  result.trace = std::move(engine_result.trace);
  result.timesteps = engine_result.timesteps;
  return result;
}

}  // namespace

MatchingRunResult run_matching(const Graph& g, const MatchingRunConfig& config,
                               std::uint64_t seed) {
  return run_matching_impl(g, config, seed, {});
}

MatchingRunResult run_matching_restricted(const Graph& g, const MatchingRunConfig& config,
                                          std::uint64_t seed,
                                          std::span<const RoleRestriction> restrictions) {
  return run_matching_impl(g, config, seed, restrictions);
}

Matching matching_at(const std::vector<RoundEvent>& history, std::uint64_t round) {
  Matching m;
  for (const auto& event : history) {
    if (event.round > round) break;
    for (const auto& [u, v] : event.added) m.add(u, v);
  }
  return m;
}

double pair_match_frequency(const Graph& g, const std::vector<bool>& matched, double rate,
                            Edge edge, std::uint64_t round_count, std::uint64_t seed) {
  const NodeIndex n = g.node_count();
  if (matched.size() != n) throw std::invalid_argument("matched flags must cover every node");
  if (!(rate > 0.0) || rate > 1.0) throw std::invalid_argument("rate must lie in (0, 1]");
  if (!g.has_edge(edge.u, edge.v)) throw std::invalid_argument("pair frequency needs an edge");
  if (matched[edge.u] || matched[edge.v]) {
    throw std::invalid_argument("both endpoints must be unmatched");
  }
  if (round_count == 0) throw std::invalid_argument("need at least one round");

  IdSpace ids = IdSpace::index_ids(n);
  std::vector<MatchingProcess> processes;
  processes.reserve(n);
  for (NodeIndex v = 0; v < n; ++v) {
    processes.emplace_back(ids.id_of[v], MatchingProcess::Params{nullptr, rate});
  }
  std::vector<RandomStream> streams;
  streams.reserve(n);
  for (NodeIndex v = 0; v < n; ++v) streams.emplace_back(substream_seed(seed, v));

  Deliverer deliverer(g);
  std::vector<Action> actions(n);
  std::vector<Reception> receptions(n);
  const WireId& id_u = ids.id_of[edge.u];
  const WireId& id_v = ids.id_of[edge.v];

  std::uint64_t hits = 0;
  for (std::uint64_t trial = 0; trial < round_count; ++trial) {
    for (NodeIndex v = 0; v < n; ++v) {
      processes[v].reset();
      if (matched[v]) processes[v].preset_partner(ids.id_of[v]);
    }
    for (int step = 1; step <= 3; ++step) {
      const TickInfo tick{static_cast<std::uint64_t>(step), 1, step};
      for (NodeIndex v = 0; v < n; ++v) actions[v] = processes[v].on_act(tick, streams[v]);
      deliverer.deliver(actions, receptions);
      for (NodeIndex v = 0; v < n; ++v) {
        if (actions[v].kind == ActionKind::Listen) processes[v].on_receive(tick, receptions[v]);
      }
    }
    const auto& pu = processes[edge.u].partner();
    const auto& pv = processes[edge.v].partner();
    if (pu.has_value() && pv.has_value() && *pu == id_v && *pv == id_u) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(round_count);
}

}  // namespace radiomatch
