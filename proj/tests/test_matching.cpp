#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <map>

#include "radiomatch/generators.hpp"
#include "radiomatch/matching.hpp"

using namespace radiomatch;

namespace {

// Seed whose first uniform draw lands in [lo, hi); lets a test pin the role
// a process samples without touching its internals.
std::uint64_t seed_with_first_draw_in(double lo, double hi) {
  for (std::uint64_t seed = 0;; ++seed) {
    RandomStream probe(seed);
    const double x = probe.uniform01();
    if (x >= lo && x < hi) return seed;
  }
}

const Schedule kTinySchedule(2.0, 4);

WireId id_of(NodeIndex v, NodeIndex n = 4) {
  return WireId::from_index(v, IdSpace::index_ids(n).bits_per_id);
}

}  // namespace

TEST_CASE("role boundaries follow the sampling rule") {
  CHECK(role_for(0.0, 0.5) == Role::Recruiter);  // x = 0 recruits
  CHECK(role_for(0.25, 0.5) == Role::Recruiter);
  CHECK(role_for(0.2500001, 0.5) == Role::Accepter);
  CHECK(role_for(0.5, 0.5) == Role::Accepter);
  CHECK(role_for(0.5000001, 0.5) == Role::Asleep);
  CHECK(role_for(1.0, 0.75) == Role::Asleep);  // r never exceeds 3/4

  CHECK(restrict_role(Role::Accepter, RoleRestriction::RecruitOnly) == Role::Asleep);
  CHECK(restrict_role(Role::Recruiter, RoleRestriction::RecruitOnly) == Role::Recruiter);
  CHECK(restrict_role(Role::Recruiter, RoleRestriction::AcceptOnly) == Role::Asleep);
  CHECK(restrict_role(Role::Asleep, RoleRestriction::AcceptOnly) == Role::Asleep);
}

TEST_CASE("empirical role frequencies match (r/2, r/2, 1-r)") {
  const Schedule schedule(4.0, 100);
  const double rate = schedule.participation_rate(static_cast<double>(schedule.rounds() / 2));
  const int draws = 1'000'000;
  RandomStream rng(20240601);
  int recruiters = 0, accepters = 0;
  for (int i = 0; i < draws; ++i) {
    const Role role = role_for(rng.uniform01(), rate);
    recruiters += role == Role::Recruiter;
    accepters += role == Role::Accepter;
  }
  const auto within = [&](int count, double p) {
    const double sigma = std::sqrt(draws * p * (1 - p));
    return std::abs(count - draws * p) <= 3 * sigma;
  };
  CHECK(within(recruiters, rate / 2));
  CHECK(within(accepters, rate / 2));
  CHECK(within(draws - recruiters - accepters, 1 - rate));
}

TEST_CASE("recruiter round: solo, listen, confirm on a matching reply") {
  const double rate = kTinySchedule.participation_rate(1.0);
  MatchingProcess node(id_of(0), {&kTinySchedule, std::nullopt});
  RandomStream rng(seed_with_first_draw_in(0.0, rate / 2));

  CHECK(node.on_act({1, 1, 1}, rng).kind == ActionKind::Send);
  CHECK(node.on_act({2, 1, 2}, rng).kind == ActionKind::Listen);
  node.on_receive({2, 1, 2}, Reception::of(Message::pair(id_of(0), id_of(3))));
  const Action confirm = node.on_act({3, 1, 3}, rng);
  CHECK(confirm.kind == ActionKind::Send);
  CHECK(confirm.message == Message::pair(id_of(0), id_of(3)));
  REQUIRE(node.partner().has_value());
  CHECK(*node.partner() == id_of(3));
  CHECK(node.matched_round() == 1);
}

TEST_CASE("recruiter round: no reply or a reply meant for someone else") {
  const double rate = kTinySchedule.participation_rate(1.0);
  const std::uint64_t seed = seed_with_first_draw_in(0.0, rate / 2);

  MatchingProcess quiet(id_of(0), {&kTinySchedule, std::nullopt});
  RandomStream rng_a(seed);
  CHECK(quiet.on_act({1, 1, 1}, rng_a).kind == ActionKind::Send);
  CHECK(quiet.on_act({2, 1, 2}, rng_a).kind == ActionKind::Listen);
  // nothing received at step 2
  CHECK(quiet.on_act({3, 1, 3}, rng_a).kind == ActionKind::Sleep);
  CHECK_FALSE(quiet.partner().has_value());

  MatchingProcess bystander(id_of(0), {&kTinySchedule, std::nullopt});
  RandomStream rng_b(seed);
  bystander.on_act({1, 1, 1}, rng_b);
  bystander.on_act({2, 1, 2}, rng_b);
  bystander.on_receive({2, 1, 2}, Reception::of(Message::pair(id_of(2), id_of(3))));
  CHECK(bystander.on_act({3, 1, 3}, rng_b).kind == ActionKind::Sleep);
  CHECK_FALSE(bystander.partner().has_value());
}

TEST_CASE("accepter round: listen, propose, commit on confirmation") {
  const double rate = kTinySchedule.participation_rate(1.0);
  const std::uint64_t seed = seed_with_first_draw_in(rate / 2 + 1e-9, rate);

  MatchingProcess node(id_of(2), {&kTinySchedule, std::nullopt});
  RandomStream rng(seed);
  CHECK(node.on_act({1, 1, 1}, rng).kind == ActionKind::Listen);
  node.on_receive({1, 1, 1}, Reception::of(Message::solo(id_of(1))));
  const Action proposal = node.on_act({2, 1, 2}, rng);
  CHECK(proposal.kind == ActionKind::Send);
  CHECK(proposal.message == Message::pair(id_of(1), id_of(2)));
  CHECK(node.on_act({3, 1, 3}, rng).kind == ActionKind::Listen);
  node.on_receive({3, 1, 3}, Reception::of(Message::pair(id_of(1), id_of(2))));
  REQUIRE(node.partner().has_value());
  CHECK(*node.partner() == id_of(1));

  // silence at step 1 means the whole round is spent asleep after the listen
  MatchingProcess idle(id_of(2), {&kTinySchedule, std::nullopt});
  RandomStream rng_b(seed);
  CHECK(idle.on_act({1, 1, 1}, rng_b).kind == ActionKind::Listen);
  CHECK(idle.on_act({2, 1, 2}, rng_b).kind == ActionKind::Sleep);
  CHECK(idle.on_act({3, 1, 3}, rng_b).kind == ActionKind::Sleep);

  // a confirmation addressed to someone else is not accepted
  MatchingProcess passed_over(id_of(2), {&kTinySchedule, std::nullopt});
  RandomStream rng_c(seed);
  passed_over.on_act({1, 1, 1}, rng_c);
  passed_over.on_receive({1, 1, 1}, Reception::of(Message::solo(id_of(1))));
  passed_over.on_act({2, 1, 2}, rng_c);
  passed_over.on_act({3, 1, 3}, rng_c);
  passed_over.on_receive({3, 1, 3}, Reception::of(Message::pair(id_of(1), id_of(3))));
  CHECK_FALSE(passed_over.partner().has_value());
}

TEST_CASE("run_matching on an edgeless graph") {
  const MatchingRunConfig config{4.0, LogMode::NaturalLog, IdMode::Index, true, 0};
  const auto result = run_matching(make_erdos_renyi(8, 0.0, 1), config, 42);
  CHECK(result.matching.empty());
  CHECK(result.invariants_ok);
  CHECK(result.timesteps == Schedule(4.0, 8).timesteps());
  for (NodeIndex v = 0; v < 8; ++v) {
    CHECK(result.ledger.energy[v] <= 3 * result.ledger.rounds_participated[v]);
  }
}

TEST_CASE("run_matching always pairs the only edge") {
  const MatchingRunConfig config{100.0};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto result = run_matching(make_path(2), config, seed);
    REQUIRE(result.matching.size() == 1);
    CHECK(result.matching.pairs()[0] == std::pair<NodeIndex, NodeIndex>{0, 1});
    CHECK(result.invariants_ok);
  }
}

TEST_CASE("run_matching is deterministic in the seed") {
  const MatchingRunConfig config{8.0};
  const Graph g = make_complete(8);
  const auto a = run_matching(g, config, 777);
  const auto b = run_matching(g, config, 777);
  CHECK(a.matching.pairs() == b.matching.pairs());
  CHECK(a.ledger.energy == b.ledger.energy);
  CHECK(a.ledger.rounds_participated == b.ledger.rounds_participated);
}

TEST_CASE("run_matching invariants over random graphs with per-round checks") {
  int maximal = 0;
  int runs = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Graph g = make_erdos_renyi(14, 0.35, 100 + seed);
    const MatchingRunConfig config{6.0, LogMode::NaturalLog, IdMode::Index, true, 0};
    const auto result = run_matching(g, config, seed);
    INFO(result.violation);
    CHECK(result.invariants_ok);
    CHECK_FALSE(validate_matching(g, result.matching).has_value());
    const Schedule schedule(6.0, 14);
    CHECK(result.timesteps == schedule.timesteps());
    CHECK(static_cast<double>(result.ledger.max_energy()) <= schedule.energy_bound());
    maximal += is_maximal(g, result.matching);
    ++runs;

    // monotone growth: every captured matching contains the previous one
    Matching previous;
    for (const auto& event : result.history) {
      const Matching current = matching_at(result.history, event.round);
      for (const auto& pair : previous.pairs()) {
        CHECK(std::find(current.pairs().begin(), current.pairs().end(), pair) !=
              current.pairs().end());
      }
      previous = current;
    }
  }
  CHECK(maximal == runs);
}

TEST_CASE("trace shows the full handshake behind every committed pair") {
  const Graph g = make_erdos_renyi(10, 0.4, 55);
  const Schedule schedule(8.0, 10);
  MatchingRunConfig config{8.0, LogMode::NaturalLog, IdMode::Index, true, schedule.timesteps()};
  const auto result = run_matching(g, config, 314);
  REQUIRE(result.invariants_ok);
  REQUIRE_FALSE(result.history.empty());

  const std::uint32_t bits = IdSpace::index_ids(10).bits_per_id;
  const auto wire = [&](NodeIndex v) { return WireId::from_index(v, bits); };
  std::map<NodeIndex, std::uint64_t> matched_at;

  for (const auto& event : result.history) {
    for (const auto& [a, b] : event.added) {
      matched_at[a] = matched_at[b] = event.round;
      const std::size_t ts1 = 3 * event.round - 3;  // trace index of the round's first step
      const auto& step1 = result.trace.steps[ts1];
      const auto& step2 = result.trace.steps[ts1 + 1];
      const auto& step3 = result.trace.steps[ts1 + 2];

      // exactly one endpoint opened as recruiter
      const bool a_recruited = step1.actions[a].kind == ActionKind::Send;
      const NodeIndex recruiter = a_recruited ? a : b;
      const NodeIndex accepter = a_recruited ? b : a;
      const Message proposal = Message::pair(wire(recruiter), wire(accepter));

      CHECK(step1.actions[recruiter].kind == ActionKind::Send);
      CHECK(step1.actions[recruiter].message == Message::solo(wire(recruiter)));
      CHECK(step1.actions[accepter].kind == ActionKind::Listen);
      REQUIRE(step1.receptions[accepter].received);
      CHECK(step1.receptions[accepter].message == Message::solo(wire(recruiter)));

      CHECK(step2.actions[accepter].kind == ActionKind::Send);
      CHECK(step2.actions[accepter].message == proposal);
      CHECK(step2.actions[recruiter].kind == ActionKind::Listen);
      REQUIRE(step2.receptions[recruiter].received);
      CHECK(step2.receptions[recruiter].message == proposal);

      CHECK(step3.actions[recruiter].kind == ActionKind::Send);
      CHECK(step3.actions[recruiter].message == proposal);
      CHECK(step3.actions[accepter].kind == ActionKind::Listen);
      REQUIRE(step3.receptions[accepter].received);
      CHECK(step3.receptions[accepter].message == proposal);
    }
  }

  // committed nodes only sleep in later rounds
  for (const auto& [v, round] : matched_at) {
    for (std::uint64_t ts = 3 * round; ts < result.trace.steps.size(); ++ts) {
      CHECK(result.trace.steps[ts].actions[v].kind == ActionKind::Sleep);
    }
  }
}

TEST_CASE("random wire ids work, and collisions abort loudly") {
  MatchingRunConfig random_ids{3.0, LogMode::NaturalLog, IdMode::Random};
  const auto result = run_matching(make_path(2), random_ids, 5);
  REQUIRE(result.matching.size() == 1);
  CHECK(result.matching.pairs()[0] == std::pair<NodeIndex, NodeIndex>{0, 1});

  // quarter-bit multiplier forces one-bit ids on four nodes: guaranteed clash
  MatchingRunConfig tiny_ids{0.25, LogMode::NaturalLog, IdMode::Random};
  CHECK_THROWS_WITH_AS(run_matching(make_complete(4), tiny_ids, 5).matching.size(),
                       doctest::Contains("duplicate"), std::runtime_error);
}

TEST_CASE("single-round pair frequency approaches the two-node closed form") {
  const double rate = 0.5;
  const std::uint64_t rounds = 20000;
  const double frequency =
      pair_match_frequency(make_path(2), {false, false}, rate, {0, 1}, rounds, 11);
  const double expected = rate * rate / 2;  // both roles drawn, orientation free
  const double sigma = std::sqrt(expected * (1 - expected) / static_cast<double>(rounds));
  CHECK(std::abs(frequency - expected) <= 4 * sigma);
}
