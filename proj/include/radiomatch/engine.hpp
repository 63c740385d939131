#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "radiomatch/graph.hpp"
#include "radiomatch/rng.hpp"

namespace radiomatch {

// Globally synchronized timestep loop for the no-collision-detection radio
// model.  Per timestep every node transmits, listens, or sleeps; a listener
// receives a message iff exactly one of its neighbors transmits.  Silence
// and collision are indistinguishable to the listener.  Each send or listen
// costs one energy unit; sleeping is free.

namespace round_clock {
// Rounds are 1-based; round t spans the three timesteps 3t-2, 3t-1, 3t.
constexpr std::uint64_t round_of(std::uint64_t timestep) { return (timestep + 2) / 3; }
constexpr int step_of(std::uint64_t timestep) {
  return static_cast<int>(timestep - 3 * (round_of(timestep) - 1));
}
constexpr std::uint64_t first_timestep(std::uint64_t round) { return 3 * round - 2; }
}  // namespace round_clock

enum class PayloadKind : std::uint8_t { Solo, Pair };

// Wire payload: a single id ("I am x and available") or an ordered id pair
// ("x and y are matched").  Two tag bits select the variant, so a message
// encodes in at most 2 + 2 * bits_per_id bits, keeping the logarithmic
// message-size regime.
struct Message {
  PayloadKind kind = PayloadKind::Solo;
  WireId first;
  WireId second;  // Pair only

  std::uint32_t encoded_bits() const {
    return 2 + first.bits + (kind == PayloadKind::Pair ? second.bits : 0);
  }
  static Message solo(WireId id) { return {PayloadKind::Solo, std::move(id), {}}; }
  static Message pair(WireId x, WireId y) { return {PayloadKind::Pair, std::move(x), std::move(y)}; }
  friend bool operator==(const Message&, const Message&) = default;
};

enum class ActionKind : std::uint8_t { Send, Listen, Sleep };

struct Action {
  ActionKind kind = ActionKind::Sleep;
  Message message;  // meaningful only when kind == Send

  static Action send(Message m) { return {ActionKind::Send, std::move(m)}; }
  static Action listen() { return {ActionKind::Listen, {}}; }
  static Action sleep() { return {ActionKind::Sleep, {}}; }
};

// `received == false` covers both silence and collision.
struct Reception {
  bool received = false;
  Message message;

  static Reception nothing() { return {}; }
  static Reception of(Message m) { return {true, std::move(m)}; }
};

struct TickInfo {
  std::uint64_t timestep = 1;  // 1-based
  std::uint64_t round = 1;
  int step = 1;  // 1..3 within the round
};

// One node's protocol logic.  on_act must be a deterministic function of the
// node's own state, the tick, and its private stream.  on_receive is invoked
// only for timesteps where the node chose Listen (the reception may still be
// empty).
class NodeProcess {
 public:
  virtual ~NodeProcess() = default;
  virtual Action on_act(const TickInfo& tick, RandomStream& rng) = 0;
  virtual void on_receive(const TickInfo& tick, const Reception& reception) = 0;
};

// Unit-cost accounting: +1 per Send or Listen, 0 for Sleep.  A node
// "participates" in a round when it takes at least one non-Sleep action in
// it, so energy <= 3 * rounds_participated always.
struct EnergyLedger {
  std::vector<std::uint64_t> energy;
  std::vector<std::uint32_t> rounds_participated;

  EnergyLedger() = default;
  explicit EnergyLedger(std::size_t n) : energy(n, 0), rounds_participated(n, 0) {}

  std::uint64_t total_energy() const;
  std::uint64_t max_energy() const;
  void accumulate(const EnergyLedger& other);
};

struct TraceStep {
  std::vector<Action> actions;
  std::vector<Reception> receptions;
};

// Optional per-timestep record, capped by EngineConfig::trace_timesteps so
// long runs keep bounded memory.  The energy ledger is never truncated.
struct ActionTrace {
  std::vector<TraceStep> steps;  // steps[i] is timestep i+1
};

enum class RadioModel : std::uint8_t {
  NoCollisionDetection,
  CollisionDetection,  // placeholder for future work; the engine rejects it
};

struct EngineConfig {
  RadioModel model = RadioModel::NoCollisionDetection;
  std::uint32_t bits_per_id = 1;
  std::uint64_t trace_timesteps = 0;
};

struct EngineResult {
  EnergyLedger ledger;
  ActionTrace trace;
  std::uint64_t timesteps = 0;
};

// Applies the delivery rule to one action vector.  Pure in (graph, actions);
// reusable across timesteps without reallocating scratch space.
class Deliverer {
 public:
  explicit Deliverer(const Graph& g);
  void deliver(std::span<const Action> actions, std::vector<Reception>& out);

 private:
  const Graph* graph_;
  std::vector<std::uint32_t> send_count_;
  std::vector<NodeIndex> sender_;
  std::vector<NodeIndex> touched_;
};

std::vector<Reception> deliver(const Graph& g, std::span<const Action> actions);

using RoundHook = std::function<void(std::uint64_t round)>;

// Runs `total_timesteps` globally synchronized steps: collect one action per
// node, deliver, feed receptions back to listeners, charge energy.  Node v's
// private stream is seeded from (seed, v), so a run is reproducible and the
// per-node decisions are independent.  `after_round` (when set) fires after
// every completed round.
//
// Throws std::invalid_argument for a wrong-sized process list or a rejected
// model, and std::runtime_error when a process emits a message that exceeds
// the size bound.
EngineResult run(const Graph& g, std::span<NodeProcess* const> processes,
                 std::uint64_t total_timesteps, std::uint64_t seed,
                 const EngineConfig& config = {}, const RoundHook& after_round = {});

}  // namespace radiomatch
