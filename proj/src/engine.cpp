#include "radiomatch/engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace radiomatch {

std::uint64_t EnergyLedger::total_energy() const {
  std::uint64_t sum = 0;
  for (std::uint64_t e : energy) sum += e;
  return sum;
}

std::uint64_t EnergyLedger::max_energy() const {
  std::uint64_t best = 0;
  for (std::uint64_t e : energy) best = std::max(best, e);
  return best;
}

void EnergyLedger::accumulate(const EnergyLedger& other) {
  if (energy.size() != other.energy.size()) {
    throw std::invalid_argument("cannot accumulate ledgers of different sizes");
  }
  for (std::size_t v = 0; v < energy.size(); ++v) {
    energy[v] += other.energy[v];
    rounds_participated[v] += other.rounds_participated[v];
  }
}

Deliverer::Deliverer(const Graph& g)
    : graph_(&g), send_count_(g.node_count(), 0), sender_(g.node_count(), kNoNode) {}

void Deliverer::deliver(std::span<const Action> actions, std::vector<Reception>& out) {
  const NodeIndex n = graph_->node_count();
  out.assign(n, Reception{});
  for (NodeIndex v = 0; v < n; ++v) {
    if (actions[v].kind != ActionKind::Send) continue;
    for (NodeIndex w : graph_->neighbors(v)) {
      if (send_count_[w]++ == 0) {
        sender_[w] = v;
        touched_.push_back(w);
      }
    }
  }
  for (NodeIndex v = 0; v < n; ++v) {
    if (actions[v].kind == ActionKind::Listen && send_count_[v] == 1) {
      out[v] = Reception::of(actions[sender_[v]].message);
    }
  }
  for (NodeIndex w : touched_) {
    send_count_[w] = 0;
    sender_[w] = kNoNode;
  }
  touched_.clear();
}

std::vector<Reception> deliver(const Graph& g, std::span<const Action> actions) {
  if (actions.size() != g.node_count()) {
    throw std::invalid_argument("need exactly one action per node");
  }
  Deliverer deliverer(g);
  std::vector<Reception> receptions;
  deliverer.deliver(actions, receptions);
  return receptions;
}

EngineResult run(const Graph& g, std::span<NodeProcess* const> processes,
                 std::uint64_t total_timesteps, std::uint64_t seed, const EngineConfig& config,
                 const RoundHook& after_round) {
  if (config.model != RadioModel::NoCollisionDetection) {
    throw std::invalid_argument("only the no-collision-detection model is supported");
  }
  if (processes.size() != g.node_count()) {
    throw std::invalid_argument("need exactly one process per node");
  }
  if (config.bits_per_id == 0) throw std::invalid_argument("bits_per_id must be positive");

  const NodeIndex n = g.node_count();
  std::vector<RandomStream> streams;
  streams.reserve(n);
  for (NodeIndex v = 0; v < n; ++v) streams.emplace_back(substream_seed(seed, v));

  EngineResult result;
  result.ledger = EnergyLedger(n);
  result.timesteps = total_timesteps;

  std::vector<Action> actions(n);
  std::vector<Reception> receptions(n);
  Deliverer deliverer(g);
  std::vector<std::uint64_t> last_participated(n, 0);
  const std::uint32_t max_message_bits = 2 + 2 * config.bits_per_id;

  for (std::uint64_t ts = 1; ts <= total_timesteps; ++ts) {
    const TickInfo tick{ts, round_clock::round_of(ts), round_clock::step_of(ts)};
    for (NodeIndex v = 0; v < n; ++v) {
      actions[v] = processes[v]->on_act(tick, streams[v]);
      if (actions[v].kind == ActionKind::Send &&
          actions[v].message.encoded_bits() > max_message_bits) {
        std::ostringstream msg;
        msg << "node " << v << " emitted a " << actions[v].message.encoded_bits()
            << "-bit message at timestep " << ts << "; the limit is " << max_message_bits;
        throw std::runtime_error(msg.str());
      }
    }
    deliverer.deliver(actions, receptions);
    for (NodeIndex v = 0; v < n; ++v) {
      if (actions[v].kind == ActionKind::Listen) processes[v]->on_receive(tick, receptions[v]);
    }
    for (NodeIndex v = 0; v < n; ++v) {
      if (actions[v].kind == ActionKind::Sleep) continue;
      ++result.ledger.energy[v];
      if (last_participated[v] != tick.round) {
        last_participated[v] = tick.round;
        ++result.ledger.rounds_participated[v];
      }
    }
    if (ts <= config.trace_timesteps) result.trace.steps.push_back({actions, receptions});
    if (tick.step == 3 && after_round) after_round(tick.round);
  }
  return result;
}

}  // namespace radiomatch
