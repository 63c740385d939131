#include "radiomatch/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace radiomatch {

Graph::Graph(NodeIndex n, std::vector<std::pair<NodeIndex, NodeIndex>> edge_list) : n_(n) {
  for (auto& [u, v] : edge_list) {
    if (u >= n || v >= n) {
      std::ostringstream msg;
      msg << "edge (" << u << ", " << v << ") out of range for n=" << n;
      throw std::invalid_argument(msg.str());
    }
    if (u == v) {
      std::ostringstream msg;
      msg << "self-loop at node " << u;
      throw std::invalid_argument(msg.str());
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edge_list.begin(), edge_list.end());
  const auto dup = std::adjacent_find(edge_list.begin(), edge_list.end());
  if (dup != edge_list.end()) {
    std::ostringstream msg;
    msg << "duplicate edge (" << dup->first << ", " << dup->second << ")";
    throw std::invalid_argument(msg.str());
  }
  edges_ = std::move(edge_list);

  std::vector<std::uint32_t> deg(n, 0);
  for (const auto& [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  offsets_.assign(n + 1, 0);
  for (NodeIndex v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adjacency_.resize(offsets_[n]);
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adjacency_[cursor[u]++] = v;
    adjacency_[cursor[v]++] = u;
  }
  for (NodeIndex v = 0; v < n; ++v) {
    auto row = adjacency_.begin();
    std::sort(row + offsets_[v], row + offsets_[v + 1]);
  }
}

bool Graph::has_edge(NodeIndex u, NodeIndex v) const {
  if (u >= n_ || v >= n_) return false;
  const auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

NodeIndex Graph::max_degree() const {
  NodeIndex best = 0;
  for (NodeIndex v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

Matching Matching::from_pairs(std::vector<std::pair<NodeIndex, NodeIndex>> pairs) {
  Matching m;
  for (const auto& [u, v] : pairs) m.add(u, v);
  return m;
}

void Matching::add(NodeIndex u, NodeIndex v) {
  if (u > v) std::swap(u, v);
  pairs_.emplace_back(u, v);
}

std::vector<NodeIndex> Matching::partner_array(NodeIndex n) const {
  std::vector<NodeIndex> partner(n, kNoNode);
  for (const auto& [u, v] : pairs_) {
    if (u < n) partner[u] = v;
    if (v < n) partner[v] = u;
  }
  return partner;
}

bool Matching::covers(NodeIndex v) const {
  for (const auto& [a, b] : pairs_) {
    if (a == v || b == v) return true;
  }
  return false;
}

std::optional<std::string> validate_matching(const Graph& g, const Matching& m) {
  std::vector<bool> seen(g.node_count(), false);
  for (const auto& [u, v] : m.pairs()) {
    std::ostringstream msg;
    if (u >= g.node_count() || v >= g.node_count()) {
      msg << "pair (" << u << ", " << v << ") out of range";
      return msg.str();
    }
    if (u == v) {
      msg << "node " << u << " paired with itself";
      return msg.str();
    }
    if (!g.has_edge(u, v)) {
      msg << "pair (" << u << ", " << v << ") is not an edge";
      return msg.str();
    }
    for (NodeIndex x : {u, v}) {
      if (seen[x]) {
        msg << "node " << x << " appears in two pairs";
        return msg.str();
      }
      seen[x] = true;
    }
  }
  return std::nullopt;
}

bool is_maximal(const Graph& g, const Matching& m) {
  if (auto violation = validate_matching(g, m)) {
    throw std::invalid_argument("is_maximal requires a valid matching: " + *violation);
  }
  std::vector<NodeIndex> partner = m.partner_array(g.node_count());
  for (const auto& [u, v] : g.edges()) {
    if (partner[u] == kNoNode && partner[v] == kNoNode) return false;
  }
  return true;
}

NodeIndex NafAssignment::assigned_count() const {
  NodeIndex count = 0;
  for (NodeIndex t : target) count += (t != kNoNode);
  return count;
}

bool NafAssignment::total() const { return assigned_count() == target.size(); }

NafLoadResult naf_load(const Graph& g, const NafAssignment& f) {
  if (f.target.size() != g.node_count()) {
    throw std::invalid_argument("assignment size does not match graph");
  }
  std::vector<NodeIndex> in_degree(g.node_count(), 0);
  bool total = true;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    const NodeIndex t = f.target[v];
    if (t == kNoNode) {
      total = false;
      continue;
    }
    if (!g.has_edge(v, t)) {
      std::ostringstream msg;
      msg << "target of node " << v << " is " << t << ", which is not a neighbor";
      throw std::invalid_argument(msg.str());
    }
    ++in_degree[t];
  }
  NodeIndex load = 0;
  for (NodeIndex d : in_degree) load = std::max(load, d);
  return {load, total};
}

WireId WireId::from_index(std::uint64_t index, std::uint32_t bits) {
  WireId id;
  id.bits = bits;
  id.words.assign((bits + 63) / 64, 0);
  if (!id.words.empty()) id.words[0] = index;
  return id;
}

WireId WireId::draw(RandomStream& rng, std::uint32_t bits) {
  WireId id;
  id.bits = bits;
  id.words.assign((bits + 63) / 64, 0);
  for (auto& w : id.words) w = rng.next_word();
  const std::uint32_t spare = static_cast<std::uint32_t>(id.words.size()) * 64 - bits;
  if (spare > 0 && !id.words.empty()) id.words.back() &= ~std::uint64_t{0} >> spare;
  return id;
}

std::uint32_t IdSpace::index_bits(NodeIndex n) {
  if (n <= 1) return 1;
  return std::bit_width(static_cast<std::uint32_t>(n - 1));
}

IdSpace IdSpace::index_ids(NodeIndex n) {
  IdSpace ids;
  ids.mode = IdMode::Index;
  ids.bits_per_id = index_bits(n);
  ids.id_of.reserve(n);
  for (NodeIndex v = 0; v < n; ++v) ids.id_of.push_back(WireId::from_index(v, ids.bits_per_id));
  ids.build_lookup();
  return ids;
}

IdSpace IdSpace::random_ids(NodeIndex n, double c, std::uint64_t seed) {
  if (!(c > 0)) throw std::invalid_argument("id length multiplier must be positive");
  IdSpace ids;
  ids.mode = IdMode::Random;
  ids.bits_per_id =
      std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(c * index_bits(n))));
  ids.id_of.reserve(n);
  for (NodeIndex v = 0; v < n; ++v) {
    RandomStream rng(substream_seed(seed, v));
    ids.id_of.push_back(WireId::draw(rng, ids.bits_per_id));
  }
  ids.build_lookup();
  return ids;
}

void IdSpace::build_lookup() {
  lookup_.clear();
  lookup_.reserve(id_of.size());
  for (NodeIndex v = 0; v < id_of.size(); ++v) lookup_.emplace_back(id_of[v], v);
  std::sort(lookup_.begin(), lookup_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

std::vector<std::pair<NodeIndex, NodeIndex>> IdSpace::duplicate_pairs() const {
  std::vector<std::pair<NodeIndex, NodeIndex>> dups;
  for (std::size_t i = 0; i + 1 < lookup_.size(); ++i) {
    for (std::size_t j = i + 1; j < lookup_.size() && lookup_[j].first == lookup_[i].first; ++j) {
      auto a = lookup_[i].second;
      auto b = lookup_[j].second;
      dups.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(dups.begin(), dups.end());
  return dups;
}

NodeIndex IdSpace::index_of(const WireId& id) const {
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), id,
                             [](const auto& entry, const WireId& key) { return entry.first < key; });
  if (it == lookup_.end() || !(it->first == id)) return kNoNode;
  return it->second;
}

}  // namespace radiomatch
