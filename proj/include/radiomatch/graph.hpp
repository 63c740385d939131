#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "radiomatch/rng.hpp"

namespace radiomatch {

using NodeIndex = std::uint32_t;
inline constexpr NodeIndex kNoNode = static_cast<NodeIndex>(-1);

struct Edge {
  NodeIndex u = kNoNode;
  NodeIndex v = kNoNode;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Simple undirected graph over nodes 0..n-1.  Immutable after construction
// and safe to share read-only across concurrent runs; neighbor lists are
// kept sorted ascending.
class Graph {
 public:
  Graph() = default;

  // Throws std::invalid_argument on self-loops, duplicate edges, or
  // endpoints outside [0, n).
  Graph(NodeIndex n, std::vector<std::pair<NodeIndex, NodeIndex>> edge_list);

  NodeIndex node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const NodeIndex> neighbors(NodeIndex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  NodeIndex degree(NodeIndex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeIndex u, NodeIndex v) const;
  NodeIndex max_degree() const;

  // Normalized to u < v, sorted lexicographically.
  const std::vector<std::pair<NodeIndex, NodeIndex>>& edges() const { return edges_; }

 private:
  NodeIndex n_ = 0;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<NodeIndex> adjacency_;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges_;
};

// A set of unordered node pairs.  The container itself does not enforce
// matching validity; validate_matching reports violations, so malformed
// states stay representable and describable.
class Matching {
 public:
  Matching() = default;
  static Matching from_pairs(std::vector<std::pair<NodeIndex, NodeIndex>> pairs);

  void add(NodeIndex u, NodeIndex v);
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const std::vector<std::pair<NodeIndex, NodeIndex>>& pairs() const { return pairs_; }

  // partner per node, kNoNode when unmatched.  Later pairs win if a node
  // appears twice (validate_matching flags that case).
  std::vector<NodeIndex> partner_array(NodeIndex n) const;
  bool covers(NodeIndex v) const;

 private:
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs_;
};

// std::nullopt when valid; otherwise a description of the first violation
// found (non-edge pair, repeated node, out-of-range index, self-pair).
std::optional<std::string> validate_matching(const Graph& g, const Matching& m);

// True iff no edge of g has both endpoints unmatched.  Throws
// std::invalid_argument when m is not a valid matching for g.
bool is_maximal(const Graph& g, const Matching& m);

// Out-degree-1 neighbor assignment: target[v] is the neighbor v points at,
// kNoNode while unassigned.  The load of a node is its in-degree.
struct NafAssignment {
  std::vector<NodeIndex> target;

  NafAssignment() = default;
  explicit NafAssignment(NodeIndex n) : target(n, kNoNode) {}

  NodeIndex assigned_count() const;
  bool total() const;
};

struct NafLoadResult {
  NodeIndex load = 0;  // max in-degree over the assigned part
  bool total = false;  // false marks a partial assignment
};

// Throws std::invalid_argument if some assigned target(v) is not adjacent
// to v (or equals v).
NafLoadResult naf_load(const Graph& g, const NafAssignment& f);

// ---------------------------------------------------------------------------
// On-air identifiers.
//
// Index mode puts the node index on the air in ceil(log2 n) bits.  Random
// mode draws an independent bit string of ceil(C * ceil(log2 n)) bits per
// node; all n ids are distinct with probability at least 1 - n^(1-C).
// Internal bookkeeping always uses the dense index.

struct WireId {
  std::vector<std::uint64_t> words;  // little-endian, unused high bits zero
  std::uint32_t bits = 0;

  static WireId from_index(std::uint64_t index, std::uint32_t bits);
  static WireId draw(RandomStream& rng, std::uint32_t bits);

  friend bool operator==(const WireId&, const WireId&) = default;
  friend bool operator<(const WireId& a, const WireId& b) {
    return std::tie(a.bits, a.words) < std::tie(b.bits, b.words);
  }
};

enum class IdMode : std::uint8_t { Index, Random };

struct IdSpace {
  IdMode mode = IdMode::Index;
  std::uint32_t bits_per_id = 1;
  std::vector<WireId> id_of;

  static std::uint32_t index_bits(NodeIndex n);
  static IdSpace index_ids(NodeIndex n);
  static IdSpace random_ids(NodeIndex n, double c, std::uint64_t seed);

  // Colliding index pairs (i < j), empty when all ids are distinct.
  // Collisions are surfaced to the caller; protocols refuse to run on them.
  std::vector<std::pair<NodeIndex, NodeIndex>> duplicate_pairs() const;

  NodeIndex index_of(const WireId& id) const;  // kNoNode if unknown

 private:
  std::vector<std::pair<WireId, NodeIndex>> lookup_;  // sorted by id
  void build_lookup();
};

}  // namespace radiomatch
