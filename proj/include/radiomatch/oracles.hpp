#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "radiomatch/graph.hpp"

namespace radiomatch::oracles {

// Centralized ground truth for verifying the distributed protocols on small
// instances.  Everything here is coded directly against the model's rules
// and shares nothing with the engine or process code beyond the graph types,
// so agreement between the two sides is meaningful.  Enumeration guards fail
// loudly with the instance size rather than truncating.

// Greedy matching over a fixed edge order: accept every edge disjoint from
// all previously accepted ones.  Always maximal.
Matching greedy_matching(const Graph& g, std::span<const std::size_t> edge_order);
Matching greedy_matching(const Graph& g, std::uint64_t shuffle_seed);

// Exact maximum matching cardinality by masked search (n <= 20).
NodeIndex maximum_matching_size(const Graph& g);

// Minimum number of matchings whose union covers every vertex (n <= 12,
// no isolated vertices).
NodeIndex matching_cover_number(const Graph& g);

// Minimum over all total neighbor assignments of the maximum in-degree,
// by iterative deepening on the load bound with backtracking (no isolated
// vertices; n <= 10 or product of degrees <= 1e7).
NodeIndex min_naf_load(const Graph& g);

enum class Enumeration : std::uint8_t { DistanceTwo, Full };

struct ExactProbability {
  long double value = 0;
  std::string method;
  NodeIndex enumerated_nodes = 0;
};

// Exact probability that the endpoints of `edge` commit to each other in a
// single round at participation rate r: sums, over all 3^k joint role
// outcomes of the enumerated nodes (recruiter r/2, accepter r/2, asleep
// 1-r; matched nodes forced asleep), the outcomes where the deterministic
// handshake goes through.  Nodes farther than two hops from the edge cannot
// influence it, so the default enumerates only that neighborhood; Full
// enumerates every unmatched node.  Guard: at most 14 enumerated nodes.
ExactProbability pair_probability_exact(const Graph& g, const std::vector<bool>& matched,
                                        double rate, Edge edge,
                                        Enumeration mode = Enumeration::DistanceTwo);

// (r^2/2) (1-r)^(D-1) with D the maximum degree of the subgraph induced by
// the unmatched nodes; the guaranteed floor on the probability above.
double pair_probability_lower_bound(const Graph& g, const std::vector<bool>& matched,
                                    double rate, Edge edge);

struct LoadCoverComparison {
  NodeIndex naf_load = 0;
  NodeIndex cover_number = 0;
  bool consistent = false;
};

// Checks min-load-vs-cover-number agreement on one graph: the two must be
// equal unless the minimum load is 1, in which case the cover number may be
// 1 or 2.
LoadCoverComparison verify_naf_mc_theorem(const Graph& g);

// All connected graphs on n nodes up to isomorphism (n <= 7), canonical
// adjacency-matrix generation with isomorph rejection.
std::vector<Graph> all_connected_graphs(NodeIndex n);

}  // namespace radiomatch::oracles
