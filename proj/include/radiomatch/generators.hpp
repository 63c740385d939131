#pragma once

#include <cstdint>
#include <string>

#include "radiomatch/graph.hpp"

namespace radiomatch {

// Standard test topologies.  Every generator is deterministic in its
// parameters (plus seed for the random families).

Graph make_path(NodeIndex n);      // n >= 1 nodes in a line
Graph make_complete(NodeIndex n);  // n >= 1
Graph make_star(NodeIndex leaf_count);             // node 0 is the hub
Graph make_grid(NodeIndex width, NodeIndex height);  // 4-neighbor lattice
Graph make_erdos_renyi(NodeIndex n, double p, std::uint64_t seed);

// A hub (node 0) plus `clique_count` cliques of `clique_size` nodes; the
// first node of each clique also attaches to the hub.  With clique_size 1
// this degenerates to a star.  Handy because the minimum feasible
// backup-assignment load of these graphs is small and easy to pin down.
Graph make_cliques_joined_by_star(NodeIndex clique_count, NodeIndex clique_size);

// Parses "family:args" specs used by the CLI and the experiment harness:
//   path:8   star:4   complete:16   grid:4x5   erdos_renyi:64,0.2
//   cliques_star:3,2
// The seed only feeds the random families.
Graph make_graph(const std::string& spec, std::uint64_t seed);

}  // namespace radiomatch
