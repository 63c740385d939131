#pragma once

#include <iosfwd>
#include <string>

#include "radiomatch/graph.hpp"

namespace radiomatch {

// Plain-text edge list, the one on-disk graph format:
//   line 1: "n m"
//   then m lines "u v" with 0-based endpoints, whitespace separated.
// Blank lines and lines starting with '#' are ignored.  Parsing enforces the
// simple-graph invariants and throws std::runtime_error with the offending
// line on malformed input.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

}  // namespace radiomatch
