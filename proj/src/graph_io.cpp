#include "radiomatch/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace radiomatch {

namespace {

// Next content line, with comments and blanks skipped.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw std::runtime_error("graph file is empty");
  std::istringstream header(line);
  long long n = -1, m = -1;
  if (!(header >> n >> m) || n < 0 || m < 0) {
    throw std::runtime_error("bad graph header (expected \"n m\"): " + line);
  }
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line(in, line)) {
      std::ostringstream msg;
      msg << "expected " << m << " edges, found " << i;
      throw std::runtime_error(msg.str());
    }
    std::istringstream row(line);
    long long u = -1, v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0) {
      throw std::runtime_error("bad edge line: " + line);
    }
    edges.emplace_back(static_cast<NodeIndex>(u), static_cast<NodeIndex>(v));
  }
  try {
    return Graph(static_cast<NodeIndex>(n), std::move(edges));
  } catch (const std::invalid_argument& bad) {
    throw std::runtime_error(std::string("invalid graph: ") + bad.what());
  }
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_graph(out, g);
}

}  // namespace radiomatch
