#include "radiomatch/generators.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace radiomatch {

namespace {

using EdgeList = std::vector<std::pair<NodeIndex, NodeIndex>>;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Graph make_path(NodeIndex n) {
  require(n >= 1, "path: need n >= 1");
  EdgeList edges;
  for (NodeIndex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, std::move(edges));
}

Graph make_complete(NodeIndex n) {
  require(n >= 1, "complete: need n >= 1");
  EdgeList edges;
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

Graph make_star(NodeIndex leaf_count) {
  EdgeList edges;
  for (NodeIndex leaf = 1; leaf <= leaf_count; ++leaf) edges.emplace_back(0, leaf);
  return Graph(leaf_count + 1, std::move(edges));
}

Graph make_grid(NodeIndex width, NodeIndex height) {
  require(width >= 1 && height >= 1, "grid: need width, height >= 1");
  const auto at = [width](NodeIndex x, NodeIndex y) { return y * width + x; };
  EdgeList edges;
  for (NodeIndex y = 0; y < height; ++y) {
    for (NodeIndex x = 0; x < width; ++x) {
      if (x + 1 < width) edges.emplace_back(at(x, y), at(x + 1, y));
      if (y + 1 < height) edges.emplace_back(at(x, y), at(x, y + 1));
    }
  }
  return Graph(width * height, std::move(edges));
}

Graph make_erdos_renyi(NodeIndex n, double p, std::uint64_t seed) {
  require(n >= 1, "erdos_renyi: need n >= 1");
  require(p >= 0.0 && p <= 1.0, "erdos_renyi: need p in [0, 1]");
  RandomStream rng(substream_seed(seed, 0x47454e)); // "GEN"
  EdgeList edges;
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph make_cliques_joined_by_star(NodeIndex clique_count, NodeIndex clique_size) {
  require(clique_count >= 1, "cliques_star: need at least one clique");
  require(clique_size >= 1, "cliques_star: need clique size >= 1");
  const NodeIndex n = 1 + clique_count * clique_size;
  EdgeList edges;
  for (NodeIndex c = 0; c < clique_count; ++c) {
    const NodeIndex base = 1 + c * clique_size;
    edges.emplace_back(0, base);  // hub to the designated member
    for (NodeIndex i = 0; i < clique_size; ++i) {
      for (NodeIndex j = i + 1; j < clique_size; ++j) {
        edges.emplace_back(base + i, base + j);
      }
    }
  }
  return Graph(n, std::move(edges));
}

Graph make_graph(const std::string& spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);

  const auto parse_fields = [&](char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(args);
    while (std::getline(in, field, sep)) fields.push_back(field);
    return fields;
  };
  const auto to_u32 = [&](const std::string& s) -> NodeIndex {
    std::size_t pos = 0;
    const unsigned long value = std::stoul(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer in graph spec: " + s);
    return static_cast<NodeIndex>(value);
  };

  try {
    if (family == "path") return make_path(to_u32(args));
    if (family == "complete") return make_complete(to_u32(args));
    if (family == "star") return make_star(to_u32(args));
    if (family == "grid") {
      auto fields = parse_fields(args.find('x') != std::string::npos ? 'x' : ',');
      require(fields.size() == 2, "grid spec needs WxH");
      return make_grid(to_u32(fields[0]), to_u32(fields[1]));
    }
    if (family == "erdos_renyi" || family == "er") {
      auto fields = parse_fields(',');
      require(fields.size() == 2, "erdos_renyi spec needs n,p");
      return make_erdos_renyi(to_u32(fields[0]), std::stod(fields[1]), seed);
    }
    if (family == "cliques_star") {
      auto fields = parse_fields(',');
      require(fields.size() == 2, "cliques_star spec needs count,size");
      return make_cliques_joined_by_star(to_u32(fields[0]), to_u32(fields[1]));
    }
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("number out of range in graph spec: " + spec);
  }
  throw std::invalid_argument("unknown graph family in spec: " + spec);
}

}  // namespace radiomatch
