#include <doctest.h>

#include <stdexcept>

#include <set>

#include "radiomatch/generators.hpp"
#include "radiomatch/graph.hpp"

using namespace radiomatch;

namespace {

std::set<std::pair<NodeIndex, NodeIndex>> edge_set(const Graph& g) {
  return {g.edges().begin(), g.edges().end()};
}

}  // namespace

TEST_CASE("graph construction validates simple-graph invariants") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);  // duplicate
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
  const Graph g(3, {{2, 0}, {0, 1}});
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 0));
  CHECK(g.has_edge(0, 2));
  CHECK_FALSE(g.has_edge(1, 2));
}

TEST_CASE("generator shapes") {
  const Graph star = make_star(3);
  CHECK(star.node_count() == 4);
  CHECK(edge_set(star) == std::set<std::pair<NodeIndex, NodeIndex>>{{0, 1}, {0, 2}, {0, 3}});

  const Graph path2 = make_path(2);
  CHECK(path2.edge_count() == 1);
  CHECK(path2.has_edge(0, 1));

  CHECK(make_erdos_renyi(10, 0.0, 123).edge_count() == 0);
  CHECK(make_erdos_renyi(6, 1.0, 9).edge_count() == 15);

  const Graph grid = make_grid(2, 2);
  CHECK(grid.node_count() == 4);
  CHECK(grid.edge_count() == 4);

  const Graph cliques = make_cliques_joined_by_star(2, 3);
  CHECK(cliques.node_count() == 7);
  CHECK(cliques.has_edge(0, 1));
  CHECK(cliques.has_edge(0, 4));
  CHECK(cliques.has_edge(1, 2));
  CHECK(cliques.has_edge(2, 3));
  CHECK(cliques.has_edge(5, 6));
  CHECK_FALSE(cliques.has_edge(0, 2));
  CHECK_FALSE(cliques.has_edge(3, 4));

  // clique size 1 degenerates to a star
  CHECK(edge_set(make_cliques_joined_by_star(3, 1)) == edge_set(make_star(3)));

  CHECK_THROWS_AS(make_path(0), std::invalid_argument);
  CHECK_THROWS_AS(make_erdos_renyi(5, 1.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0, 3), std::invalid_argument);
}

TEST_CASE("generators are deterministic in (params, seed)") {
  for (std::uint64_t seed : {1ULL, 42ULL, 987654321ULL}) {
    CHECK(edge_set(make_erdos_renyi(24, 0.3, seed)) == edge_set(make_erdos_renyi(24, 0.3, seed)));
  }
  CHECK(edge_set(make_graph("erdos_renyi:16,0.5", 7)) ==
        edge_set(make_erdos_renyi(16, 0.5, 7)));
}

TEST_CASE("adjacency is symmetric, sorted and loop-free across families") {
  const Graph graphs[] = {make_path(9),
                          make_complete(7),
                          make_star(6),
                          make_grid(4, 3),
                          make_erdos_renyi(20, 0.4, 5),
                          make_cliques_joined_by_star(3, 4)};
  for (const Graph& g : graphs) {
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      NodeIndex previous = kNoNode;
      for (NodeIndex w : g.neighbors(v)) {
        CHECK(w != v);
        CHECK(g.has_edge(w, v));
        if (previous != kNoNode) CHECK(previous < w);
        previous = w;
      }
    }
    std::size_t degree_sum = 0;
    for (NodeIndex v = 0; v < g.node_count(); ++v) degree_sum += g.degree(v);
    CHECK(degree_sum == 2 * g.edge_count());
  }
}

TEST_CASE("validate_matching reports violations") {
  const Graph path3 = make_path(3);
  CHECK_FALSE(validate_matching(path3, Matching::from_pairs({{0, 1}})).has_value());

  const auto repeated = validate_matching(path3, Matching::from_pairs({{0, 1}, {1, 2}}));
  REQUIRE(repeated.has_value());
  CHECK(repeated->find("node 1") != std::string::npos);

  const auto non_edge = validate_matching(path3, Matching::from_pairs({{0, 2}}));
  REQUIRE(non_edge.has_value());
  CHECK(non_edge->find("not an edge") != std::string::npos);

  CHECK_FALSE(validate_matching(path3, Matching{}).has_value());
}

TEST_CASE("is_maximal") {
  CHECK(is_maximal(make_path(3), Matching::from_pairs({{0, 1}})));
  CHECK_FALSE(is_maximal(make_path(5), Matching::from_pairs({{0, 1}})));  // edge {2,3} uncovered
  CHECK(is_maximal(make_complete(4), Matching::from_pairs({{0, 1}, {2, 3}})));
  CHECK_THROWS_AS(is_maximal(make_path(3), Matching::from_pairs({{0, 2}})),
                  std::invalid_argument);

  // the empty matching is maximal exactly on edgeless graphs
  CHECK(is_maximal(make_erdos_renyi(5, 0.0, 1), Matching{}));
  CHECK_FALSE(is_maximal(make_path(2), Matching{}));
}

TEST_CASE("naf_load") {
  const Graph triangle = make_complete(3);
  NafAssignment cycle(3);
  cycle.target = {1, 2, 0};
  const auto cycle_load = naf_load(triangle, cycle);
  CHECK(cycle_load.load == 1);
  CHECK(cycle_load.total);

  const Graph star3 = make_star(3);
  NafAssignment to_hub(4);
  to_hub.target = {1, 0, 0, 0};  // hub backs up leaf 1, every leaf targets the hub
  const auto star_load = naf_load(star3, to_hub);
  CHECK(star_load.load == 3);
  CHECK(star_load.total);

  NafAssignment mutual(2);
  mutual.target = {1, 0};
  CHECK(naf_load(make_path(2), mutual).load == 1);

  NafAssignment partial(3);
  partial.target = {1, kNoNode, kNoNode};
  const auto partial_load = naf_load(make_path(3), partial);
  CHECK_FALSE(partial_load.total);
  CHECK(partial_load.load == 1);

  NafAssignment bad(3);
  bad.target = {2, 0, 1};  // 0 -> 2 is not an edge of the path
  CHECK_THROWS_AS(naf_load(make_path(3), bad), std::invalid_argument);

  // some node must be targeted once anything is assigned
  NafAssignment any(4);
  any.target = {1, 0, 1, 0};
  CHECK(naf_load(make_complete(4), any).load >= 1);
}

TEST_CASE("index ids are the node index") {
  const IdSpace ids = IdSpace::index_ids(6);
  CHECK(ids.bits_per_id == 3);
  CHECK(ids.duplicate_pairs().empty());
  for (NodeIndex v = 0; v < 6; ++v) {
    CHECK(ids.id_of[v].words[0] == v);
    CHECK(ids.index_of(ids.id_of[v]) == v);
  }
  CHECK(IdSpace::index_ids(1).bits_per_id == 1);
  CHECK(IdSpace::index_ids(2).bits_per_id == 1);
  CHECK(IdSpace::index_ids(257).bits_per_id == 9);
}

TEST_CASE("random ids: length, determinism, duplicate detection") {
  const IdSpace a = IdSpace::random_ids(16, 3.0, 99);
  const IdSpace b = IdSpace::random_ids(16, 3.0, 99);
  CHECK(a.bits_per_id == 12);  // ceil(3 * ceil(log2 16))
  for (NodeIndex v = 0; v < 16; ++v) CHECK(a.id_of[v] == b.id_of[v]);
  CHECK(a.duplicate_pairs().empty());
  for (NodeIndex v = 0; v < 16; ++v) CHECK(a.index_of(a.id_of[v]) == v);

  // a long id spans several words and keeps spare bits zero
  const IdSpace wide = IdSpace::random_ids(256, 100.0, 1);
  CHECK(wide.bits_per_id == 800);
  CHECK(wide.id_of[0].words.size() == 13);
  CHECK((wide.id_of[0].words.back() >> (800 - 12 * 64)) == 0);

  // one bit per id among four nodes: collisions guaranteed, and reported
  const IdSpace tiny = IdSpace::random_ids(4, 0.25, 5);
  CHECK(tiny.bits_per_id == 1);
  CHECK_FALSE(tiny.duplicate_pairs().empty());
}
