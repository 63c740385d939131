#include "radiomatch/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace radiomatch::oracles {

namespace {

void guard(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_no_isolated(const Graph& g, const char* who) {
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) == 0) {
      std::ostringstream msg;
      msg << who << ": node " << v << " is isolated";
      throw std::invalid_argument(msg.str());
    }
  }
}

std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> mask(g.node_count(), 0);
  for (const auto& [u, v] : g.edges()) {
    mask[u] |= 1u << v;
    mask[v] |= 1u << u;
  }
  return mask;
}

}  // namespace

Matching greedy_matching(const Graph& g, std::span<const std::size_t> edge_order) {
  if (edge_order.size() != g.edge_count()) {
    throw std::invalid_argument("edge order must be a permutation of all edges");
  }
  std::vector<bool> used(g.node_count(), false);
  Matching m;
  for (std::size_t index : edge_order) {
    if (index >= g.edge_count()) throw std::invalid_argument("edge index out of range");
    const auto& [u, v] = g.edges()[index];
    if (used[u] || used[v]) continue;
    used[u] = used[v] = true;
    m.add(u, v);
  }
  return m;
}

Matching greedy_matching(const Graph& g, std::uint64_t shuffle_seed) {
  std::vector<std::size_t> order(g.edge_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  RandomStream rng(substream_seed(shuffle_seed, 0x677265656479));  // "greedy"
  rng.shuffle(order);
  return greedy_matching(g, order);
}

NodeIndex maximum_matching_size(const Graph& g) {
  const NodeIndex n = g.node_count();
  {
    std::ostringstream msg;
    msg << "maximum matching oracle limited to 20 nodes, got " << n;
    guard(n <= 20, msg.str());
  }
  if (n == 0) return 0;
  const auto nbr = adjacency_masks(g);
  std::vector<std::int8_t> memo(std::size_t{1} << n, -1);
  const std::function<int(std::uint32_t)> best = [&](std::uint32_t decided) -> int {
    if (decided == (std::uint32_t{1} << n) - 1) return 0;
    auto& entry = memo[decided];
    if (entry >= 0) return entry;
    const NodeIndex v = std::countr_one(decided);  // lowest undecided node
    int result = best(decided | (1u << v));        // leave v unmatched
    std::uint32_t candidates = nbr[v] & ~decided;
    while (candidates) {
      const NodeIndex w = std::countr_zero(candidates);
      candidates &= candidates - 1;
      result = std::max(result, 1 + best(decided | (1u << v) | (1u << w)));
    }
    entry = static_cast<std::int8_t>(result);
    return result;
  };
  return static_cast<NodeIndex>(best(0));
}

NodeIndex matching_cover_number(const Graph& g) {
  const NodeIndex n = g.node_count();
  {
    std::ostringstream msg;
    msg << "matching cover oracle limited to 12 nodes, got " << n;
    guard(n <= 12, msg.str());
  }
  require_no_isolated(g, "matching cover");
  if (n == 0) return 0;

  const auto nbr = adjacency_masks(g);
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;

  // saturable[s]: some matching covers every node of s.  Vertices outside s
  // may serve as partners but each at most once, so the search tracks the
  // still-available set; the needed set is always s & avail.
  std::vector<std::int8_t> saturable(full + 1, -1);
  std::vector<std::int8_t> avail_memo(full + 1);
  const auto saturable_check = [&](std::uint32_t s) -> bool {
    std::fill(avail_memo.begin(), avail_memo.end(), std::int8_t{-1});
    const std::function<bool(std::uint32_t)> search = [&](std::uint32_t avail) -> bool {
      const std::uint32_t needed = s & avail;
      if (needed == 0) return true;
      auto& entry = avail_memo[avail];
      if (entry >= 0) return entry != 0;
      bool ok = false;
      const NodeIndex v = std::countr_zero(needed);
      std::uint32_t partners = nbr[v] & avail;
      while (partners && !ok) {
        const NodeIndex w = std::countr_zero(partners);
        partners &= partners - 1;
        ok = search(avail & ~(1u << v) & ~(1u << w));
      }
      entry = ok ? 1 : 0;
      return ok;
    };
    return search(full);
  };
  const auto is_saturable = [&](std::uint32_t s) -> bool {
    auto& entry = saturable[s];
    if (entry < 0) entry = saturable_check(s) ? 1 : 0;
    return entry != 0;
  };

  // Iterative deepening over the uncovered set: the next matching must cover
  // the lowest uncovered vertex, so only submasks containing it are tried.
  std::vector<std::int8_t> cover_memo(full + 1, -1);
  const std::function<int(std::uint32_t)> cover = [&](std::uint32_t uncovered) -> int {
    if (uncovered == 0) return 0;
    auto& entry = cover_memo[uncovered];
    if (entry >= 0) return entry;
    const std::uint32_t low = uncovered & (~uncovered + 1);
    int best = n;  // one matching per vertex always suffices
    for (std::uint32_t s = uncovered; s != 0; s = (s - 1) & uncovered) {
      if (!(s & low)) continue;
      if (!is_saturable(s)) continue;
      best = std::min(best, 1 + cover(uncovered & ~s));
      if (best == 1) break;
    }
    entry = static_cast<std::int8_t>(best);
    return best;
  };
  return static_cast<NodeIndex>(cover(full));
}

NodeIndex min_naf_load(const Graph& g) {
  const NodeIndex n = g.node_count();
  require_no_isolated(g, "minimum load");
  double degree_product = 1;
  for (NodeIndex v = 0; v < n; ++v) degree_product *= static_cast<double>(g.degree(v));
  if (n > 10 && degree_product > 1e7) {
    std::ostringstream msg;
    msg << "minimum load oracle guard exceeded: n=" << n << ", assignment space ~" << degree_product;
    throw std::invalid_argument(msg.str());
  }
  if (n == 0) return 0;

  // Low-degree nodes first: their targets are the most constrained.
  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), NodeIndex{0});
  std::sort(order.begin(), order.end(),
            [&](NodeIndex a, NodeIndex b) { return g.degree(a) < g.degree(b); });

  std::vector<NodeIndex> in_degree(n, 0);
  const auto feasible = [&](NodeIndex bound) -> bool {
    const std::function<bool(NodeIndex)> place = [&](NodeIndex i) -> bool {
      if (i == n) return true;
      const NodeIndex v = order[i];
      for (NodeIndex w : g.neighbors(v)) {
        if (in_degree[w] >= bound) continue;
        ++in_degree[w];
        if (place(i + 1)) {
          --in_degree[w];
          return true;
        }
        --in_degree[w];
      }
      return false;
    };
    return place(0);
  };

  for (NodeIndex bound = 1; bound < g.max_degree(); ++bound) {
    if (feasible(bound)) return bound;
  }
  // Any total assignment keeps every in-degree within the max degree.
  return g.max_degree();
}

ExactProbability pair_probability_exact(const Graph& g, const std::vector<bool>& matched,
                                        double rate, Edge edge, Enumeration mode) {
  const NodeIndex n = g.node_count();
  guard(matched.size() == n, "matched flags must cover every node");
  guard(rate > 0.0 && rate <= 1.0, "rate must lie in (0, 1]");
  guard(edge.u < n && edge.v < n && g.has_edge(edge.u, edge.v),
        "pair probability needs an edge of the graph");
  guard(!matched[edge.u] && !matched[edge.v], "both endpoints must be unmatched");

  // Pick the nodes whose roles are enumerated.  Matched nodes never act, and
  // in distance-two mode anything more than two hops from the edge cannot
  // touch the handshake: it influences no timestep heard by the endpoints.
  std::vector<NodeIndex> domain;
  if (mode == Enumeration::Full) {
    for (NodeIndex v = 0; v < n; ++v) {
      if (!matched[v]) domain.push_back(v);
    }
  } else {
    std::vector<int> dist(n, -1);
    std::vector<NodeIndex> queue{edge.u, edge.v};
    dist[edge.u] = dist[edge.v] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeIndex v = queue[head];
      if (dist[v] == 2) continue;
      for (NodeIndex w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    for (NodeIndex v = 0; v < n; ++v) {
      if (dist[v] >= 0 && !matched[v]) domain.push_back(v);
    }
  }
  if (domain.size() > 14) {
    std::ostringstream msg;
    msg << "pair probability enumeration over " << domain.size()
        << " nodes exceeds the 3^14 guard (n=" << n << ")";
    throw std::invalid_argument(msg.str());
  }

  enum class R : std::uint8_t { Off, Recruit, Accept };
  std::vector<R> role(n, R::Off);
  std::vector<NodeIndex> heard(n, kNoNode);   // accepter: unique recruiting neighbor
  std::vector<NodeIndex> commit(n, kNoNode);  // recruiter: accepter committed to

  // One deterministic round under the fixed roles.  Role-guarded reads keep
  // stale scratch from earlier outcomes harmless.
  const auto round_pairs_edge = [&]() -> bool {
    for (NodeIndex a : domain) {
      if (role[a] != R::Accept) continue;
      NodeIndex unique = kNoNode;
      int senders = 0;
      for (NodeIndex w : g.neighbors(a)) {
        if (role[w] == R::Recruit) {
          unique = w;
          if (++senders > 1) break;
        }
      }
      heard[a] = senders == 1 ? unique : kNoNode;
    }
    for (NodeIndex u : domain) {
      if (role[u] != R::Recruit) continue;
      NodeIndex unique = kNoNode;
      int senders = 0;
      for (NodeIndex w : g.neighbors(u)) {
        if (role[w] == R::Accept && heard[w] != kNoNode) {
          unique = w;
          if (++senders > 1) break;
        }
      }
      commit[u] = (senders == 1 && heard[unique] == u) ? unique : kNoNode;
    }
    // Confirmation heard by accepter a iff exactly one neighboring recruiter
    // committed (to anyone) and it committed to a.
    const auto accepter_partner = [&](NodeIndex a) -> NodeIndex {
      if (role[a] != R::Accept || heard[a] == kNoNode) return kNoNode;
      NodeIndex unique = kNoNode;
      int senders = 0;
      for (NodeIndex w : g.neighbors(a)) {
        if (role[w] == R::Recruit && commit[w] != kNoNode) {
          unique = w;
          if (++senders > 1) break;
        }
      }
      return (senders == 1 && commit[unique] == a) ? unique : kNoNode;
    };
    if (role[edge.u] == R::Recruit && commit[edge.u] == edge.v) {
      return accepter_partner(edge.v) == edge.u;
    }
    if (role[edge.v] == R::Recruit && commit[edge.v] == edge.u) {
      return accepter_partner(edge.u) == edge.v;
    }
    return false;
  };

  const long double half_rate = static_cast<long double>(rate) / 2;
  const long double off_weight = 1 - static_cast<long double>(rate);
  long double total = 0;
  const std::function<void(std::size_t, long double)> enumerate =
      [&](std::size_t i, long double weight) {
        if (i == domain.size()) {
          if (round_pairs_edge()) total += weight;
          return;
        }
        const NodeIndex v = domain[i];
        role[v] = R::Recruit;
        enumerate(i + 1, weight * half_rate);
        role[v] = R::Accept;
        enumerate(i + 1, weight * half_rate);
        role[v] = R::Off;
        enumerate(i + 1, weight * off_weight);
      };
  enumerate(0, 1.0L);

  ExactProbability out;
  out.value = total;
  out.enumerated_nodes = static_cast<NodeIndex>(domain.size());
  std::ostringstream method;
  method << (mode == Enumeration::Full ? "full" : "distance-2") << " enumeration, 3^"
         << domain.size() << " outcomes";
  out.method = method.str();
  return out;
}

double pair_probability_lower_bound(const Graph& g, const std::vector<bool>& matched, double rate,
                                    Edge edge) {
  guard(matched.size() == g.node_count(), "matched flags must cover every node");
  guard(!matched[edge.u] && !matched[edge.v] && g.has_edge(edge.u, edge.v),
        "bound needs an edge with unmatched endpoints");
  NodeIndex residual_max_degree = 0;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (matched[v]) continue;
    NodeIndex d = 0;
    for (NodeIndex w : g.neighbors(v)) d += !matched[w];
    residual_max_degree = std::max(residual_max_degree, d);
  }
  return rate * rate / 2 *
         std::pow(1.0 - rate, static_cast<double>(residual_max_degree) - 1.0);
}

LoadCoverComparison verify_naf_mc_theorem(const Graph& g) {
  LoadCoverComparison out;
  out.naf_load = min_naf_load(g);
  out.cover_number = matching_cover_number(g);
  out.consistent = out.naf_load == out.cover_number ||
                   (out.naf_load == 1 && (out.cover_number == 1 || out.cover_number == 2));
  return out;
}

std::vector<Graph> all_connected_graphs(NodeIndex n) {
  guard(n >= 1 && n <= 7, "connected graph enumeration limited to 1..7 nodes");
  const NodeIndex pair_count = n * (n - 1) / 2;
  std::vector<std::pair<NodeIndex, NodeIndex>> slots;
  slots.reserve(pair_count);
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  }
  const auto bit_of = [n](NodeIndex u, NodeIndex v) {
    if (u > v) std::swap(u, v);
    // position of (u, v) in row-major upper-triangle order
    return u * n - u * (u + 1) / 2 + (v - u - 1);
  };

  // All n! vertex relabelings, precomputed once.
  std::vector<std::vector<NodeIndex>> permutations;
  {
    std::vector<NodeIndex> perm(n);
    std::iota(perm.begin(), perm.end(), NodeIndex{0});
    do {
      permutations.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  // Edge-slot images per permutation, so relabeling is a table walk.
  std::vector<std::vector<std::uint32_t>> slot_image(permutations.size());
  for (std::size_t p = 0; p < permutations.size(); ++p) {
    slot_image[p].resize(pair_count);
    for (NodeIndex e = 0; e < pair_count; ++e) {
      slot_image[p][e] = bit_of(permutations[p][slots[e].first], permutations[p][slots[e].second]);
    }
  }

  // A mask is kept iff it is the minimum of its relabeling orbit; that picks
  // exactly one labeled representative per isomorphism class.
  std::vector<std::uint32_t> canonical;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << pair_count); ++mask) {
    std::vector<std::uint32_t> nbr(n, 0);
    for (NodeIndex e = 0; e < pair_count; ++e) {
      if (mask & (1u << e)) {
        nbr[slots[e].first] |= 1u << slots[e].second;
        nbr[slots[e].second] |= 1u << slots[e].first;
      }
    }
    std::uint32_t visited = 1, frontier = 1;
    while (frontier) {
      std::uint32_t next = 0;
      std::uint32_t scan = frontier;
      while (scan) {
        const NodeIndex v = std::countr_zero(scan);
        scan &= scan - 1;
        next |= nbr[v];
      }
      frontier = next & ~visited;
      visited |= next;
    }
    if (visited != (std::uint32_t{1} << n) - 1) continue;

    bool is_orbit_minimum = true;
    for (std::size_t p = 0; p < permutations.size() && is_orbit_minimum; ++p) {
      std::uint32_t relabeled = 0;
      std::uint32_t scan = mask;
      while (scan) {
        const NodeIndex e = std::countr_zero(scan);
        scan &= scan - 1;
        relabeled |= 1u << slot_image[p][e];
      }
      is_orbit_minimum = relabeled >= mask;
    }
    if (is_orbit_minimum) canonical.push_back(mask);
  }

  std::vector<Graph> graphs;
  graphs.reserve(canonical.size());
  for (std::uint32_t mask : canonical) {
    std::vector<std::pair<NodeIndex, NodeIndex>> edges;
    for (NodeIndex e = 0; e < pair_count; ++e) {
      if (mask & (1u << e)) edges.push_back(slots[e]);
    }
    graphs.emplace_back(n, std::move(edges));
  }
  return graphs;
}

}  // namespace radiomatch::oracles
