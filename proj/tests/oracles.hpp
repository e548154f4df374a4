#pragma once

// Brute-force references for small instances. Nothing here calls the code
// under test except the graph container itself.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "termcut/graph.hpp"

namespace oracle {

using termcut::Edge;
using termcut::NodeId;
using termcut::NodeSet;
using termcut::WeightedGraph;

inline WeightedGraph graph(std::size_t n, std::vector<Edge> edges) { return WeightedGraph::from_edges(n, edges); }

/// Erdos-Renyi style graph with integer weights in [1, max_w].
inline WeightedGraph random_graph(std::mt19937_64& rng, std::size_t n, double density, int max_w) {
  std::bernoulli_distribution coin(density);
  std::uniform_int_distribution<int> weight(1, max_w);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), static_cast<double>(weight(rng))});
    }
  }
  return WeightedGraph::from_edges(n, edges);
}

/// Weight of edges whose endpoints have different labels.
inline double crossing(const WeightedGraph& g, const std::vector<int>& label) {
  double w = 0.0;
  for (const Edge& e : g.edges()) {
    if (label[static_cast<std::size_t>(e.u)] != label[static_cast<std::size_t>(e.v)]) w += e.weight;
  }
  return w;
}

/// Calls f(labels) for every partition of 0..n-1 into exactly k nonempty
/// blocks, as restricted growth strings.
inline void for_each_partition(std::size_t n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> label(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == n) {
      if (used == k) f(label);
      return;
    }
    if (static_cast<int>(n - i) < k - used) return;
    for (int b = 0; b <= std::min(used, k - 1); ++b) {
      label[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  if (n > 0) rec(0, 0);
}

/// Minimum k-way cut (undoubled crossing weight) over all k-partitions.
inline double min_k_way_cut(const WeightedGraph& g, int k, std::vector<int>* best = nullptr) {
  double opt = std::numeric_limits<double>::infinity();
  for_each_partition(g.node_count(), k, [&](const std::vector<int>& label) {
    const double w = crossing(g, label);
    if (w < opt) {
      opt = w;
      if (best) *best = label;
    }
  });
  return opt;
}

/// Minimum weight of an edge set whose removal separates the groups pairwise:
/// every node is labelled with a group, the groups' own nodes fixed.
inline double min_k_terminal_cut(const WeightedGraph& g, const std::vector<NodeSet>& groups) {
  const std::size_t n = g.node_count();
  const int k = static_cast<int>(groups.size());
  std::vector<int> fixed(n, -1);
  for (int i = 0; i < k; ++i) {
    for (NodeId u : groups[static_cast<std::size_t>(i)]) fixed[static_cast<std::size_t>(u)] = i;
  }
  std::vector<std::size_t> free_nodes;
  for (std::size_t u = 0; u < n; ++u) {
    if (fixed[u] < 0) free_nodes.push_back(u);
  }
  std::vector<int> label = fixed;
  double opt = std::numeric_limits<double>::infinity();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < free_nodes.size(); ++i) total *= static_cast<std::uint64_t>(k);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t u : free_nodes) {
      label[u] = static_cast<int>(c % static_cast<std::uint64_t>(k));
      c /= static_cast<std::uint64_t>(k);
    }
    opt = std::min(opt, crossing(g, label));
  }
  return opt;
}

/// Minimum s-t cut by enumerating every source side X with S in X, T outside.
inline double min_separating_by_sides(const WeightedGraph& g, const NodeSet& s, const NodeSet& t) {
  const std::size_t n = g.node_count();
  std::vector<int> side(n, -1);
  for (NodeId u : s) side[static_cast<std::size_t>(u)] = 1;
  for (NodeId u : t) side[static_cast<std::size_t>(u)] = 0;
  std::vector<std::size_t> free_nodes;
  for (std::size_t u = 0; u < n; ++u) {
    if (side[u] < 0) free_nodes.push_back(u);
  }
  double opt = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (1ULL << free_nodes.size()); ++mask) {
    for (std::size_t i = 0; i < free_nodes.size(); ++i) side[free_nodes[i]] = static_cast<int>((mask >> i) & 1);
    opt = std::min(opt, crossing(g, side));
  }
  return opt;
}

/// True when no path joins s and t after deleting the edges flagged in `removed`.
inline bool separated(const WeightedGraph& g, const NodeSet& s, const NodeSet& t, const std::vector<char>& removed) {
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack(s.begin(), s.end());
  for (NodeId u : s) seen[static_cast<std::size_t>(u)] = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (const auto& nb : g.neighbors(u)) {
      if (removed[static_cast<std::size_t>(nb.edge)] || seen[static_cast<std::size_t>(nb.node)]) continue;
      seen[static_cast<std::size_t>(nb.node)] = 1;
      stack.push_back(nb.node);
    }
  }
  return std::none_of(t.begin(), t.end(), [&](NodeId u) { return seen[static_cast<std::size_t>(u)] != 0; });
}

/// Minimum separating edge subset by enumerating all 2^m subsets.
inline double min_separating_by_edges(const WeightedGraph& g, const NodeSet& s, const NodeSet& t) {
  const std::size_t m = g.edge_count();
  double opt = std::numeric_limits<double>::infinity();
  std::vector<char> removed(m);
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    double w = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
      removed[e] = static_cast<char>((mask >> e) & 1);
      if (removed[e]) w += g.edges()[e].weight;
    }
    if (w < opt && separated(g, s, t, removed)) opt = w;
  }
  return opt;
}

/// Every partition of 0..n-1 into k blocks of size n/k.
inline void for_each_equal_partition(std::size_t n, int k, const std::function<void(const std::vector<int>&)>& f) {
  const std::size_t q = n / static_cast<std::size_t>(k);
  for_each_partition(n, k, [&](const std::vector<int>& label) {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (int b : label) ++sizes[static_cast<std::size_t>(b)];
    if (std::all_of(sizes.begin(), sizes.end(), [q](std::size_t s) { return s == q; })) f(label);
  });
}

/// Number of vertex pairs split by `label`.
inline std::uint64_t crossing_pairs(const std::vector<int>& label) {
  std::uint64_t c = 0;
  for (std::size_t u = 0; u < label.size(); ++u) {
    for (std::size_t v = u + 1; v < label.size(); ++v) c += label[u] != label[v];
  }
  return c;
}

}  // namespace oracle
