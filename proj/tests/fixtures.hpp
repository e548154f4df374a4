#pragma once

#include <vector>

#include "termcut/graph.hpp"

namespace fixture {

using termcut::Edge;
using termcut::WeightedGraph;

// Triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline WeightedGraph two_triangles() {
  const std::vector<Edge> e = {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {3, 4, 1}, {3, 5, 1}, {4, 5, 1}, {2, 3, 1}};
  return WeightedGraph::from_edges(6, e);
}

// Triangles {0,1,2}, {3,4,5}, {6,7,8} in a ring through 2-3, 5-6, 8-0.
inline WeightedGraph triangle_ring() {
  std::vector<Edge> e;
  for (int t = 0; t < 3; ++t) {
    const int b = 3 * t;
    e.push_back({b, b + 1, 1});
    e.push_back({b, b + 2, 1});
    e.push_back({b + 1, b + 2, 1});
  }
  e.push_back({2, 3, 1});
  e.push_back({5, 6, 1});
  e.push_back({0, 8, 1});
  return WeightedGraph::from_edges(9, e);
}

inline WeightedGraph path(int n, double w = 1.0) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, w});
  return WeightedGraph::from_edges(static_cast<std::size_t>(n), e);
}

inline WeightedGraph complete(int n, double w = 1.0) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) e.push_back({u, v, w});
  }
  return WeightedGraph::from_edges(static_cast<std::size_t>(n), e);
}

// Two cliques of size s on 0..s-1 and s..2s-1 plus the listed cross edges.
inline WeightedGraph two_cliques(int s, std::vector<Edge> cross) {
  std::vector<Edge> e = std::move(cross);
  for (int b = 0; b < 2; ++b) {
    for (int u = 0; u < s; ++u) {
      for (int v = u + 1; v < s; ++v) e.push_back({b * s + u, b * s + v, 1});
    }
  }
  return WeightedGraph::from_edges(static_cast<std::size_t>(2 * s), e);
}

}  // namespace fixture
