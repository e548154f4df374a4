#include "termcut/maxflow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "termcut/error.hpp"

namespace termcut {

namespace {

struct Arc {
  std::size_t to;
  std::size_t reverse;  // index of the paired arc in adjacency[to]
  double residual;
};

class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t node_count) : arcs_(node_count) {}

  void add_edge(std::size_t u, std::size_t v, double cap_forward, double cap_backward) {
    arcs_[u].push_back({v, arcs_[v].size(), cap_forward});
    arcs_[v].push_back({u, arcs_[u].size() - 1, cap_backward});
  }

  // Edmonds-Karp; residuals at or below eps are treated as saturated.
  double max_flow(std::size_t s, std::size_t t, double eps) {
    double total = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> parent(arcs_.size());
    std::vector<char> visited(arcs_.size());
    std::deque<std::size_t> queue;
    for (;;) {
      std::fill(visited.begin(), visited.end(), 0);
      queue.assign(1, s);
      visited[s] = 1;
      while (!queue.empty() && !visited[t]) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < arcs_[u].size(); ++i) {
          const Arc& a = arcs_[u][i];
          if (a.residual > eps && !visited[a.to]) {
            visited[a.to] = 1;
            parent[a.to] = {u, i};
            queue.push_back(a.to);
          }
        }
      }
      if (!visited[t]) break;

      double bottleneck = std::numeric_limits<double>::infinity();
      for (std::size_t v = t; v != s; v = parent[v].first) {
        bottleneck = std::min(bottleneck, arcs_[parent[v].first][parent[v].second].residual);
      }
      for (std::size_t v = t; v != s; v = parent[v].first) {
        Arc& a = arcs_[parent[v].first][parent[v].second];
        a.residual -= bottleneck;
        arcs_[a.to][a.reverse].residual += bottleneck;
      }
      total += bottleneck;
    }
    return total;
  }

  std::vector<char> reachable_from(std::size_t s, double eps) const {
    std::vector<char> seen(arcs_.size(), 0);
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (const Arc& a : arcs_[u]) {
        if (a.residual > eps && !seen[a.to]) {
          seen[a.to] = 1;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  std::vector<std::vector<Arc>> arcs_;
};

void validate_terminals(const WeightedGraph& g, std::span<const NodeId> sources,
                        std::span<const NodeId> sinks) {
  if (sources.empty() || sinks.empty()) {
    fail(ErrorCode::invalid_terminals, "source and sink sets must be nonempty");
  }
  std::vector<char> role(g.node_count(), 0);
  for (NodeId u : sources) {
    if (!g.contains(u)) fail(ErrorCode::invalid_node, "source " + std::to_string(u) + " not in graph");
    role[static_cast<std::size_t>(u)] = 1;
  }
  for (NodeId u : sinks) {
    if (!g.contains(u)) fail(ErrorCode::invalid_node, "sink " + std::to_string(u) + " not in graph");
    if (role[static_cast<std::size_t>(u)] == 1) {
      fail(ErrorCode::invalid_terminals, "node " + std::to_string(u) + " is both source and sink");
    }
  }
}

}  // namespace

StCut solve_min_cut(const WeightedGraph& g, std::span<const NodeId> sources,
                    std::span<const NodeId> sinks) {
  validate_terminals(g, sources, sinks);

  const std::size_t n = g.node_count();
  const std::size_t super_source = n;
  const std::size_t super_sink = n + 1;
  const double unbounded = g.total_weight() + 1.0;
  const double eps = 1e-12 * std::max(1.0, g.total_weight());

  FlowNetwork net(n + 2);
  for (const Edge& e : g.edges()) {
    net.add_edge(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v), e.weight, e.weight);
  }
  for (NodeId s : sources) net.add_edge(super_source, static_cast<std::size_t>(s), unbounded, 0.0);
  for (NodeId t : sinks) net.add_edge(static_cast<std::size_t>(t), super_sink, unbounded, 0.0);

  StCut result;
  result.flow_value = net.max_flow(super_source, super_sink, eps);
  auto side = net.reachable_from(super_source, eps);
  side.resize(n);

  std::vector<EdgeId> cut_edges;
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (side[static_cast<std::size_t>(edges[i].u)] != side[static_cast<std::size_t>(edges[i].v)]) {
      cut_edges.push_back(static_cast<EdgeId>(i));
    }
  }
  result.cut = CutSet::from_edges(g, std::move(cut_edges));
  result.source_side = std::move(side);
  return result;
}

CutSet min_cut_st(const WeightedGraph& g, std::span<const NodeId> sources,
                  std::span<const NodeId> sinks) {
  return solve_min_cut(g, sources, sinks).cut;
}

double max_flow_value(const WeightedGraph& g, std::span<const NodeId> sources,
                      std::span<const NodeId> sinks) {
  return solve_min_cut(g, sources, sinks).flow_value;
}

}  // namespace termcut
