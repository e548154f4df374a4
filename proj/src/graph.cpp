#include "termcut/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_map>

#include "termcut/error.hpp"

namespace termcut {

namespace {

void check_node(const WeightedGraph& g, NodeId u) {
  if (!g.contains(u)) {
    fail(ErrorCode::invalid_node, "node " + std::to_string(u) + " is not in the graph (n=" +
                                      std::to_string(g.node_count()) + ")");
  }
}

// Hop distances as a dense vector, -1 for unreachable.
std::vector<int> bfs_distances(const WeightedGraph& g, NodeId source) {
  std::vector<int> dist(g.node_count(), -1);
  std::deque<NodeId> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (const Neighbor& nb : g.neighbors(u)) {
      auto& d = dist[static_cast<std::size_t>(nb.node)];
      if (d < 0) {
        d = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(nb.node);
      }
    }
  }
  return dist;
}

Partition components_skipping(const WeightedGraph& g, const std::vector<char>* removed) {
  const std::size_t n = g.node_count();
  std::vector<int> labels(n, -1);
  std::vector<NodeId> stack;
  int next = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (labels[start] >= 0) continue;
    labels[start] = next;
    stack.push_back(static_cast<NodeId>(start));
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : g.neighbors(u)) {
        if (removed != nullptr && (*removed)[static_cast<std::size_t>(nb.edge)]) continue;
        int& label = labels[static_cast<std::size_t>(nb.node)];
        if (label < 0) {
          label = next;
          stack.push_back(nb.node);
        }
      }
    }
    ++next;
  }
  return Partition::from_labels(std::span<const int>(labels));
}

}  // namespace

// ---------------------------------------------------------------------------
// WeightedGraph

WeightedGraph WeightedGraph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  WeightedGraph g;
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= node_count ||
        static_cast<std::size_t>(e.v) >= node_count) {
      fail(ErrorCode::invalid_node, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                        ") references a node outside 0.." +
                                        std::to_string(node_count));
    }
    if (e.u == e.v) {
      fail(ErrorCode::invalid_argument, "self-loop at node " + std::to_string(e.u));
    }
    if (!(e.weight >= 0.0)) {
      fail(ErrorCode::invalid_argument, "negative or NaN weight on edge (" + std::to_string(e.u) +
                                            "," + std::to_string(e.v) + ")");
    }
    g.edges_.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
  }
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  for (std::size_t i = 1; i < g.edges_.size(); ++i) {
    if (g.edges_[i].u == g.edges_[i - 1].u && g.edges_[i].v == g.edges_[i - 1].v) {
      fail(ErrorCode::invalid_argument, "duplicate edge (" + std::to_string(g.edges_[i].u) + "," +
                                            std::to_string(g.edges_[i].v) + ")");
    }
  }

  std::vector<std::size_t> counts(node_count, 0);
  for (const Edge& e : g.edges_) {
    ++counts[static_cast<std::size_t>(e.u)];
    ++counts[static_cast<std::size_t>(e.v)];
  }
  g.offsets_.assign(node_count + 1, 0);
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] = g.offsets_[i] + counts[i];
  g.adjacency_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  g.degrees_.assign(node_count, 0.0);
  for (std::size_t id = 0; id < g.edges_.size(); ++id) {
    const Edge& e = g.edges_[id];
    const auto eid = static_cast<EdgeId>(id);
    g.adjacency_[fill[static_cast<std::size_t>(e.u)]++] = {e.v, e.weight, eid};
    g.adjacency_[fill[static_cast<std::size_t>(e.v)]++] = {e.u, e.weight, eid};
    g.degrees_[static_cast<std::size_t>(e.u)] += e.weight;
    g.degrees_[static_cast<std::size_t>(e.v)] += e.weight;
    g.total_weight_ += e.weight;
    g.max_weight_ = std::max(g.max_weight_, e.weight);
  }
  for (std::size_t u = 0; u < node_count; ++u) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return g;
}

std::span<const Neighbor> WeightedGraph::neighbors(NodeId u) const {
  check_node(*this, u);
  const auto i = static_cast<std::size_t>(u);
  return std::span<const Neighbor>(adjacency_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

double WeightedGraph::degree(NodeId u) const {
  check_node(*this, u);
  return degrees_[static_cast<std::size_t>(u)];
}

std::optional<EdgeId> WeightedGraph::find_edge(NodeId u, NodeId v) const {
  const auto adj = neighbors(u);
  check_node(*this, v);
  const auto it = std::lower_bound(adj.begin(), adj.end(), v,
                                   [](const Neighbor& nb, NodeId id) { return nb.node < id; });
  if (it == adj.end() || it->node != v) return std::nullopt;
  return it->edge;
}

double WeightedGraph::weight(NodeId u, NodeId v) const {
  const auto e = find_edge(u, v);
  return e ? edges_[static_cast<std::size_t>(*e)].weight : 0.0;
}

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.u != y.u || x.v != y.v || x.weight != y.weight) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// GraphBuilder

void GraphBuilder::ensure_nodes(std::size_t count) { node_count_ = std::max(node_count_, count); }

bool GraphBuilder::add(NodeId u, NodeId v, double w) {
  if (u < 0 || v < 0) fail(ErrorCode::invalid_node, "negative node id");
  if (u == v) fail(ErrorCode::invalid_argument, "self-loop at node " + std::to_string(u));
  if (!(w >= 0.0)) fail(ErrorCode::invalid_argument, "negative or NaN edge weight");
  ensure_nodes(static_cast<std::size_t>(std::max(u, v)) + 1);
  auto [it, inserted] = weights_.try_emplace({std::min(u, v), std::max(u, v)}, 0.0);
  it->second += w;
  return !inserted;
}

WeightedGraph GraphBuilder::build() const {
  std::vector<Edge> edges;
  edges.reserve(weights_.size());
  for (const auto& [key, w] : weights_) edges.push_back({key.first, key.second, w});
  return WeightedGraph::from_edges(node_count_, edges);
}

// ---------------------------------------------------------------------------
// Partition

namespace {

template <class Label>
void canonical(std::span<const Label> labels, std::vector<int>& out, int& k) {
  std::unordered_map<Label, int> remap;
  out.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.try_emplace(labels[i], static_cast<int>(remap.size()));
    out[i] = it->second;
  }
  k = static_cast<int>(remap.size());
}

}  // namespace

Partition Partition::from_labels(std::span<const std::int64_t> labels) {
  Partition p;
  canonical(labels, p.labels_, p.k_);
  return p;
}

Partition Partition::from_labels(std::span<const int> labels) {
  Partition p;
  canonical(labels, p.labels_, p.k_);
  return p;
}

Partition Partition::from_groups(std::size_t node_count, std::span<const NodeSet> groups) {
  std::vector<int> labels(node_count, -1);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (NodeId u : groups[i]) {
      if (u < 0 || static_cast<std::size_t>(u) >= node_count) {
        fail(ErrorCode::invalid_node, "group member " + std::to_string(u) + " out of range");
      }
      if (labels[static_cast<std::size_t>(u)] >= 0) {
        fail(ErrorCode::invalid_argument, "node " + std::to_string(u) + " appears in two groups");
      }
      labels[static_cast<std::size_t>(u)] = static_cast<int>(i);
    }
  }
  if (std::find(labels.begin(), labels.end(), -1) != labels.end()) {
    fail(ErrorCode::universe_mismatch, "groups do not cover every node");
  }
  return from_labels(std::span<const int>(labels));
}

Partition Partition::single(std::size_t node_count) {
  const std::vector<int> labels(node_count, 0);
  return from_labels(std::span<const int>(labels));
}

Partition Partition::singletons(std::size_t node_count) {
  std::vector<int> labels(node_count);
  std::iota(labels.begin(), labels.end(), 0);
  return from_labels(std::span<const int>(labels));
}

std::vector<NodeSet> Partition::communities() const {
  std::vector<NodeSet> out(static_cast<std::size_t>(k_));
  for (std::size_t u = 0; u < labels_.size(); ++u) {
    out[static_cast<std::size_t>(labels_[u])].push_back(static_cast<NodeId>(u));
  }
  return out;
}

std::vector<std::size_t> Partition::sizes() const {
  std::vector<std::size_t> out(static_cast<std::size_t>(k_), 0);
  for (int label : labels_) ++out[static_cast<std::size_t>(label)];
  return out;
}

// ---------------------------------------------------------------------------
// CutSet

CutSet CutSet::from_edges(const WeightedGraph& g, std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  CutSet cut;
  for (EdgeId e : edges) {
    if (e < 0 || static_cast<std::size_t>(e) >= g.edge_count()) {
      fail(ErrorCode::invalid_argument, "edge id " + std::to_string(e) + " not in graph");
    }
    cut.total_weight_ += g.edge(e).weight;
  }
  cut.edges_ = std::move(edges);
  return cut;
}

CutSet CutSet::unite(const WeightedGraph& g, std::span<const CutSet> parts) {
  std::vector<EdgeId> all;
  for (const CutSet& c : parts) all.insert(all.end(), c.edges_.begin(), c.edges_.end());
  return from_edges(g, std::move(all));
}

bool CutSet::contains(EdgeId e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

// ---------------------------------------------------------------------------
// Operations

double degree(const WeightedGraph& g, NodeId u) { return g.degree(u); }

std::map<NodeId, int> shortest_hop_distances(const WeightedGraph& g, NodeId u) {
  check_node(g, u);
  const auto dist = bfs_distances(g, u);
  std::map<NodeId, int> out;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] >= 0) out.emplace(static_cast<NodeId>(v), dist[v]);
  }
  return out;
}

LocalArea local_area(const WeightedGraph& g, NodeId u, int l) {
  check_node(g, u);
  if (l < 0) fail(ErrorCode::invalid_argument, "local-area radius must be >= 0");

  LocalArea area{u, l, {u}};
  std::vector<char> seen(g.node_count(), 0);
  seen[static_cast<std::size_t>(u)] = 1;
  std::vector<NodeId> level{u};
  std::size_t wanted = static_cast<std::size_t>(l);

  while (wanted > 0 && !level.empty()) {
    std::vector<NodeId> next;
    for (NodeId x : level) {
      for (const Neighbor& nb : g.neighbors(x)) {
        auto& s = seen[static_cast<std::size_t>(nb.node)];
        if (!s) {
          s = 1;
          next.push_back(nb.node);
        }
      }
    }
    std::sort(next.begin(), next.end(), [&g](NodeId a, NodeId b) {
      const double da = g.degree(a);
      const double db = g.degree(b);
      return da != db ? da > db : a < b;
    });
    const std::size_t take = std::min(wanted, next.size());
    area.members.insert(area.members.end(), next.begin(), next.begin() + static_cast<std::ptrdiff_t>(take));
    wanted -= take;
    level = std::move(next);
  }
  std::sort(area.members.begin(), area.members.end());
  return area;
}

double centrality(const WeightedGraph& g, NodeId u, int h) {
  check_node(g, u);
  if (h < 1) fail(ErrorCode::invalid_argument, "centrality radius h must be >= 1");
  const LocalArea area = local_area(g, u, h);
  const auto dist = bfs_distances(g, u);
  long long sum = 0;
  for (NodeId v : area.members) sum += dist[static_cast<std::size_t>(v)];
  if (sum == 0) {
    fail(ErrorCode::undefined_value, "centrality undefined for isolated node " + std::to_string(u));
  }
  return 1.0 / static_cast<double>(sum);
}

Partition connected_components(const WeightedGraph& g) { return components_skipping(g, nullptr); }

Partition components_after_removal(const WeightedGraph& g, const CutSet& cut) {
  std::vector<char> removed(g.edge_count(), 0);
  for (EdgeId e : cut.edges()) {
    if (static_cast<std::size_t>(e) >= g.edge_count()) {
      fail(ErrorCode::invalid_argument, "cut edge " + std::to_string(e) + " not in graph");
    }
    removed[static_cast<std::size_t>(e)] = 1;
  }
  return components_skipping(g, &removed);
}

bool is_connected(const WeightedGraph& g) {
  return g.node_count() <= 1 || connected_components(g).community_count() == 1;
}

namespace {

void check_cover(const WeightedGraph& g, const Partition& p) {
  if (p.node_count() != g.node_count()) {
    fail(ErrorCode::universe_mismatch, "partition covers " + std::to_string(p.node_count()) +
                                           " nodes but the graph has " +
                                           std::to_string(g.node_count()));
  }
}

}  // namespace

CutSet crossing_edges(const WeightedGraph& g, const Partition& p) {
  check_cover(g, p);
  std::vector<EdgeId> ids;
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (p.community_of(edges[i].u) != p.community_of(edges[i].v)) ids.push_back(static_cast<EdgeId>(i));
  }
  return CutSet::from_edges(g, std::move(ids));
}

double crossing_weight(const WeightedGraph& g, const Partition& p) {
  check_cover(g, p);
  double sum = 0.0;
  for (const Edge& e : g.edges()) {
    if (p.community_of(e.u) != p.community_of(e.v)) sum += e.weight;
  }
  return sum;
}

double k_way_cut_sum(const WeightedGraph& g, const Partition& p) { return 2.0 * crossing_weight(g, p); }

}  // namespace termcut
