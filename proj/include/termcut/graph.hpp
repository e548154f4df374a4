#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace termcut {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using NodeSet = std::vector<NodeId>;

/// Undirected edge, stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;
};

struct Neighbor {
  NodeId node = 0;
  double weight = 0.0;
  EdgeId edge = 0;
};

/**
 * Immutable undirected graph with nonnegative similarity weights.
 *
 * Nodes are dense ids 0..n-1. Each undirected edge has an id into edges();
 * adjacency lists are sorted by neighbor id and reference that id, so cut
 * sets can be stored as plain edge-id vectors. Safe to share across threads.
 */
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Throws on self-loops, negative weights, out-of-range ids or repeated pairs.
  static WeightedGraph from_edges(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  bool contains(NodeId u) const noexcept {
    return u >= 0 && static_cast<std::size_t>(u) < node_count();
  }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }

  std::span<const Neighbor> neighbors(NodeId u) const;

  /// Weighted degree d(u); throws invalid_node for unknown ids.
  double degree(NodeId u) const;

  /// Sum of all edge weights (each undirected edge once).
  double total_weight() const noexcept { return total_weight_; }
  double max_weight() const noexcept { return max_weight_; }

  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;

  /// Edge weight, 0 for absent pairs.
  double weight(NodeId u, NodeId v) const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<double> degrees_;
  double total_weight_ = 0.0;
  double max_weight_ = 0.0;
};

/// Accumulates edges in any order; repeated pairs are summed.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t node_count = 0) : node_count_(node_count) {}

  void ensure_nodes(std::size_t count);
  /// Adds w to pair {u, v}. Returns true when the pair was already present.
  bool add(NodeId u, NodeId v, double w = 1.0);

  std::size_t node_count() const noexcept { return node_count_; }
  WeightedGraph build() const;

 private:
  std::size_t node_count_;
  std::map<std::pair<NodeId, NodeId>, double> weights_;
};

/**
 * Assignment of every node to one of k communities.
 *
 * Always canonical: community indices are ordered by their smallest member,
 * so two partitions compare equal iff they group nodes identically.
 */
class Partition {
 public:
  Partition() = default;

  /// Arbitrary integer labels; relabelled canonically.
  static Partition from_labels(std::span<const std::int64_t> labels);
  static Partition from_labels(std::span<const int> labels);
  static Partition from_groups(std::size_t node_count, std::span<const NodeSet> groups);
  static Partition single(std::size_t node_count);
  static Partition singletons(std::size_t node_count);

  std::size_t node_count() const noexcept { return labels_.size(); }
  int community_count() const noexcept { return k_; }
  int community_of(NodeId u) const { return labels_.at(static_cast<std::size_t>(u)); }
  std::span<const int> labels() const noexcept { return labels_; }

  std::vector<NodeSet> communities() const;
  std::vector<std::size_t> sizes() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

/// Set of undirected edges of one graph with their total weight.
class CutSet {
 public:
  CutSet() = default;

  /// Sorts and de-duplicates the ids; throws invalid_argument for unknown edges.
  static CutSet from_edges(const WeightedGraph& g, std::vector<EdgeId> edges);
  static CutSet unite(const WeightedGraph& g, std::span<const CutSet> parts);

  std::span<const EdgeId> edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  double total_weight() const noexcept { return total_weight_; }
  bool contains(EdgeId e) const;

  friend bool operator==(const CutSet&, const CutSet&) = default;

 private:
  std::vector<EdgeId> edges_;
  double total_weight_ = 0.0;
};

/// The l-local area V_u^l: center plus its l nearest nodes by hop distance.
struct LocalArea {
  NodeId center = 0;
  int radius = 0;
  NodeSet members;  // sorted ascending, contains center
};

double degree(const WeightedGraph& g, NodeId u);

/// Breadth-first hop distances from u; unreachable nodes are absent.
std::map<NodeId, int> shortest_hop_distances(const WeightedGraph& g, NodeId u);

/// Nodes at equal distance are admitted by higher weighted degree, then smaller id.
LocalArea local_area(const WeightedGraph& g, NodeId u, int l);

/// Cen(u) = 1 / (sum of hop distances from u to V_u^h).
double centrality(const WeightedGraph& g, NodeId u, int h);

Partition connected_components(const WeightedGraph& g);
Partition components_after_removal(const WeightedGraph& g, const CutSet& cut);
bool is_connected(const WeightedGraph& g);

/// Edges whose endpoints lie in different communities.
CutSet crossing_edges(const WeightedGraph& g, const Partition& p);

/// Total weight of crossing edges, each counted once.
double crossing_weight(const WeightedGraph& g, const Partition& p);

/// Sum over communities of cut(S_i, complement), i.e. twice crossing_weight.
double k_way_cut_sum(const WeightedGraph& g, const Partition& p);

}  // namespace termcut
