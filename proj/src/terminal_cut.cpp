#include "termcut/terminal_cut.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "termcut/error.hpp"
#include "termcut/maxflow.hpp"

namespace termcut {

namespace {

bool sorted_sets_intersect(const NodeSet& a, const NodeSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

NodeSet normalized(const WeightedGraph& g, NodeSet group) {
  if (group.empty()) fail(ErrorCode::invalid_terminals, "terminal group is empty");
  for (NodeId u : group) {
    if (!g.contains(u)) fail(ErrorCode::invalid_node, "terminal " + std::to_string(u) + " not in graph");
  }
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  return group;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

TerminalSpec TerminalSpec::make(const WeightedGraph& g, std::vector<NodeSet> groups) {
  if (groups.size() < 2) fail(ErrorCode::invalid_terminals, "a terminal spec needs k >= 2 groups");
  for (auto& group : groups) group = normalized(g, std::move(group));
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      if (sorted_sets_intersect(groups[i], groups[j])) {
        fail(ErrorCode::invalid_terminals,
             "terminal groups " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
  TerminalSpec spec;
  spec.groups_ = std::move(groups);
  return spec;
}

TerminalSpec TerminalSpec::singletons(const WeightedGraph& g, std::span<const NodeId> terminals) {
  std::vector<NodeSet> groups;
  groups.reserve(terminals.size());
  for (NodeId t : terminals) groups.push_back({t});
  return make(g, std::move(groups));
}

CutSet isolating_kcut(const WeightedGraph& g, const TerminalSpec& spec) {
  std::vector<CutSet> parts;
  parts.reserve(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    NodeSet others;
    for (std::size_t j = 0; j < spec.size(); ++j) {
      if (j != i) others.insert(others.end(), spec.group(j).begin(), spec.group(j).end());
    }
    parts.push_back(min_cut_st(g, spec.group(i), others));
  }
  return CutSet::unite(g, parts);
}

std::optional<CutSet> pairwise_kcut(const WeightedGraph& g, std::span<const NodeSet> groups) {
  if (groups.size() < 2) fail(ErrorCode::invalid_terminals, "pairwise cut needs k >= 2 groups");
  std::vector<NodeSet> sets;
  sets.reserve(groups.size());
  for (const NodeSet& group : groups) sets.push_back(normalized(g, group));

  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (sorted_sets_intersect(sets[i], sets[j])) return std::nullopt;
    }
  }
  std::vector<CutSet> parts;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) parts.push_back(min_cut_st(g, sets[i], sets[j]));
  }
  return CutSet::unite(g, parts);
}

RepairedCut repair_to_k_parts(const WeightedGraph& g, const CutSet& cut, int k) {
  if (k < 2) fail(ErrorCode::invalid_argument, "repair needs k >= 2");
  const Partition initial = components_after_removal(g, cut);
  const int found = initial.community_count();
  if (found < k) {
    fail(ErrorCode::cannot_reach_k, "cut leaves " + std::to_string(found) + " components, fewer than k=" +
                                        std::to_string(k));
  }

  DisjointSets sets(g.node_count());
  for (const Edge& e : g.edges()) {
    if (initial.community_of(e.u) == initial.community_of(e.v)) {
      sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
    }
  }

  std::vector<EdgeId> order(cut.edges().begin(), cut.edges().end());
  std::stable_sort(order.begin(), order.end(),
                   [&g](EdgeId a, EdgeId b) { return g.edge(a).weight > g.edge(b).weight; });
  int components = found;
  for (EdgeId id : order) {
    if (components <= k) break;
    const Edge& e = g.edge(id);
    if (sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) --components;
  }

  std::vector<int> labels(g.node_count());
  for (std::size_t u = 0; u < labels.size(); ++u) labels[u] = static_cast<int>(sets.find(u));
  Partition partition = Partition::from_labels(std::span<const int>(labels));

  std::vector<EdgeId> remaining;
  for (EdgeId id : cut.edges()) {
    const Edge& e = g.edge(id);
    if (partition.community_of(e.u) != partition.community_of(e.v)) remaining.push_back(id);
  }
  return {CutSet::from_edges(g, std::move(remaining)), std::move(partition)};
}

}  // namespace termcut
