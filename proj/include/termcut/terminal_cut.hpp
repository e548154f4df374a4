#pragma once

#include <optional>
#include <span>
#include <vector>

#include "termcut/graph.hpp"

namespace termcut {

/// k >= 2 pairwise-disjoint, nonempty vertex groups V_1..V_k.
class TerminalSpec {
 public:
  /// Throws invalid_terminals when the groups violate the invariants.
  static TerminalSpec make(const WeightedGraph& g, std::vector<NodeSet> groups);
  /// One singleton group per node.
  static TerminalSpec singletons(const WeightedGraph& g, std::span<const NodeId> terminals);

  std::size_t size() const noexcept { return groups_.size(); }
  std::span<const NodeSet> groups() const noexcept { return groups_; }
  const NodeSet& group(std::size_t i) const { return groups_.at(i); }

 private:
  std::vector<NodeSet> groups_;
};

/// Union over i of the minimum cut isolating V_i from the other groups.
/// Weight is at most twice the optimal k-terminal cut.
CutSet isolating_kcut(const WeightedGraph& g, const TerminalSpec& spec);

/// Union of M2TC(V_i, V_j) over all group pairs. Returns nullopt (skip) when
/// any two groups intersect; throws for empty groups or k < 2.
std::optional<CutSet> pairwise_kcut(const WeightedGraph& g, std::span<const NodeSet> groups);

struct RepairedCut {
  CutSet cut;
  Partition partition;
};

/**
 * Gives edges of `cut` back to the graph until exactly k components remain.
 *
 * Edges are restored heaviest first (ties by edge id) whenever they join two
 * components and more than k remain. The returned cut is the set of input
 * edges still crossing the final partition, so its weight never exceeds the
 * input weight. Throws cannot_reach_k when removal leaves fewer than k parts.
 */
RepairedCut repair_to_k_parts(const WeightedGraph& g, const CutSet& cut, int k);

}  // namespace termcut
