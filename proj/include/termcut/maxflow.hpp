#pragma once

#include <span>
#include <vector>

#include "termcut/graph.hpp"

namespace termcut {

/// Outcome of one set-terminal s-t max-flow computation.
struct StCut {
  double flow_value = 0.0;
  CutSet cut;
  /// Nodes residual-reachable from the super-source after termination.
  std::vector<char> source_side;
};

/**
 * Minimum cut separating every node of S from every node of T.
 *
 * Each undirected edge becomes two opposite arcs of capacity w(u,v); S and T
 * are attached to a super-source / super-sink with capacity total_weight + 1.
 * Augmentation follows shortest paths (Edmonds-Karp), so it terminates on
 * real weights. Throws invalid_terminals for empty or overlapping sets.
 */
StCut solve_min_cut(const WeightedGraph& g, std::span<const NodeId> sources,
                    std::span<const NodeId> sinks);

CutSet min_cut_st(const WeightedGraph& g, std::span<const NodeId> sources,
                  std::span<const NodeId> sinks);

double max_flow_value(const WeightedGraph& g, std::span<const NodeId> sources,
                      std::span<const NodeId> sinks);

}  // namespace termcut
