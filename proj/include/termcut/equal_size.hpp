#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "termcut/graph.hpp"
#include "termcut/rational.hpp"

namespace termcut {

/**
 * Complete graph over the nodes of `base` where every pair weighs
 * w(u,v) + w*, w* being the largest edge weight of `base`. Holds a
 * reference to `base`.
 */
class ShiftedCompleteGraph {
 public:
  /// Throws invalid_argument for a graph without edges.
  explicit ShiftedCompleteGraph(const WeightedGraph& base);

  const WeightedGraph& base() const noexcept { return *base_; }
  std::size_t node_count() const noexcept { return base_->node_count(); }
  double shift() const noexcept { return w_star_; }

  /// w'(u,v); 0 when u == v.
  double weight(NodeId u, NodeId v) const;

  /// Exhaustive O(n^3) check of w'(u,v) <= w'(u,x) + w'(x,v).
  bool satisfies_triangle_inequality() const;

  /// Undoubled crossing weight of p on the completed, shifted graph.
  double cut_weight(const Partition& p) const;

 private:
  const WeightedGraph* base_;
  double w_star_ = 0.0;
};

/// Assignment of each non-terminal to one terminal.
struct StarAssignment {
  NodeSet terminals;          // v_1..v_k in the order given to the solver
  NodeSet others;             // non-terminals ascending
  std::vector<int> owner;     // owner[j] indexes terminals; -1 = unassigned
  std::vector<int> capacity;  // row sums
  double objective = 0.0;
};

/**
 * Exact minimum-cost assignment of the non-terminals to terminals with
 * cost(i, j) = (n/k) * sum over r != i of w'(v_r, a_j), each terminal
 * receiving n/k - 1 nodes. When k does not divide n this throws size_error
 * unless allow_near_equal is set; then the first n mod k terminals take
 * ceil(n/k) - 1 nodes and the rest floor(n/k) - 1.
 */
StarAssignment min_star_solve(const ShiftedCompleteGraph& sg, const NodeSet& terminals,
                              bool allow_near_equal = false);

/// S_i = {v_i} plus the nodes assigned to v_i.
Partition assignment_to_partition(const StarAssignment& x);

/// Crossing pairs of any equal k-partition of K_n: n(n - n/k)/2.
std::uint64_t equal_cut_edge_count(std::uint64_t n, std::uint64_t k);

/// (n/k)^k / C(n, k): chance a uniform k-subset hits every part of a fixed equal partition once.
Rational sample_probability(std::uint64_t n, std::uint64_t k);

/// Uniform k-subset of 0..n-1 in sampling order.
NodeSet sample_terminals(std::size_t n, int k, std::uint64_t seed);

struct EqualConfig {
  int k = 2;
  std::uint64_t iterations = 100;
  std::optional<double> target;  // stop once a cut weight <= target is seen
  std::uint64_t seed = 0;
  bool allow_near_equal = false;
  std::size_t jobs = 1;
};

struct EqualResult {
  Partition partition;
  double cut_weight = 0.0;  // on the original graph
  NodeSet terminals;
  std::uint64_t iteration = 0;       // index of the winning sample
  std::uint64_t iterations_run = 0;  // samples examined
  bool near_equal = false;
  bool target_reached = false;
};

/**
 * Samples terminal sets, solves each min-star assignment and keeps the
 * partition with the smallest cut weight on `g` (ties: earliest sample).
 */
EqualResult detect_equal(const WeightedGraph& g, const EqualConfig& cfg);

}  // namespace termcut
