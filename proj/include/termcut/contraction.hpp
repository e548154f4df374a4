#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "termcut/graph.hpp"
#include "termcut/random.hpp"
#include "termcut/rational.hpp"

namespace termcut {

/**
 * Supernodes of a graph under repeated merging.
 *
 * Membership is a disjoint-set forest; each active supernode keeps summed
 * weights to the other supernodes it touches. Merging drops the edges
 * between the two merged supernodes.
 */
class ContractionState {
 public:
  explicit ContractionState(const WeightedGraph& g);

  std::size_t active() const noexcept { return active_.size(); }
  /// Representatives of the active supernodes (unordered).
  const std::vector<NodeId>& active_nodes() const noexcept { return active_; }

  NodeId find(NodeId u);
  /// Merges two distinct active supernodes given by representatives.
  void merge(NodeId a, NodeId b);

  /// Summed original weight between supernodes of a and b; 0 when equal.
  double inter_weight(NodeId a, NodeId b);
  const std::unordered_map<NodeId, double>& inter_edges(NodeId rep) const;

  Partition partition();

 private:
  std::vector<NodeId> parent_;
  std::vector<std::size_t> slot_;  // position of a representative in active_
  std::vector<NodeId> active_;
  std::vector<std::unordered_map<NodeId, double>> adj_;
};

enum class PairSelection {
  uniform,        // any two active supernodes, adjacent or not
  edge_weighted,  // an inter-supernode edge with probability proportional to its weight
};

/// Merges down to k supernodes (n-k merges). Pure function of (g, k, seed, sel).
Partition single_run(const WeightedGraph& g, int k, std::uint64_t seed,
                     PairSelection sel = PairSelection::uniform);

/// k / (C(n,k-1) * C(n-1,k-1)), exactly.
Rational success_bound(std::int64_t n, std::int64_t k);

struct RunBudget {
  double p_bar = 1.0;
  double c = 2.0;
  std::uint64_t runs = 1;
  double guarantee = 0.0;  // 1 - p_bar^(c/2)
};

/// runs = ceil(-c ln(p_bar) / (2 p_bar)), at least 1.
RunBudget run_budget(double p_bar, double c);
RunBudget fixed_budget(std::uint64_t runs);
/// run_budget(success_bound(n, k), c), logging how large the run count gets.
RunBudget default_budget(std::size_t n, int k, double c = 2.0);

class FeasibilityPredicate {
 public:
  using Test = std::function<bool(const Partition&)>;

  FeasibilityPredicate(std::string name, Test test) : name_(std::move(name)), test_(std::move(test)) {}

  static FeasibilityPredicate always();
  /// The given nodes must land in pairwise distinct communities.
  static FeasibilityPredicate designated_separation(const WeightedGraph& g, NodeSet nodes);
  /// Every community has at least `threshold` nodes.
  static FeasibilityPredicate min_size(std::size_t threshold);

  const std::string& name() const noexcept { return name_; }
  bool operator()(const Partition& p) const { return test_(p); }

 private:
  std::string name_;
  Test test_;
};

struct CustomizedResult {
  Partition partition;
  double cut_weight = 0.0;       // undirected crossing weight
  std::uint64_t run = 0;         // index of the winning run
  std::uint64_t runs = 0;
  std::uint64_t feasible_runs = 0;
};

struct ContractionConfig {
  int k = 2;
  std::uint64_t seed = 0;
  PairSelection selection = PairSelection::uniform;
  std::size_t jobs = 1;
};

/**
 * Runs budget.runs independent merges with seeds derive_seed(seed, i) and
 * returns the feasible partition of minimum cut weight (ties: lowest run
 * index), or nullopt when no run satisfies the predicate.
 */
std::optional<CustomizedResult> detect_customized(const WeightedGraph& g, const ContractionConfig& cfg,
                                                  const FeasibilityPredicate& pred, const RunBudget& budget);

}  // namespace termcut
