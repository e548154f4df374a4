#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termcut/graph.hpp"
#include "termcut/metrics.hpp"

namespace termcut {

enum class PoolRule { degree, centrality };
enum class CutRule { pairwise, isolating };
enum class AggregateRule { mean, max };
/// Candidates whose local areas intersect are skipped, or each pair's shared
/// nodes are dropped from both areas (centers kept) before cutting.
enum class OverlapRule { skip, trim };

/// Parameter presets (p, l) as functions of (n, k).
enum class Setting { one = 1, two = 2, three = 3, four = 4 };

struct TsecdConfig {
  int k = 2;
  int pool_size = 20;  // p
  int radius = 0;      // l
  PoolRule pool_rule = PoolRule::degree;
  int centrality_hops = 1;  // h, used by PoolRule::centrality
  CutRule cut_rule = CutRule::pairwise;
  AggregateRule aggregate = AggregateRule::mean;
  OverlapRule overlap = OverlapRule::trim;
  std::size_t jobs = 1;  // 0 = hardware concurrency; never changes the result

  /// Throws invalid_argument when k < 2, p < k, p > n or l < 0.
  void validate(std::size_t node_count) const;
};

std::string setting_name(Setting s);

/// Setting 1: p=10k, l=n/k. 2: p=10k, l=n/(8k). 3: p=2k, l=n/(2k). 4: p=10k, l=n/(2k).
/// The pool is capped at n so small graphs stay valid.
TsecdConfig preset_config(Setting s, std::size_t node_count, int k, TsecdConfig base = {});

/// Top-p nodes by degree or centrality, ties by smaller id.
NodeSet select_pool(const WeightedGraph& g, const TsecdConfig& cfg);

struct TsecdDiagnostics {
  std::uint64_t candidates = 0;  // C(p, k)
  std::uint64_t skipped = 0;     // some pair of local areas intersects
  std::uint64_t trimmed = 0;     // intersecting but cut after trimming
  std::uint64_t discarded = 0;   // fewer than k parts after repair
  std::uint64_t evaluated = 0;
};

struct TsecdResult {
  Partition partition;
  CutSet cut;
  double score = 0.0;  // aggregate conductance used for selection
  NodeSet terminals;   // winning candidate, ascending
  QualityReport report;
  TsecdDiagnostics diagnostics;
};

/**
 * Terminal-set-enhanced detection over every k-subset of the pool.
 *
 * Each candidate's local areas are separated by pairwise (or isolating)
 * minimum cuts, the cut is repaired to exactly k parts, and the partition
 * with the lowest aggregate conductance wins (ties: lexicographically
 * smallest terminal set). Throws disconnected_graph for disconnected input
 * and no_feasible_candidate when every candidate is skipped or discarded.
 */
TsecdResult detect(const WeightedGraph& g, const TsecdConfig& cfg);

struct SweepRow {
  std::string label;  // "setting1".."setting4" or "truth"
  std::optional<TsecdConfig> config;
  std::optional<Partition> partition;
  std::optional<QualityReport> report;
  std::optional<std::size_t> misclassified;
  std::string failure;  // set when no candidate survived for this setting
};

/// One row per preset plus a trailing truth row when `truth` is given.
/// Presets with no feasible candidate yield a row with `failure` set.
std::vector<SweepRow> detect_sweep(const WeightedGraph& g, std::span<const Setting> presets, int k,
                                   const Partition* truth = nullptr, const TsecdConfig& base = {});

}  // namespace termcut
