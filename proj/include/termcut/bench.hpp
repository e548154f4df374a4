#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termcut/graph.hpp"

namespace termcut {

/// Dense node id -> id used in files.
struct IdMap {
  std::vector<std::int64_t> original;

  static IdMap identity(std::size_t n, std::int64_t first = 0);
  std::optional<NodeId> find(std::int64_t id) const;
  std::int64_t at(NodeId u) const { return original.at(static_cast<std::size_t>(u)); }
};

struct LoadedGraph {
  WeightedGraph graph;
  IdMap ids;
  std::vector<std::string> warnings;
};

struct GroundTruth {
  Partition partition;
  std::string label;
};

struct Benchmark {
  LoadedGraph network;
  GroundTruth truth;
};

/// Planted-partition (Girvan-Newman style) generator parameters.
struct PlantedConfig {
  int communities = 4;
  int community_size = 42;
  double z_in = 14.0;  // expected intra-community degree
  double z_out = 2.0;  // expected inter-community degree
  std::uint64_t seed = 0;

  double p_in() const;
  double p_out() const;
  /// Throws invalid_argument when either probability leaves [0, 1].
  void validate() const;
};

/// Unit-weight graph; node ids in files are 1-based. Pure function of cfg.
Benchmark generate_planted(const PlantedConfig& cfg);

/**
 * Reads `u v [w]` lines; `#` starts a comment and a lone `u` declares an
 * isolated node. Ids are remapped densely in ascending order. A pair listed
 * in both directions is one edge (LFR convention); repeats in the same
 * direction are summed. Both cases are reported in `warnings` when the
 * listings disagree. Throws parse_error with the line number.
 */
LoadedGraph parse_edge_list(std::istream& in, std::string_view source = "<input>");
LoadedGraph load_graph(const std::filesystem::path& path);

/// Inverse of parse_edge_list; round-trips to an identical graph.
void write_edge_list(std::ostream& out, const WeightedGraph& g, const IdMap& ids);

/// `node community` per line; extra columns (overlapping memberships) are ignored with a warning.
GroundTruth parse_ground_truth(std::istream& in, const IdMap& ids, std::string_view source = "<input>");
GroundTruth load_ground_truth(const std::filesystem::path& path, const IdMap& ids);

/// Writes `node community` lines with ids from `ids`.
void write_partition(std::ostream& out, const Partition& p, const IdMap& ids);

/// Zachary karate club (34 nodes, 78 edges, ids 1..34) with the 16/18 faction split.
Benchmark karate_fixture();

}  // namespace termcut
