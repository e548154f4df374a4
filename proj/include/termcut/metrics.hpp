#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "termcut/graph.hpp"
#include "termcut/rational.hpp"

namespace termcut {

// Lower is better for every metric. phi_eq1 is the min-volume conductance
// c_S / min(Vol(S), Vol(V \ S)); the others follow the c_S / m_S forms.
enum class Metric {
  conductance,
  expansion,
  cut_ratio,
  normalized_cut,
  avg_odf,
  internal_density,
  phi_eq1,
};

inline constexpr std::size_t kMetricCount = 7;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::conductance, Metric::expansion,        Metric::cut_ratio, Metric::normalized_cut,
    Metric::avg_odf,     Metric::internal_density, Metric::phi_eq1,
};

std::string_view metric_name(Metric m);

template <class Scalar>
struct BasicCommunityStats {
  std::size_t nodes = 0;     // n_S
  Scalar internal_weight{};  // m_S
  Scalar boundary_weight{};  // c_S
  Scalar volume{};           // sum of degrees, = 2 m_S + c_S
};

/// Six scores plus phi_eq1; nullopt marks an undefined cell.
template <class Scalar>
struct BasicMetricScores {
  std::array<std::optional<Scalar>, kMetricCount> values;

  const std::optional<Scalar>& operator[](Metric m) const { return values[static_cast<std::size_t>(m)]; }
  std::optional<Scalar>& operator[](Metric m) { return values[static_cast<std::size_t>(m)]; }
};

using CommunityStats = BasicCommunityStats<double>;
using MetricScores = BasicMetricScores<double>;
using ExactCommunityStats = BasicCommunityStats<Rational>;
using ExactMetricScores = BasicMetricScores<Rational>;

/// Throws invalid_argument for an empty set, invalid_node for unknown ids.
CommunityStats community_stats(const WeightedGraph& g, std::span<const NodeId> community);

/// Undefined when either side has zero volume.
std::optional<double> conductance_eq1(const WeightedGraph& g, std::span<const NodeId> community);

MetricScores metric_suite(const WeightedGraph& g, std::span<const NodeId> community);

/// Same formulas evaluated in exact rational arithmetic (weights converted exactly).
ExactMetricScores exact_metric_suite(const WeightedGraph& g, std::span<const NodeId> community);

struct CommunityRow {
  int community = 0;
  CommunityStats stats;
  MetricScores scores;
};

/// Aggregate of one metric over a partition; undefined cells are skipped and counted.
struct MetricSummary {
  std::optional<double> mean;
  std::optional<double> max;
  std::size_t defined = 0;
  std::size_t undefined = 0;
};

using SummaryTable = std::array<MetricSummary, kMetricCount>;

struct TruthComparison {
  std::size_t misclassified = 0;
  std::vector<CommunityRow> rows;
  SummaryTable summary;
};

struct QualityReport {
  std::vector<CommunityRow> rows;
  SummaryTable summary;
  std::optional<TruthComparison> truth;

  const MetricSummary& operator[](Metric m) const { return summary[static_cast<std::size_t>(m)]; }
};

std::vector<CommunityRow> community_rows(const WeightedGraph& g, const Partition& p);
SummaryTable summarize(std::span<const CommunityRow> rows);

QualityReport evaluate(const WeightedGraph& g, const Partition& p);
QualityReport evaluate(const WeightedGraph& g, const Partition& p, const Partition& truth);

/// Mean or max of per-community c_S / (2 m_S + c_S), the TSECD selection score.
double mean_conductance(const WeightedGraph& g, const Partition& p);
double max_conductance(const WeightedGraph& g, const Partition& p);

/**
 * Fewest nodes whose labels disagree under the best one-to-one mapping of
 * predicted to true communities (maximum-weight matching on the overlap
 * matrix). Partitions with different k are padded with empty communities.
 */
std::size_t misclassification(const Partition& predicted, const Partition& truth);

}  // namespace termcut
