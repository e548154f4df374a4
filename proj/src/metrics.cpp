#include "termcut/metrics.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "termcut/error.hpp"

namespace termcut {

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::conductance: return "conductance";
    case Metric::expansion: return "expansion";
    case Metric::cut_ratio: return "cut_ratio";
    case Metric::normalized_cut: return "normalized_cut";
    case Metric::avg_odf: return "avg_odf";
    case Metric::internal_density: return "internal_density";
    case Metric::phi_eq1: return "phi_eq1";
  }
  return "unknown";
}

namespace {

template <class Scalar>
Scalar from_weight(double w) {
  return Scalar(w);
}

template <class Scalar>
struct Membership {
  BasicCommunityStats<Scalar> stats;
  Scalar odf_sum{};
  bool odf_defined = true;
};

template <class Scalar>
Membership<Scalar> accumulate(const WeightedGraph& g, std::span<const NodeId> community) {
  if (community.empty()) fail(ErrorCode::invalid_argument, "community must be nonempty");
  std::vector<char> inside(g.node_count(), 0);
  for (NodeId u : community) {
    if (!g.contains(u)) fail(ErrorCode::invalid_node, "node " + std::to_string(u) + " not in graph");
    inside[static_cast<std::size_t>(u)] = 1;
  }

  Membership<Scalar> acc;
  Scalar internal_twice{};
  for (std::size_t u = 0; u < inside.size(); ++u) {
    if (!inside[u]) continue;
    ++acc.stats.nodes;
    Scalar out{};
    Scalar deg{};
    for (const Neighbor& nb : g.neighbors(static_cast<NodeId>(u))) {
      const Scalar w = from_weight<Scalar>(nb.weight);
      deg += w;
      if (inside[static_cast<std::size_t>(nb.node)]) {
        internal_twice += w;
      } else {
        out += w;
      }
    }
    acc.stats.boundary_weight += out;
    acc.stats.volume += deg;
    if (deg == Scalar(0)) {
      acc.odf_defined = false;
    } else {
      acc.odf_sum += out / deg;
    }
  }
  acc.stats.internal_weight = internal_twice / Scalar(2);
  return acc;
}

// A community without boundary scores 0 on every boundary-fraction metric,
// even where the denominator vanishes (S = V).
template <class Scalar>
BasicMetricScores<Scalar> scores_from(const Membership<Scalar>& acc, std::size_t n, const Scalar& total_edge_weight) {
  const auto& st = acc.stats;
  const Scalar zero(0);
  const Scalar c = st.boundary_weight;
  const Scalar ms = st.internal_weight;
  const Scalar ns(static_cast<long long>(st.nodes));
  const Scalar rest(static_cast<long long>(n - st.nodes));

  BasicMetricScores<Scalar> out;
  if (c == zero) {
    out[Metric::conductance] = zero;
    out[Metric::expansion] = zero;
    out[Metric::cut_ratio] = zero;
    out[Metric::normalized_cut] = zero;
  } else {
    const Scalar inner = Scalar(2) * ms + c;
    // Vol(V \ S); the second term mirrors the first for the complement.
    const Scalar outer = Scalar(2) * (total_edge_weight - ms) - c;
    out[Metric::conductance] = c / inner;
    out[Metric::expansion] = c / ns;
    out[Metric::cut_ratio] = c / (ns * rest);
    out[Metric::normalized_cut] = c / inner + c / outer;
  }
  if (acc.odf_defined) out[Metric::avg_odf] = acc.odf_sum / ns;
  if (st.nodes >= 2) {
    out[Metric::internal_density] = Scalar(1) - Scalar(2) * ms / (ns * (ns - Scalar(1)));
  }
  const Scalar vol_rest = Scalar(2) * total_edge_weight - st.volume;
  const Scalar min_vol = std::min(st.volume, vol_rest);
  if (min_vol > zero) out[Metric::phi_eq1] = c / min_vol;
  return out;
}

template <class Scalar>
Scalar total_weight_as(const WeightedGraph& g) {
  Scalar sum{};
  for (const Edge& e : g.edges()) sum += from_weight<Scalar>(e.weight);
  return sum;
}

}  // namespace

CommunityStats community_stats(const WeightedGraph& g, std::span<const NodeId> community) {
  return accumulate<double>(g, community).stats;
}

std::optional<double> conductance_eq1(const WeightedGraph& g, std::span<const NodeId> community) {
  return metric_suite(g, community)[Metric::phi_eq1];
}

MetricScores metric_suite(const WeightedGraph& g, std::span<const NodeId> community) {
  return scores_from(accumulate<double>(g, community), g.node_count(), g.total_weight());
}

ExactMetricScores exact_metric_suite(const WeightedGraph& g, std::span<const NodeId> community) {
  return scores_from(accumulate<Rational>(g, community), g.node_count(), total_weight_as<Rational>(g));
}

std::vector<CommunityRow> community_rows(const WeightedGraph& g, const Partition& p) {
  if (p.node_count() != g.node_count()) {
    fail(ErrorCode::universe_mismatch, "partition covers " + std::to_string(p.node_count()) +
                                           " nodes, graph has " + std::to_string(g.node_count()));
  }
  std::vector<CommunityRow> rows;
  const auto groups = p.communities();
  rows.reserve(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto acc = accumulate<double>(g, groups[i]);
    rows.push_back({static_cast<int>(i), acc.stats, scores_from(acc, g.node_count(), g.total_weight())});
  }
  return rows;
}

SummaryTable summarize(std::span<const CommunityRow> rows) {
  SummaryTable table;
  for (Metric m : kAllMetrics) {
    MetricSummary& s = table[static_cast<std::size_t>(m)];
    double sum = 0.0;
    for (const CommunityRow& row : rows) {
      const auto& v = row.scores[m];
      if (!v) {
        ++s.undefined;
        continue;
      }
      ++s.defined;
      sum += *v;
      s.max = s.max ? std::max(*s.max, *v) : *v;
    }
    if (s.defined > 0) s.mean = sum / static_cast<double>(s.defined);
  }
  return table;
}

QualityReport evaluate(const WeightedGraph& g, const Partition& p) {
  QualityReport report;
  report.rows = community_rows(g, p);
  report.summary = summarize(report.rows);
  return report;
}

QualityReport evaluate(const WeightedGraph& g, const Partition& p, const Partition& truth) {
  QualityReport report = evaluate(g, p);
  TruthComparison cmp;
  cmp.misclassified = misclassification(p, truth);
  cmp.rows = community_rows(g, truth);
  cmp.summary = summarize(cmp.rows);
  report.truth = std::move(cmp);
  return report;
}

namespace {

// Per-community c_S and 2 m_S + c_S in one pass over the edges.
std::vector<std::pair<double, double>> boundary_and_volume(const WeightedGraph& g, const Partition& p) {
  if (p.node_count() != g.node_count()) {
    fail(ErrorCode::universe_mismatch, "partition does not match graph size");
  }
  std::vector<std::pair<double, double>> acc(static_cast<std::size_t>(p.community_count()), {0.0, 0.0});
  for (const Edge& e : g.edges()) {
    const auto a = static_cast<std::size_t>(p.community_of(e.u));
    const auto b = static_cast<std::size_t>(p.community_of(e.v));
    acc[a].second += e.weight;
    acc[b].second += e.weight;
    if (a != b) {
      acc[a].first += e.weight;
      acc[b].first += e.weight;
    }
  }
  return acc;
}

double conductance_of(const std::pair<double, double>& cv) {
  return cv.first == 0.0 ? 0.0 : cv.first / cv.second;
}

}  // namespace

double mean_conductance(const WeightedGraph& g, const Partition& p) {
  const auto acc = boundary_and_volume(g, p);
  double sum = 0.0;
  for (const auto& cv : acc) sum += conductance_of(cv);
  return acc.empty() ? 0.0 : sum / static_cast<double>(acc.size());
}

double max_conductance(const WeightedGraph& g, const Partition& p) {
  double best = 0.0;
  for (const auto& cv : boundary_and_volume(g, p)) best = std::max(best, conductance_of(cv));
  return best;
}

std::size_t misclassification(const Partition& predicted, const Partition& truth) {
  if (predicted.node_count() != truth.node_count()) {
    fail(ErrorCode::universe_mismatch, "partitions cover " + std::to_string(predicted.node_count()) +
                                           " and " + std::to_string(truth.node_count()) + " nodes");
  }
  const std::size_t size =
      static_cast<std::size_t>(std::max(predicted.community_count(), truth.community_count()));
  if (size == 0) return 0;

  std::vector<std::vector<long long>> overlap(size, std::vector<long long>(size, 0));
  for (std::size_t u = 0; u < predicted.node_count(); ++u) {
    const auto node = static_cast<NodeId>(u);
    ++overlap[static_cast<std::size_t>(predicted.community_of(node))]
             [static_cast<std::size_t>(truth.community_of(node))];
  }

  // Hungarian method (potentials form) minimizing -overlap; 1-based internally.
  constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> row_pot(size + 1, 0), col_pot(size + 1, 0), min_slack(size + 1);
  std::vector<std::size_t> match(size + 1, 0), way(size + 1, 0);
  std::vector<char> used(size + 1);
  for (std::size_t i = 1; i <= size; ++i) {
    match[0] = i;
    std::size_t col = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col] = 1;
      const std::size_t row = match[col];
      long long delta = kInf;
      std::size_t next = 0;
      for (std::size_t j = 1; j <= size; ++j) {
        if (used[j]) continue;
        const long long cur = -overlap[row - 1][j - 1] - row_pot[row] - col_pot[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = col;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          next = j;
        }
      }
      for (std::size_t j = 0; j <= size; ++j) {
        if (used[j]) {
          row_pot[match[j]] += delta;
          col_pot[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      col = next;
    } while (match[col] != 0);
    do {
      const std::size_t prev = way[col];
      match[col] = match[prev];
      col = prev;
    } while (col != 0);
  }

  long long agreed = 0;
  for (std::size_t j = 1; j <= size; ++j) agreed += overlap[match[j] - 1][j - 1];
  return predicted.node_count() - static_cast<std::size_t>(agreed);
}

}  // namespace termcut
