#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "termcut/error.hpp"
#include "termcut/metrics.hpp"

using namespace termcut;

namespace {

Rational q(int a, int b) { return Rational(a) / b; }

}  // namespace

TEST(Metrics, TriangleHalfExact) {
  const auto g = fixture::two_triangles();
  const NodeSet s = {0, 1, 2};
  const auto st = community_stats(g, s);
  EXPECT_EQ(st.nodes, 3u);
  EXPECT_DOUBLE_EQ(st.internal_weight, 3.0);
  EXPECT_DOUBLE_EQ(st.boundary_weight, 1.0);
  EXPECT_DOUBLE_EQ(st.volume, 7.0);

  const auto x = exact_metric_suite(g, s);
  EXPECT_EQ(*x[Metric::conductance], q(1, 7));
  EXPECT_EQ(*x[Metric::expansion], q(1, 3));
  EXPECT_EQ(*x[Metric::cut_ratio], q(1, 9));
  EXPECT_EQ(*x[Metric::normalized_cut], q(2, 7));
  EXPECT_EQ(*x[Metric::avg_odf], q(1, 9));
  EXPECT_EQ(*x[Metric::internal_density], q(0, 1));
  EXPECT_EQ(*x[Metric::phi_eq1], q(1, 7));
  EXPECT_DOUBLE_EQ(*conductance_eq1(g, s), 1.0 / 7.0);
}

TEST(Metrics, WholeGraphHasNoBoundary) {
  const auto g = fixture::two_triangles();
  const NodeSet all = {0, 1, 2, 3, 4, 5};
  const auto st = community_stats(g, all);
  EXPECT_DOUBLE_EQ(st.boundary_weight, 0.0);
  EXPECT_DOUBLE_EQ(st.internal_weight, 7.0);
  const auto m = metric_suite(g, all);
  EXPECT_EQ(*m[Metric::conductance], 0.0);
  EXPECT_EQ(*m[Metric::expansion], 0.0);
  EXPECT_EQ(*m[Metric::cut_ratio], 0.0);
  EXPECT_EQ(*m[Metric::normalized_cut], 0.0);
  EXPECT_FALSE(conductance_eq1(g, all).has_value());
}

TEST(Metrics, LeafOfStar) {
  const std::vector<Edge> e = {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}};
  const auto g = WeightedGraph::from_edges(4, e);
  const NodeSet leaf = {3};
  const auto m = metric_suite(g, leaf);
  EXPECT_EQ(*m[Metric::conductance], 1.0);
  EXPECT_FALSE(m[Metric::internal_density].has_value());
  const auto st = community_stats(g, leaf);
  EXPECT_DOUBLE_EQ(st.internal_weight, 0.0);
  EXPECT_DOUBLE_EQ(st.boundary_weight, 1.0);
}

TEST(Metrics, UndefinedAverageOdf) {
  const std::vector<Edge> e = {{0, 1, 1}};
  const auto g = WeightedGraph::from_edges(3, e);
  const NodeSet s = {0, 2};
  EXPECT_FALSE(metric_suite(g, s)[Metric::avg_odf].has_value());
  EXPECT_THROW(community_stats(g, NodeSet{}), Error);
}

TEST(Metrics, EmptyComplementMarksPhiUndefinedInReports) {
  const auto g = fixture::two_triangles();
  const auto report = evaluate(g, Partition::single(6));
  EXPECT_EQ(report[Metric::phi_eq1].undefined, 1u);
  EXPECT_FALSE(report[Metric::phi_eq1].mean.has_value());
  EXPECT_EQ(*report[Metric::conductance].mean, 0.0);
}

TEST(Metrics, VolumeIdentityAndSymmetry) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = oracle::random_graph(rng, 9, 0.4, 3);
    std::vector<int> label(9);
    for (auto& l : label) l = static_cast<int>(rng() % 2);
    label[0] = 0;
    label[8] = 1;
    const auto p = Partition::from_labels(std::span<const int>(label));
    const auto comms = p.communities();
    for (const auto& s : comms) {
      const auto st = community_stats(g, s);
      EXPECT_NEAR(2 * st.internal_weight + st.boundary_weight, st.volume, 1e-9);
    }
    const auto a = exact_metric_suite(g, comms[0]);
    const auto b = exact_metric_suite(g, comms[1]);
    EXPECT_EQ(a[Metric::phi_eq1], b[Metric::phi_eq1]);
    EXPECT_EQ(a[Metric::normalized_cut], b[Metric::normalized_cut]);
  }
}

TEST(Metrics, NormalizedCutSymmetricForBisections) {
  const auto g = fixture::two_triangles();
  const auto a = exact_metric_suite(g, NodeSet{0, 1, 2});
  const auto b = exact_metric_suite(g, NodeSet{3, 4, 5});
  EXPECT_EQ(*a[Metric::normalized_cut], *b[Metric::normalized_cut]);
}

TEST(Metrics, RelabelingInvariance) {
  const auto g = fixture::two_triangles();
  // Mirror map u -> 5-u is an automorphism, so the suites must agree.
  const auto a = exact_metric_suite(g, NodeSet{0, 1, 3});
  const auto b = exact_metric_suite(g, NodeSet{2, 4, 5});
  for (Metric m : kAllMetrics) EXPECT_EQ(a[m], b[m]) << metric_name(m);
}

TEST(Misclassification, Examples) {
  const std::vector<int> a = {0, 0, 0, 1, 1, 1};
  const std::vector<int> swapped = {1, 1, 1, 0, 0, 0};
  const std::vector<int> one_off = {0, 0, 1, 1, 1, 1};
  const auto pa = Partition::from_labels(std::span<const int>(a));
  EXPECT_EQ(misclassification(pa, pa), 0u);
  EXPECT_EQ(misclassification(pa, Partition::from_labels(std::span<const int>(swapped))), 0u);
  const auto pb = Partition::from_labels(std::span<const int>(one_off));
  EXPECT_EQ(misclassification(pa, pb), 1u);
  EXPECT_EQ(misclassification(pb, pa), 1u);
  EXPECT_EQ(misclassification(Partition::single(6), pa), 3u);
  EXPECT_THROW(misclassification(Partition::single(5), pa), Error);
}

TEST(Misclassification, MatchesBruteForceOverPermutations) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> x(10), y(10);
    for (auto& v : x) v = static_cast<int>(rng() % 3);
    for (auto& v : y) v = static_cast<int>(rng() % 3);
    const auto px = Partition::from_labels(std::span<const int>(x));
    const auto py = Partition::from_labels(std::span<const int>(y));
    std::vector<int> perm = {0, 1, 2};
    std::size_t best = 10;
    do {
      std::size_t wrong = 0;
      for (std::size_t u = 0; u < 10; ++u) {
        wrong += perm[static_cast<std::size_t>(px.community_of(static_cast<NodeId>(u)))] !=
                 py.community_of(static_cast<NodeId>(u));
      }
      best = std::min(best, wrong);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (px.community_count() == 3 && py.community_count() == 3) {
      EXPECT_EQ(misclassification(px, py), best);
    }
  }
}

TEST(Report, TruthBlockAndAggregates) {
  const auto g = fixture::two_triangles();
  const std::vector<int> split = {0, 0, 0, 1, 1, 1};
  const auto p = Partition::from_labels(std::span<const int>(split));
  const auto r = evaluate(g, p, p);
  ASSERT_TRUE(r.truth.has_value());
  EXPECT_EQ(r.truth->misclassified, 0u);
  EXPECT_DOUBLE_EQ(*r[Metric::conductance].mean, 1.0 / 7.0);
  EXPECT_DOUBLE_EQ(*r[Metric::conductance].max, 1.0 / 7.0);
  EXPECT_DOUBLE_EQ(mean_conductance(g, p), 1.0 / 7.0);
  EXPECT_DOUBLE_EQ(max_conductance(g, p), 1.0 / 7.0);
}
