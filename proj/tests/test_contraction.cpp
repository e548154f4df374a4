#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "termcut/contraction.hpp"
#include "termcut/error.hpp"
#include "termcut/random.hpp"

using namespace termcut;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// Probability that uniform pair merging from n singletons ends in one
// particular partition with the given block sizes: the block structure after
// n-k merges of uniformly chosen pairs follows the Kingman coalescent.
double coalescent_probability(int n, const std::vector<int>& sizes) {
  const int k = static_cast<int>(sizes.size());
  double p = factorial(n - k) * factorial(k) * factorial(k - 1) / (factorial(n) * factorial(n - 1));
  for (int s : sizes) p *= factorial(s);
  return p;
}

}  // namespace

TEST(SingleRun, TrivialCases) {
  const auto g = fixture::two_triangles();
  EXPECT_EQ(single_run(g, 6, 1), Partition::singletons(6));
  for (std::uint64_t seed = 0; seed < 5; ++seed) EXPECT_EQ(single_run(g, 1, seed), Partition::single(6));
  EXPECT_THROW(single_run(g, 7, 0), Error);
  EXPECT_THROW(single_run(g, 0, 0), Error);
  EXPECT_EQ(single_run(g, 3, 42).community_count(), 3);
  EXPECT_EQ(single_run(g, 3, 42), single_run(g, 3, 42));
}

TEST(SingleRun, SomeSeedRecoversPlantedPair) {
  // Two 4-cliques with one cross edge, as in the worked merging example.
  const auto g = fixture::two_cliques(4, {{3, 4, 1}});
  const auto truth = Partition::from_groups(8, std::vector<NodeSet>{{0, 1, 2, 3}, {4, 5, 6, 7}});
  bool found = false;
  for (std::uint64_t seed = 0; seed < 2000 && !found; ++seed) found = single_run(g, 2, seed) == truth;
  EXPECT_TRUE(found);
}

TEST(ContractionState, InterWeightsMatchRecount) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = oracle::random_graph(rng, 9, 0.5, 5);
    ContractionState st(g);
    std::size_t merges = 0;
    while (st.active() > 1) {
      const auto& act = st.active_nodes();
      const NodeId a = act[rng() % act.size()];
      NodeId b = act[rng() % act.size()];
      if (a == b) continue;
      st.merge(a, b);
      ++merges;
      EXPECT_EQ(st.active(), 9 - merges);
      for (NodeId x : st.active_nodes()) {
        for (NodeId y : st.active_nodes()) {
          if (x >= y) continue;
          double direct = 0.0;
          for (const Edge& e : g.edges()) {
            const NodeId ru = st.find(e.u);
            const NodeId rv = st.find(e.v);
            if ((ru == x && rv == y) || (ru == y && rv == x)) direct += e.weight;
          }
          EXPECT_NEAR(st.inter_weight(x, y), direct, 1e-9);
        }
      }
    }
    EXPECT_THROW(st.merge(st.active_nodes()[0], st.active_nodes()[0]), Error);
  }
}

TEST(SuccessBound, Examples) {
  EXPECT_EQ(success_bound(4, 2), Rational(1) / 6);
  EXPECT_EQ(success_bound(2, 2), Rational(1));
  EXPECT_EQ(success_bound(5, 3), Rational(1) / 20);
  EXPECT_EQ(success_bound(10, 2), Rational(1) / 45);
  EXPECT_THROW(success_bound(4, 1), Error);
  EXPECT_THROW(success_bound(3, 4), Error);
}

TEST(RunBudget, Examples) {
  const auto b = run_budget(0.5, 2);
  EXPECT_EQ(b.runs, 2u);
  EXPECT_GE(b.guarantee, 0.5);
  EXPECT_EQ(run_budget(1.0, 2).runs, 1u);
  EXPECT_DOUBLE_EQ(run_budget(1.0, 2).guarantee, 0.0);
  EXPECT_EQ(run_budget(1.0 / 6.0, 2).runs, 11u);
  EXPECT_THROW(run_budget(0.0, 2), Error);
  EXPECT_THROW(run_budget(1.5, 2), Error);
  EXPECT_THROW(run_budget(0.5, 0), Error);
  EXPECT_THROW(run_budget(1e-300, 2), Error);
  EXPECT_THROW(fixed_budget(0), Error);
}

TEST(RunBudget, GuaranteeHolds) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> p(1e-4, 1.0);
  std::uniform_real_distribution<double> c(0.1, 8.0);
  for (int i = 0; i < 2000; ++i) {
    const auto b = run_budget(p(rng), c(rng));
    const double achieved = 1.0 - std::pow(1.0 - b.p_bar, static_cast<double>(b.runs));
    EXPECT_GE(achieved + 1e-12, b.guarantee);
  }
}

TEST(Predicates, Behaviour) {
  const auto g = fixture::two_triangles();
  const auto split = Partition::from_groups(6, std::vector<NodeSet>{{0, 1, 2}, {3, 4, 5}});
  EXPECT_TRUE(FeasibilityPredicate::always()(split));
  EXPECT_TRUE(FeasibilityPredicate::designated_separation(g, {0, 5})(split));
  EXPECT_FALSE(FeasibilityPredicate::designated_separation(g, {0, 1})(split));
  EXPECT_TRUE(FeasibilityPredicate::min_size(3)(split));
  EXPECT_FALSE(FeasibilityPredicate::min_size(4)(split));
  EXPECT_THROW(FeasibilityPredicate::designated_separation(g, {0, 9}), Error);
}

TEST(DetectCustomized, EdgeWeightedBudgetFindsBridge) {
  const auto g = fixture::two_triangles();
  const auto split = Partition::from_groups(6, std::vector<NodeSet>{{0, 1, 2}, {3, 4, 5}});
  EXPECT_DOUBLE_EQ(oracle::min_k_way_cut(g, 2), 1.0);
  const RunBudget budget = run_budget(to_double(success_bound(6, 2)), 4);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    ContractionConfig cfg;
    cfg.seed = seed;
    cfg.selection = PairSelection::edge_weighted;
    const auto r = detect_customized(g, cfg, FeasibilityPredicate::always(), budget);
    ASSERT_TRUE(r.has_value());
    hits += r->partition == split;
  }
  EXPECT_GE(hits, 36);
}

TEST(DetectCustomized, UniformSelectionFallsShortOfBound) {
  // The 3/3 split has coalescent probability 1/50 under uniform merging, below 1/15.
  const double p = coalescent_probability(6, {3, 3});
  EXPECT_NEAR(p, 1.0 / 50.0, 1e-12);
  EXPECT_LT(p, to_double(success_bound(6, 2)));
}

TEST(DetectCustomized, InfeasiblePredicateGivesNone) {
  const auto g = fixture::two_triangles();
  ContractionConfig cfg;
  cfg.k = 1;
  EXPECT_FALSE(detect_customized(g, cfg, FeasibilityPredicate::designated_separation(g, {0, 4}), fixed_budget(50))
                   .has_value());
}

TEST(DetectCustomized, MinSizeRespectsPredicateAndOracle) {
  const auto g = fixture::two_triangles();
  const auto pred = FeasibilityPredicate::min_size(2);
  double feasible_opt = 1e300;
  oracle::for_each_partition(6, 2, [&](const std::vector<int>& label) {
    if (pred(Partition::from_labels(std::span<const int>(label)))) {
      feasible_opt = std::min(feasible_opt, oracle::crossing(g, label));
    }
  });
  ContractionConfig cfg;
  cfg.seed = 77;
  const auto r = detect_customized(g, cfg, pred, fixed_budget(200));
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(pred(r->partition));
  EXPECT_GE(r->cut_weight, feasible_opt);
  EXPECT_GE(r->cut_weight, oracle::min_k_way_cut(g, 2));
  EXPECT_DOUBLE_EQ(r->cut_weight, crossing_weight(g, r->partition));
}

TEST(DetectCustomized, MonotoneInRunsAndJobIndependent) {
  std::mt19937_64 rng(31);
  const auto g = oracle::random_graph(rng, 10, 0.4, 3);
  ContractionConfig cfg;
  cfg.k = 3;
  cfg.seed = 5;
  double last = 1e300;
  for (std::uint64_t runs : {1u, 2u, 5u, 20u, 80u}) {
    const auto r = detect_customized(g, cfg, FeasibilityPredicate::min_size(2), fixed_budget(runs));
    if (!r) continue;
    EXPECT_LE(r->cut_weight, last);
    last = r->cut_weight;
  }
  const auto serial = detect_customized(g, cfg, FeasibilityPredicate::always(), fixed_budget(64));
  cfg.jobs = 3;
  const auto parallel = detect_customized(g, cfg, FeasibilityPredicate::always(), fixed_budget(64));
  ASSERT_TRUE(serial && parallel);
  EXPECT_EQ(serial->partition, parallel->partition);
  EXPECT_EQ(serial->run, parallel->run);
}

TEST(SingleRun, UniformMergingFollowsCoalescent) {
  // Selection ignores edges, so the chance of one given 5/5 split on ten nodes is exact.
  const auto g = fixture::two_cliques(5, {{4, 5, 1}});
  const auto split = Partition::from_groups(10, std::vector<NodeSet>{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
  const auto lopsided = Partition::from_groups(10, std::vector<NodeSet>{{0}, {1, 2, 3, 4, 5, 6, 7, 8, 9}});
  const int trials = 200000;
  int hits = 0;
  int lop = 0;
  for (int i = 0; i < trials; ++i) {
    const auto p = single_run(g, 2, derive_seed(99, static_cast<std::uint64_t>(i)));
    hits += p == split;
    lop += p == lopsided;
  }
  const double p_split = coalescent_probability(10, {5, 5});
  const double p_lop = coalescent_probability(10, {1, 9});
  EXPECT_NEAR(p_split, 1.0 / 1134.0, 1e-12);
  EXPECT_NEAR(p_lop, 1.0 / 45.0, 1e-12);
  const auto within = [&](int count, double p) {
    const double sigma = std::sqrt(p * (1 - p) / trials);
    return std::abs(static_cast<double>(count) / trials - p) <= 4 * sigma;
  };
  EXPECT_TRUE(within(hits, p_split)) << hits;
  EXPECT_TRUE(within(lop, p_lop)) << lop;
}

TEST(SingleRun, EdgeWeightedSelectionFavoursSparseCuts) {
  const auto g = fixture::two_cliques(5, {{4, 5, 1}});
  const auto split = Partition::from_groups(10, std::vector<NodeSet>{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
  int hits = 0;
  for (int i = 0; i < 2000; ++i) {
    hits += single_run(g, 2, derive_seed(7, static_cast<std::uint64_t>(i)), PairSelection::edge_weighted) == split;
  }
  EXPECT_GE(hits / 2000.0, to_double(success_bound(10, 2)));
}
