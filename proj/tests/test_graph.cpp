#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "termcut/error.hpp"
#include "termcut/graph.hpp"

using namespace termcut;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no termcut::Error thrown";
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST(WeightedGraph, RejectsMalformedEdges) {
  const std::vector<Edge> loop = {{1, 1, 1.0}};
  EXPECT_EQ(code_of([&] { WeightedGraph::from_edges(3, loop); }), ErrorCode::invalid_argument);
  const std::vector<Edge> negative = {{0, 1, -1.0}};
  EXPECT_EQ(code_of([&] { WeightedGraph::from_edges(3, negative); }), ErrorCode::invalid_argument);
  const std::vector<Edge> outside = {{0, 3, 1.0}};
  EXPECT_EQ(code_of([&] { WeightedGraph::from_edges(3, outside); }), ErrorCode::invalid_node);
  const std::vector<Edge> twice = {{0, 1, 1.0}, {1, 0, 2.0}};
  EXPECT_THROW(WeightedGraph::from_edges(3, twice), Error);
}

TEST(WeightedGraph, Accessors) {
  const auto g = fixture::two_triangles();
  EXPECT_EQ(g.node_count(), 6u);
  EXPECT_EQ(g.edge_count(), 7u);
  EXPECT_DOUBLE_EQ(g.total_weight(), 7.0);
  EXPECT_DOUBLE_EQ(g.degree(2), 3.0);
  EXPECT_DOUBLE_EQ(g.weight(2, 3), 1.0);
  EXPECT_DOUBLE_EQ(g.weight(3, 2), 1.0);
  EXPECT_DOUBLE_EQ(g.weight(0, 5), 0.0);
  EXPECT_FALSE(g.find_edge(0, 5).has_value());
  const auto nb = g.neighbors(2);
  ASSERT_EQ(nb.size(), 3u);
  EXPECT_EQ(nb[0].node, 0);
  EXPECT_EQ(nb[2].node, 3);
  EXPECT_THROW(g.degree(6), Error);
}

TEST(GraphBuilder, SumsRepeatedPairs) {
  GraphBuilder b;
  b.ensure_nodes(3);
  EXPECT_FALSE(b.add(0, 1, 2.0));
  EXPECT_TRUE(b.add(1, 0, 3.0));
  b.add(1, 2);
  const auto g = b.build();
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 5.0);
}

TEST(Partition, CanonicalLabels) {
  const std::vector<int> a = {7, 7, 3, 3, 9};
  const std::vector<int> b = {0, 0, 1, 1, 2};
  EXPECT_EQ(Partition::from_labels(std::span<const int>(a)), Partition::from_labels(std::span<const int>(b)));
  const auto p = Partition::from_labels(std::span<const int>(a));
  EXPECT_EQ(p.community_count(), 3);
  EXPECT_EQ(p.community_of(2), 1);
  EXPECT_EQ(p.sizes(), (std::vector<std::size_t>{2, 2, 1}));
  const std::vector<NodeSet> groups = {{4}, {2, 3}, {0, 1}};
  EXPECT_EQ(Partition::from_groups(5, groups), p);
  EXPECT_EQ(Partition::single(4).community_count(), 1);
  EXPECT_EQ(Partition::singletons(4).community_count(), 4);
}

TEST(CutSet, DedupAndWeight) {
  const auto g = fixture::two_triangles();
  const auto c = CutSet::from_edges(g, {6, 6, 0});
  EXPECT_EQ(c.size(), 2u);
  EXPECT_DOUBLE_EQ(c.total_weight(), 2.0);
  EXPECT_TRUE(c.contains(6));
  EXPECT_THROW(CutSet::from_edges(g, {7}), Error);
}

TEST(LocalArea, NearestByHopsThenDegree) {
  // Star center 0 with leaves 1..4, leaf 4 extended to 5.
  const std::vector<Edge> e = {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}, {4, 5, 1}};
  const auto g = WeightedGraph::from_edges(6, e);
  EXPECT_EQ(local_area(g, 0, 0).members, (NodeSet{0}));
  EXPECT_EQ(local_area(g, 0, 2).members, (NodeSet{0, 1, 4}));  // 4 has the larger degree
  EXPECT_EQ(local_area(g, 0, 4).members, (NodeSet{0, 1, 2, 3, 4}));
  EXPECT_EQ(local_area(g, 0, 5).members, (NodeSet{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(local_area(g, 0, 50).members.size(), 6u);
  EXPECT_EQ(local_area(g, 5, 1).members, (NodeSet{4, 5}));
}

TEST(Centrality, PathExample) {
  const auto g = fixture::path(3);
  EXPECT_DOUBLE_EQ(centrality(g, 1, 2), 0.5);
  EXPECT_DOUBLE_EQ(centrality(g, 0, 2), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(centrality(g, 2, 2), 1.0 / 3.0);
  EXPECT_THROW(centrality(g, 0, 0), Error);
}

TEST(Components, AfterRemoval) {
  const auto g = fixture::two_triangles();
  EXPECT_TRUE(is_connected(g));
  const auto bridge = CutSet::from_edges(g, {*g.find_edge(2, 3)});
  const auto p = components_after_removal(g, bridge);
  EXPECT_EQ(p.community_count(), 2);
  EXPECT_EQ(p.communities()[0], (NodeSet{0, 1, 2}));
  EXPECT_DOUBLE_EQ(crossing_weight(g, p), 1.0);
  EXPECT_DOUBLE_EQ(k_way_cut_sum(g, p), 2.0);
  EXPECT_EQ(crossing_edges(g, p), bridge);
}

TEST(HopDistances, UnreachableAbsent) {
  const std::vector<Edge> e = {{0, 1, 1}};
  const auto g = WeightedGraph::from_edges(3, e);
  const auto d = shortest_hop_distances(g, 0);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.at(1), 1);
  EXPECT_FALSE(is_connected(g));
  EXPECT_EQ(connected_components(g).community_count(), 2);
}
