#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "dynlink/error.hpp"
#include "dynlink/temporal_graph.hpp"
#include "test_util.hpp"

namespace dynlink {
namespace {

using testing::as_set;
using testing::random_network;

TEST(Ingest, TwoRowsGiveThreeNodesTwoSnapshots) {
  const std::vector<EdgeRow> rows = {{"a", "b", "1"}, {"b", "c", "2"}};
  const TemporalNetwork net = ingest_edge_list(rows);
  EXPECT_EQ(net.node_count(), 3u);
  ASSERT_EQ(net.snapshot_count(), 2u);
  // labels sort to a=0, b=1, c=2; time "1" is snapshot 0
  EXPECT_TRUE(net.snapshot(0).contains(0, 1));
  EXPECT_EQ(net.snapshot(0).size(), 1u);
  EXPECT_TRUE(net.snapshot(1).contains(1, 2));
  EXPECT_EQ(net.time_label(0), "1");
  EXPECT_EQ(net.node_label(2), "c");
}

TEST(Ingest, OnlySelfLoopIsEmptyInput) {
  const std::vector<EdgeRow> rows = {{"a", "a", "1"}};
  EXPECT_THROW(ingest_edge_list(rows), EmptyInputError);
}

TEST(Ingest, DuplicatesCollapseAndSymmetrizeAddsReverse) {
  const std::vector<EdgeRow> rows = {{"x", "y", "7"}, {"x", "y", "7"}, {"y", "z", "7"}};
  EXPECT_EQ(ingest_edge_list(rows).snapshot(0).size(), 2u);
  const TemporalNetwork sym = ingest_edge_list(rows, IngestOptions{true});
  EXPECT_EQ(sym.snapshot(0).size(), 4u);
  EXPECT_TRUE(sym.snapshot(0).contains(1, 0));
}

TEST(Ingest, NumericLabelsOrderNumerically) {
  std::istringstream in("10,2,2005\n2,10,1999\n# comment\n\n  3 , 10 , 2005 \n");
  const TemporalNetwork net = read_edge_list(in);
  ASSERT_EQ(net.node_count(), 3u);
  EXPECT_EQ(net.node_label(0), "2");
  EXPECT_EQ(net.node_label(1), "3");
  EXPECT_EQ(net.node_label(2), "10");
  EXPECT_EQ(net.time_label(0), "1999");
  EXPECT_EQ(net.time_label(1), "2005");
}

TEST(Parse, MalformedLineNamesLineNumber) {
  std::istringstream in("a,b,1\n# ok\na,b\n");
  try {
    parse_edge_list(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream empty_field("a,,1\n");
  EXPECT_THROW(parse_edge_list(empty_field), ParseError);
}

TEST(Ingest, RandomFileRoundTrips) {
  Rng rng(99);
  std::vector<EdgeRow> rows;
  for (int k = 0; k < 1000; ++k) {
    const auto s = rng.below(60), d = rng.below(60), t = rng.below(9);
    rows.push_back({"n" + std::to_string(s), "n" + std::to_string(d), std::to_string(2000 + t)});
  }
  const TemporalNetwork net = ingest_edge_list(rows);
  std::stringstream buf;
  write_edge_list(buf, net);
  const TemporalNetwork back = read_edge_list(buf);
  EXPECT_EQ(back, net);
}

TEST(Network, SnapshotOutOfRangeThrows) {
  const TemporalNetwork net(3, {{{0, 1}}});
  EXPECT_THROW(net.snapshot(1), IndexError);
  EXPECT_THROW(TemporalNetwork(2, {{{0, 5}}}), ContractViolation);
}

TEST(Network, TruncatedKeepsNodeSetAndPrefix) {
  const TemporalNetwork net = random_network(3, 12, 5, 0.2);
  const TemporalNetwork cut = net.truncated(3);
  EXPECT_EQ(cut.node_count(), net.node_count());
  ASSERT_EQ(cut.snapshot_count(), 3u);
  for (TimeIndex t = 0; t < 3; ++t) EXPECT_EQ(cut.snapshot(t), net.snapshot(t));
  EXPECT_THROW(net.truncated(0), IndexError);
  EXPECT_THROW(net.truncated(6), IndexError);
}

TEST(Transition, SingleAppearanceAndUnchanged) {
  const TemporalNetwork formed(2, {{}, {{0, 1}}});
  const TransitionPair a = derive_transition(formed, 1);
  EXPECT_EQ(a.formed, (EdgeList{{0, 1}}));
  EXPECT_TRUE(a.dissolved.empty());

  const TemporalNetwork same(2, {{{0, 1}}, {{0, 1}}});
  const TransitionPair b = derive_transition(same, 1);
  EXPECT_TRUE(b.formed.empty());
  EXPECT_TRUE(b.dissolved.empty());
  EXPECT_THROW(derive_transition(same, 0), IndexError);
}

TEST(Transition, MatchesBruteForceAdjacency) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const std::size_t n = 50;
    const TemporalNetwork net = random_network(seed, n, 2, 0.05);
    const TransitionPair tp = derive_transition(net, 1);
    EdgeList formed, dissolved;
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        const bool before = net.snapshot(0).contains(i, j);
        const bool after = net.snapshot(1).contains(i, j);
        if (after && !before) formed.push_back({i, j});
        if (before && !after) dissolved.push_back({i, j});
      }
    }
    EXPECT_EQ(tp.formed, formed);
    EXPECT_EQ(tp.dissolved, dissolved);
  }
}

TEST(Window, PEqualsOneIsLatest) {
  const TemporalNetwork net = random_network(4, 15, 5, 0.2);
  const auto w = window_transitions(net, 4, 1);
  ASSERT_EQ(w.size(), 1u);
  const TransitionPair latest = derive_transition(net, 4);
  EXPECT_EQ(w[0].time, 4u);
  EXPECT_EQ(w[0].formed, latest.formed);
  EXPECT_EQ(w[0].dissolved, latest.dissolved);
  EXPECT_THROW(window_transitions(net, 4, 0), IndexError);
  EXPECT_THROW(window_transitions(net, 4, 5), IndexError);
}

TEST(Window, FormedUnionMatchesScan) {
  const TemporalNetwork net = random_network(8, 20, 6, 0.15);
  const auto w = window_transitions(net, 5, 3);
  ASSERT_EQ(w.size(), 3u);
  std::set<Edge> got;
  for (const auto& tp : w) got.insert(tp.formed.begin(), tp.formed.end());
  std::set<Edge> expect;
  for (TimeIndex s = 3; s <= 5; ++s) {
    for (const Edge& e : net.snapshot(s).edges()) {
      if (!net.snapshot(s - 1).contains(e)) expect.insert(e);
    }
  }
  EXPECT_EQ(got, expect);
  EXPECT_EQ(w[0].time, 5u);  // newest first
  EXPECT_EQ(w[2].time, 3u);
}

TEST(Union, SingleAndDisjoint) {
  const TemporalNetwork one(3, {{{0, 1}, {1, 2}}});
  EXPECT_EQ(union_graph(one, 0).size(), 2u);
  const TemporalNetwork two(3, {{{0, 1}}, {{1, 2}}});
  EXPECT_EQ(as_set(union_graph(two, 1).edges()), (std::set<Edge>{{0, 1}, {1, 2}}));
}

TEST(Union, EqualsFoldOfUnions) {
  const TemporalNetwork net = random_network(21, 25, 6, 0.1);
  std::set<Edge> acc;
  for (TimeIndex t = 0; t < net.snapshot_count(); ++t) {
    const auto e = net.snapshot(t).edges();
    acc.insert(e.begin(), e.end());
    EXPECT_EQ(as_set(union_graph(net, t).edges()), acc);
  }
}

// (G_{t-1} ∪ formed) \ dissolved = G_t
TEST(Property, TransitionAlgebraReconstructsSnapshot) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const TemporalNetwork net = random_network(seed, 20, 2, 0.12);
    const TransitionPair tp = derive_transition(net, 1);
    const EdgeList rebuilt = edge_difference(edge_union(net.snapshot(0).edges(), tp.formed), tp.dissolved);
    ASSERT_EQ(rebuilt, EdgeList(net.snapshot(1).edges().begin(), net.snapshot(1).edges().end()));
    // formed and dissolved never overlap
    ASSERT_TRUE(edge_difference(tp.formed, tp.dissolved).size() == tp.formed.size());
  }
}

}  // namespace
}  // namespace dynlink
