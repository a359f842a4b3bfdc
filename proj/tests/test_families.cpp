#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "kst/exact_solver.hpp"
#include "kst/families.hpp"
#include "kst/hypothesis.hpp"

using namespace kst;
using namespace fixtures;

TEST(BuildH, SmallestCaseMeasurements) {
  auto g = build_h({2, 11});
  EXPECT_EQ(g.order(), 11);
  EXPECT_EQ(min_degree(g), 3);
  EXPECT_FALSE(is_connected(g, VertexSet::range(1, 11)));
  auto nc = nc_value(g);
  ASSERT_FALSE(nc.complete);
  EXPECT_GE(2 * nc.value, 11 - 2);
}

TEST(BuildH, Layout) {
  // k = 2, n = 11: A = {0,1,2}, B = {3..6}, C = {7..10}
  auto g = build_h({2, 11});
  EXPECT_TRUE(is_clique(g, VertexSet{0, 1, 2}));
  EXPECT_TRUE(is_clique(g, VertexSet::range(3, 7)));
  EXPECT_TRUE(is_clique(g, VertexSet::range(7, 11)));
  EXPECT_TRUE(g.adjacent(0, 3));
  EXPECT_TRUE(g.adjacent(1, 7));
  EXPECT_TRUE(g.adjacent(2, 8));
  EXPECT_EQ(g.edge_count(), 3u + 6u + 6u + 3u);
}

TEST(BuildH, RoundRobinWhenCIsSmall) {
  // k = 3, n = 15: C = {10..14} has 5 vertices, 2k-2 = 4 links are distinct
  auto g = build_h({3, 15});
  for (Vertex i = 1; i <= 4; ++i)
    EXPECT_EQ(neighbors_in(g, i, VertexSet::range(10, 15)), VertexSet{9 + i});
  // k = 4, n = 15: |C| = 4 < 2k-2 = 6, so w_i cycle through C
  auto h = build_h({4, 15});
  const Vertex c0 = 7 + 4;
  EXPECT_TRUE(h.adjacent(1, c0));
  EXPECT_TRUE(h.adjacent(5, c0));
  EXPECT_TRUE(h.adjacent(6, c0 + 1));
}

TEST(BuildH, KThreeOrderFifteen) {
  auto g = build_h({3, 15});
  EXPECT_EQ(solve_exact(g, 3).status, SolveStatus::none);
}

TEST(BuildH, UnbuildableIsInputError) {
  EXPECT_THROW(build_h({2, 4}), input_error);
  EXPECT_THROW(build_h({1, 20}), input_error);
  EXPECT_NO_THROW(build_h({2, 5}));
}

TEST(BuildH, PropertiesAcrossRegime) {
  for (int n = 1; n <= 60; ++n)
    for (int k = 2; 6 * k <= n + 1; ++k) {
      ExtremalParams p{k, n};
      ASSERT_TRUE(p.in_regime());
      auto g = build_h(p);
      ASSERT_EQ(g.order(), n);
      EXPECT_EQ(min_degree(g), 2 * k - 1) << k << " " << n;
      auto nc = nc_value(g);
      EXPECT_GE(2 * nc.value, n - 2) << k << " " << n;
      EXPECT_TRUE(is_connected(g));
      EXPECT_FALSE(is_connected(g, VertexSet::range(1, n))) << "u = 0 must be a cut vertex";
      EXPECT_EQ(hypothesis_report(g, k).thm1_6_failures.size() >= 1, true);
    }
}

TEST(BuildH, HypothesisReportNamesDegree) {
  auto r = hypothesis_report(build_h({2, 11}), 2);
  EXPECT_EQ(r.delta, 3);
  EXPECT_FALSE(r.thm1_6);
  EXPECT_NE(std::find(r.thm1_6_failures.begin(), r.thm1_6_failures.end(), "delta 3 < 4"), r.thm1_6_failures.end());
}

TEST(BuildH, NoTreeOnSmallInstances) {
  for (int n = 5; n <= 10; ++n) {
    ExtremalParams p{2, n};
    if (!p.buildable())
      continue;
    auto g = build_h(p);
    EXPECT_EQ(solve_naive(g, 2).status, SolveStatus::none) << n;
    EXPECT_EQ(solve_exact(g, 2).status, SolveStatus::none) << n;
  }
}

TEST(CaseFamily, RejectsBadArguments) {
  EXPECT_THROW(case_family("W-connected/Case1", 2, 275), input_error);
  EXPECT_THROW(case_family("no-such-case", 2, 276), input_error);
  EXPECT_THROW(case_family("W-disconnected/overlap/Case2", 2, 276), input_error);
  EXPECT_THROW(case_family("dense", 1, 276), input_error);
}

TEST(CaseFamily, OutputsSatisfyHypotheses) {
  for (const auto& label : case_labels()) {
    if (label == "W-disconnected/overlap/Case2")
      continue;
    auto g = case_family(label, 2, 277);
    auto r = hypothesis_report(g, 2);
    EXPECT_TRUE(r.thm1_6 && r.connected) << label;
  }
}

TEST(CaseFamily, LabelsAreDistinct) {
  auto labels = case_labels();
  std::sort(labels.begin(), labels.end());
  EXPECT_EQ(std::adjacent_find(labels.begin(), labels.end()), labels.end());
  EXPECT_GE(labels.size(), 7u);
}

TEST(RandomGraph, Extremes) {
  EXPECT_EQ(random_graph(5, 0.0, 3).edge_count(), 0u);
  EXPECT_EQ(random_graph(5, 1.0, 3).edge_count(), 10u);
}

TEST(RandomGraph, SameSeedSameGraph) {
  EXPECT_EQ(random_graph(8, 0.5, 42).edges(), random_graph(8, 0.5, 42).edges());
  EXPECT_NE(random_graph(30, 0.5, 42).edges(), random_graph(30, 0.5, 43).edges());
}

TEST(RandomGraph, RejectsBadProbability) {
  EXPECT_THROW(random_graph(5, 1.5, 1), input_error);
  EXPECT_THROW(random_graph(5, -0.1, 1), input_error);
}
