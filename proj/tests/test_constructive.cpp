#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "kst/constructive.hpp"
#include "kst/families.hpp"
#include "kst/hypothesis.hpp"

using namespace kst;
using namespace fixtures;

namespace {

FailureKind failure_of(const Graph& g, int k, ConstructOptions opts = {}) {
  try {
    construct_2k_st(g, k, opts);
  } catch (const construct_error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "construction unexpectedly succeeded";
  return FailureKind::internal;
}

bool ledger_has(const ProofTrace& t, const std::string& name) {
  for (const auto& r : t.ledger)
    if (r.name == name && r.holds)
      return true;
  return false;
}

// u = 0 with N(u) = 1..4 a clique; W = 5..n-1 split into cliques of the given sizes.
Graph split_w(int n, const std::vector<int>& sizes, const std::vector<Edge>& extra) {
  detail::EdgeTable t(n);
  t.clique(0, 5);
  Vertex at = 5;
  for (int s : sizes) {
    t.clique(at, at + s);
    at += s;
  }
  for (auto [a, b] : extra)
    t.add(a, b);
  return t.build();
}

} // namespace

TEST(Construct, CompleteGraphTakesDensePath) {
  auto g = complete(280);
  auto c = construct_2k_st(g, 2);
  EXPECT_EQ(c.trace.label(), "dense");
  EXPECT_EQ(c.certificate, star_certificate(0, VertexSet::range(1, 280), 2));
  ASSERT_EQ(c.trace.oracle_calls.size(), 1u);
  EXPECT_EQ(c.trace.oracle_calls[0].size, 280);
}

class CaseLabels : public ::testing::TestWithParam<std::string> {};

TEST_P(CaseLabels, FixtureRoutesAndCertifies) {
  const auto& label = GetParam();
  auto g = case_family(label, 2, 276);
  EXPECT_TRUE(hypothesis_report(g, 2).thm1_6);
  auto c = construct_2k_st(g, 2);
  EXPECT_EQ(c.trace.label(), label);
  EXPECT_TRUE(classify(g, c.certificate, 2).is_full());
  for (const auto& r : c.trace.ledger)
    EXPECT_TRUE(r.holds) << r.name;
  for (const auto& call : c.trace.oracle_calls)
    EXPECT_TRUE(call.ok) << call.context;
  EXPECT_EQ(c.trace.u, 0);
  EXPECT_EQ(c.trace.delta, label == "dense" ? 274 : 4);
}

INSTANTIATE_TEST_SUITE_P(KTwo, CaseLabels, ::testing::Values("dense", "W-connected/Case1", "W-connected/Case2/Subcase2.1/Extend-Case1", "W-connected/Case2/Subcase2.1/Extend-Case2.1", "W-connected/Case2/Subcase2.1/Extend-Case2.2", "W-connected/Case2/Subcase2.2/Extend-Case1", "W-connected/Case2/Subcase2.2/Extend-Case2.1", "W-connected/Case2/Subcase2.2/Extend-Case2.2", "W-disconnected/overlap/Case1", "W-disconnected/disjoint/Case1", "W-disconnected/disjoint/Case2", "W-disconnected/disjoint/Case3"),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& ch : s)
                             if (!std::isalnum(static_cast<unsigned char>(ch)))
                               ch = '_';
                           return s;
                         });

TEST(Construct, EveryLabelAtKThree) {
  const int n = thresholds(3).n1;
  for (const auto& label : case_labels()) {
    auto g = case_family(label, 3, n);
    auto c = construct_2k_st(g, 3);
    EXPECT_EQ(c.trace.label(), label);
    EXPECT_TRUE(classify(g, c.certificate, 3).is_full()) << label;
  }
}

TEST(Construct, Deterministic) {
  auto g = case_family("W-connected/Case2/Subcase2.2/Extend-Case2.2", 2, 276);
  auto a = construct_2k_st(g, 2), b = construct_2k_st(g, 2);
  EXPECT_EQ(a.certificate, b.certificate);
  EXPECT_EQ(a.trace.label(), b.trace.label());
  EXPECT_EQ(a.trace.ledger.size(), b.trace.ledger.size());
}

TEST(Construct, SubcaseTwoTwoRecordsDegreeOfU1) {
  auto c = construct_2k_st(case_family("W-connected/Case2/Subcase2.2/Extend-Case1", 2, 276), 2);
  EXPECT_TRUE(ledger_has(c.trace, "d_T'(u1) = k+1"));
}

TEST(Construct, ExtendCaseOneCallsOracleOnRestOfW) {
  auto c = construct_2k_st(case_family("W-connected/Case2/Subcase2.1/Extend-Case1", 2, 276), 2);
  ASSERT_EQ(c.trace.oracle_calls.size(), 1u);
  // |W| = 271 and S' = S1 ∪ {x2} has one vertex at k = 2
  EXPECT_EQ(c.trace.oracle_calls[0].size, 270);
  EXPECT_TRUE(ledger_has(c.trace, "(16) delta(G[W\\S']) >= c_k*sqrt(|W\\S'|)"));
}

TEST(Construct, ExtendCaseTwoTwoBoundsRemovedSet) {
  auto c = construct_2k_st(case_family("W-connected/Case2/Subcase2.2/Extend-Case2.2", 2, 276), 2);
  EXPECT_TRUE(ledger_has(c.trace, "|S1 ∪ S2 ∪ {x2}| <= 2k-2"));
  EXPECT_EQ(c.trace.oracle_calls.size(), 2u);
}

TEST(Construct, DisjointCaseOneNotesReading) {
  auto c = construct_2k_st(case_family("W-disconnected/disjoint/Case1", 2, 276), 2);
  EXPECT_EQ(c.trace.notes, (std::vector<std::string>{"edge term N(u,N(u)) read as E(u,N(u))"}));
}

TEST(Construct, ExtremalGraphViolatesHypothesis) {
  auto g = build_h({2, 276});
  EXPECT_EQ(hypothesis_report(g, 2).delta, 3);
  EXPECT_EQ(failure_of(g, 2), FailureKind::hypothesis);
}

TEST(Construct, SmallOrderViolatesHypothesis) { EXPECT_EQ(failure_of(complete(10), 2), FailureKind::hypothesis); }

TEST(Construct, DisconnectedViolatesHypothesis) { EXPECT_EQ(failure_of(split_w(280, {140, 135}, {}), 2), FailureKind::hypothesis); }

TEST(Construct, FailureCarriesTrace) {
  try {
    construct_2k_st(complete(10), 2);
    FAIL();
  } catch (const construct_error& e) {
    ASSERT_FALSE(e.trace().ledger.empty());
    EXPECT_FALSE(e.trace().ledger.back().holds);
    EXPECT_EQ(e.trace().ledger.back().name, "n >= n1(k)");
  }
}

TEST(Construct, ThreeComponentsIsInternalWhenUnchecked) {
  // three cliques in W, each linked to vertex 1
  auto g = split_w(276, {91, 90, 90}, {{1, 5}, {1, 96}, {1, 186}});
  ConstructOptions opts;
  opts.check_hypotheses = false;
  EXPECT_EQ(failure_of(g, 2, opts), FailureKind::internal);
  EXPECT_EQ(failure_of(g, 2), FailureKind::hypothesis);
}

TEST(ComponentSolver, Contracts) {
  auto g = case_family("W-disconnected/disjoint/Case1", 2, 276);
  ProofContext ctx(g, 2);
  auto parts = components(g, ctx.w());
  ASSERT_EQ(parts.size(), 2u);
  const auto& c1 = parts[0];

  auto t = ctx.component_solver(c1, {}, 0);
  EXPECT_TRUE(classify(g, t, 2, c1).is_full());

  auto t2 = ctx.component_solver(c1, VertexSet{c1.front(), c1.front() + 1}, 0);
  EXPECT_TRUE(classify(g, t2, 2, set_difference(c1, VertexSet{c1.front(), c1.front() + 1})).is_full());

  try {
    ctx.component_solver(c1, VertexSet{c1.front(), c1.front() + 1, c1.front() + 2}, 0);
    FAIL();
  } catch (const construct_error& e) {
    EXPECT_EQ(e.kind(), FailureKind::precondition);
  }
  try {
    ctx.component_solver(set_union(parts[0], parts[1]), {}, 0);
    FAIL();
  } catch (const construct_error& e) {
    EXPECT_EQ(e.kind(), FailureKind::internal);
    EXPECT_NE(std::string(e.what()).find("Claim 1 violated"), std::string::npos);
  }
}

TEST(ComponentAttach, FullNeighbourhoodGivesStar) {
  // vertex 1 sees all of C1 = 5..140
  std::vector<Edge> extra;
  for (Vertex x = 5; x < 141; ++x)
    extra.emplace_back(1, x);
  extra.emplace_back(2, 141);
  auto g = split_w(276, {136, 135}, extra);
  ProofContext ctx(g, 2);
  auto parts = components(g, ctx.w());
  auto out = ctx.lemma_2_9(parts[0], 1);
  EXPECT_FALSE(out.quasi);
  EXPECT_EQ(out.degree_of_v, 136);
  EXPECT_EQ(out.tree, star_certificate(1, parts[0], 2));
}

TEST(ComponentAttach, SingleNeighbourLeavesVAsLeaf) {
  auto g = case_family("W-disconnected/disjoint/Case2", 2, 276);
  ProofContext ctx(g, 2);
  auto parts = components(g, ctx.w());
  auto out = ctx.lemma_2_9(parts[0], 1);
  auto scope = set_union(parts[0], VertexSet{1});
  EXPECT_TRUE(classify(g, out.tree, 2, scope).is_full());
  EXPECT_EQ(tree_degrees(out.tree).at(1), 1);
}

TEST(ComponentAttach, PartialNeighbourhoodGivesQuasiTree) {
  for (int k : {2, 3}) {
    auto g = case_family("W-disconnected/disjoint/Case1", k, thresholds(k).n1);
    ProofContext ctx(g, k);
    auto parts = components(g, ctx.w());
    auto out = ctx.lemma_2_9(parts[0], 1);
    auto kind = classify(g, out.tree, k, set_union(parts[0], VertexSet{1}));
    EXPECT_EQ(kind.kind, TreeClass::quasi);
    EXPECT_EQ(kind.witnesses, (std::vector<Vertex>{1}));
    EXPECT_EQ(tree_degrees(out.tree).at(1), k);
  }
}

TEST(ComponentAttach, NoNeighbourIsPrecondition) {
  auto g = case_family("W-disconnected/disjoint/Case2", 2, 276);
  ProofContext ctx(g, 2);
  auto parts = components(g, ctx.w());
  try {
    ctx.lemma_2_9(parts[0], 3);
    FAIL();
  } catch (const construct_error& e) {
    EXPECT_EQ(e.kind(), FailureKind::precondition);
  }
}

TEST(ExtendLemma, SmallSIsPrecondition) {
  auto g = case_family("W-connected/Case2/Subcase2.1/Extend-Case1", 2, 276);
  ProofContext ctx(g, 2);
  auto t = star_certificate(0, ctx.nu(), 2);
  try {
    ctx.extend_lemma(t, VertexSet{ctx.w().front()}, ctx.w().front());
    FAIL();
  } catch (const construct_error& e) {
    EXPECT_EQ(e.kind(), FailureKind::precondition);
  }
}

TEST(CaseWConnected, DisconnectedWIsPrecondition) {
  auto g = case_family("W-disconnected/disjoint/Case1", 2, 276);
  ProofContext ctx(g, 2);
  try {
    ctx.case_w_connected();
    FAIL();
  } catch (const construct_error& e) {
    EXPECT_EQ(e.kind(), FailureKind::precondition);
  }
}
