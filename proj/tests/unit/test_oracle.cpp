#include <gtest/gtest.h>

#include "ccpivot/generators.hpp"
#include "ccpivot/oracle.hpp"
#include "ccpivot/pivot.hpp"
#include "support/naive.hpp"

using namespace ccpivot;

TEST(ExactCc, Examples) {
  EXPECT_EQ(exact_cc(complete_minus_edge(3)).cost, 1u);
  const auto lb = exact_cc(matching_lower_bound(2));
  EXPECT_EQ(lb.cost, 2u);
  EXPECT_EQ(lb.clustering, Clustering::one_cluster(4));
  EXPECT_EQ(exact_cc(Graph(0)).cost, 0u);
  EXPECT_EQ(exact_cc(Graph(1)).cost, 0u);
  EXPECT_THROW(exact_cc(Graph(13)), std::length_error);
}

TEST(ExactCc, MatchesNaiveEnumeration) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 9;
    const auto g = gnp(n, 0.5, 40 + seed);
    const auto r = exact_cc(g);
    EXPECT_EQ(r.cost, *naive::opt(g));
    EXPECT_EQ(cost(g, r.clustering), r.cost);
  }
}

TEST(ExactNwcc, MatchesNaiveEnumeration) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = random_weighted(2 + seed % 7, 0.5, 9, seed);
    const auto r = exact_nwcc(inst);
    EXPECT_EQ(r.cost, *naive::opt(inst.graph, inst.weights));
    EXPECT_EQ(weighted_cost(inst, r.clustering), r.cost);
  }
}

TEST(ExactConstrained, Examples) {
  const Graph g = complete_minus_edge(3);
  EXPECT_FALSE(exact_constrained({g, {{0, 1}}, {{0, 1}}}));
  EXPECT_FALSE(exact_constrained({g, {{0, 1}, {1, 2}}, {{0, 2}}}));
  const auto r = exact_constrained({g, {}, {{0, 2}}});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, 1u);
  EXPECT_FALSE(r->clustering.together(0, 2));
}

TEST(ExactConstrained, MatchesNaiveEnumeration) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = random_constrained(3 + seed % 6, 0.5, seed % 4, seed % 3, seed);
    const auto r = exact_constrained(inst);
    const auto expected = naive::opt(inst.graph, {}, naive::pairs_of(inst.friendly),
                                     naive::pairs_of(inst.hostile));
    ASSERT_EQ(r.has_value(), expected.has_value());
    if (!r) continue;
    EXPECT_EQ(r->cost, *expected);
    EXPECT_TRUE(satisfies_constraints(inst, r->clustering));
  }
}

TEST(BestPivotOrder, Examples) {
  const auto lb = best_pivot_order(matching_lower_bound(2));
  EXPECT_EQ(lb.cost, 3u);
  EXPECT_EQ(best_pivot_order(Graph::complete(6)).cost, 0u);
  const auto km = best_pivot_order(complete_minus_edge(5));
  EXPECT_EQ(km.cost, 1u);
  EXPECT_GE(km.order.front(), 2u);
  EXPECT_THROW(best_pivot_order(Graph(11)), std::length_error);
}

TEST(BestPivotOrder, MatchesNaiveRecursionAndBoundsOpt) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 1 + seed % 7;
    const auto g = gnp(n, 0.5, 90 + seed);
    const auto r = best_pivot_order(g);
    EXPECT_EQ(r.cost, naive::best_pivot_cost(g));
    EXPECT_EQ(cost(g, run_pivot(g, SequenceRule{r.order}).clustering), r.cost);
    EXPECT_GE(r.cost, exact_cc(g).cost);
  }
}

TEST(BestPivotOrder, LowerBoundRatio) {
  for (std::size_t h = 2; h <= 5; ++h) {
    const auto g = matching_lower_bound(h);
    EXPECT_EQ(best_pivot_order(g).cost, 3 * h - 3);
    EXPECT_EQ(exact_cc(g).cost, h);
  }
}
