#include <gtest/gtest.h>

#include <cmath>

#include "ccpivot/generators.hpp"
#include "ccpivot/nodeweighted.hpp"
#include "ccpivot/oracle.hpp"
#include "support/naive.hpp"

using namespace ccpivot;

namespace {

// Each node u becomes w_u mutually adjacent, friendly copies; copies of u
// and v are adjacent iff uv is an edge.
ConstrainedInstance blow_up(const WeightedInstance& inst) {
  const std::size_t n = inst.graph.n();
  std::vector<std::vector<Node>> copies(n);
  Node next = 0;
  for (Node u = 0; u < n; ++u)
    for (std::uint64_t i = 0; i < inst.weights[u]; ++i) copies[u].push_back(next++);
  ConstrainedInstance out{Graph(next), {}, {}};
  for (Node u = 0; u < n; ++u) {
    for (std::size_t i = 1; i < copies[u].size(); ++i) {
      out.friendly.push_back({copies[u][0], copies[u][i]});
      for (std::size_t j = 0; j < i; ++j) out.graph.add_edge(copies[u][j], copies[u][i]);
    }
    for (Node v = u + 1; v < n; ++v)
      if (inst.graph.has_edge(u, v))
        for (Node a : copies[u])
          for (Node b : copies[v]) out.graph.add_edge(a, b);
  }
  return out;
}

}  // namespace

TEST(NwccDeterministic, UnitWeightsMatchUnweightedPipeline) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gnp(10, 0.5, seed);
    const WeightedInstance inst{g, std::vector<std::uint64_t>(10, 1)};
    const auto res = nwcc_deterministic(inst, 0.1);
    const auto plain = cluster_deterministic(g, charge(g, 0.1 / 3));
    EXPECT_EQ(res.pivot.clustering, plain.clustering);
    EXPECT_EQ(res.cost, cost(g, plain.clustering));
  }
  const WeightedInstance k3{complete_minus_edge(3), {1, 1, 1}};
  EXPECT_EQ(nwcc_deterministic(k3, 0.1).cost, 1u);
  EXPECT_EQ(exact_nwcc(k3).cost, 1u);
}

TEST(NwccDeterministic, ThreeTimesChargeOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = random_weighted(4 + seed % 5, 0.5, 8, 300 + seed);
    const auto res = nwcc_deterministic(inst, 0.1);
    double total = 0;
    for (double v : res.charge.x) total += v;
    EXPECT_LE(static_cast<double>(res.cost), 3 * total * (1 + 1e-12) + 1e-9);
    EXPECT_EQ(res.cost, weighted_cost(inst, res.pivot.clustering));
  }
}

TEST(NwccRandomized, SingleEdgeAlwaysOneCluster) {
  const WeightedInstance inst{Graph::from_edges(2, std::vector<NodePair>{{0, 1}}), {5, 2}};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = nwcc_randomized(inst, seed);
    EXPECT_EQ(r.clustering, Clustering::one_cluster(2));
  }
}

TEST(NwccRandomized, ValidAndReplayable) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = random_weighted(25, 0.3, 1000, seed);
    const auto r = nwcc_randomized(inst, seed);
    EXPECT_TRUE(is_pivot_consistent(inst.graph, r));
    EXPECT_EQ(run_pivot(inst.graph, SequenceRule{r.pivots}).clustering, r.clustering);
    EXPECT_EQ(nwcc_randomized(inst, seed).pivots, r.pivots);
  }
}

TEST(NwccRandomized, EqualWeightsFirstPivotIsUniform) {
  const WeightedInstance inst{Graph(5), std::vector<std::uint64_t>(5, 7)};
  std::vector<int> first(5, 0);
  const int runs = 50000;
  for (int s = 0; s < runs; ++s) ++first[nwcc_randomized(inst, s).pivots[0]];
  for (int f : first) EXPECT_NEAR(f / static_cast<double>(runs), 0.2, 0.01);
}

TEST(NwccRandomized, HeavyCentreExpectation) {
  const std::uint64_t big = 20;
  const WeightedInstance inst{complete_minus_edge(3), {1, 1, big}};
  const double expected = (1.0 * big + 2.0 * big) / (big + 2.0);  // W/(W+2)*1 + 2/(W+2)*W
  double sum = 0;
  const int runs = 100000;
  for (int s = 0; s < runs; ++s)
    sum += static_cast<double>(weighted_cost(inst, nwcc_randomized(inst, s).clustering));
  // Two-point distribution over {1, W}.
  const double p = 2.0 / (big + 2.0);
  const double sigma = (big - 1.0) * std::sqrt(p * (1 - p));
  EXPECT_NEAR(sum / runs, expected, 4 * sigma / std::sqrt(runs));
  EXPECT_EQ(exact_nwcc(inst).cost, 1u);
}

TEST(Blowup, WeightedOptEqualsConstrainedOptOfBlowup) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 15; ++seed) {
    const auto inst = random_weighted(3 + seed % 3, 0.5, 3, 700 + seed);
    std::uint64_t total = 0;
    for (auto w : inst.weights) total += w;
    if (total > 10) continue;
    ++checked;
    const auto big = blow_up(inst);
    const auto constrained = exact_constrained(big);
    ASSERT_TRUE(constrained.has_value());
    EXPECT_EQ(exact_nwcc(inst).cost, constrained->cost) << "seed " << seed;
    EXPECT_EQ(naive::opt(inst.graph, inst.weights), constrained->cost);
  }
}
