#include <gtest/gtest.h>

#include <cmath>

#include "ccpivot/charge.hpp"
#include "ccpivot/generators.hpp"
#include "support/naive.hpp"

using namespace ccpivot;

namespace {

double sum(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v;
  return s;
}

}  // namespace

TEST(Charge, SingleTripletIsSymmetric) {
  const auto sol = charge(complete_minus_edge(3), 0.1);
  ASSERT_FALSE(sol.vacuous);
  for (double v : sol.x) EXPECT_NEAR(v, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(sol.primal_value, 1.0, 1e-12);
  EXPECT_LE(sol.dual_value, 1.0 + 1e-12);
  EXPECT_EQ(sol.triplet_count, 1u);
}

TEST(Charge, VacuousOnCliques) {
  const auto sol = charge(Graph::complete(4), 0.1);
  EXPECT_TRUE(sol.vacuous);
  EXPECT_EQ(sol.gap, 1.0);
  EXPECT_EQ(sol.x, std::vector<double>(6, 0.0));
  EXPECT_TRUE(charge(planted(9, 3, 0, 0), 0.2).vacuous);
}

TEST(Charge, GapBoundValue) {
  EXPECT_NEAR(charge_gap_bound(0.1), (1 / 0.9) * (0.1 / std::log(1.1)), 1e-12);
  EXPECT_NEAR(charge_gap_bound(0.1), 1.16578, 1e-5);
}

TEST(Charge, RejectsBadEpsilon) {
  const auto g = complete_minus_edge(3);
  EXPECT_THROW(charge(g, 0.0), std::invalid_argument);
  EXPECT_THROW(charge(g, 1.0), std::invalid_argument);
  EXPECT_THROW(charge(g, -0.5), std::invalid_argument);
}

TEST(Charge, CertificateOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const std::size_t n = 5 + seed % 10;
    const auto g = gnp(n, 0.5, seed);
    for (double eps : {0.1, 0.3}) {
      ChargeOptions opts;
      opts.record_ratio_trace = true;
      const auto sol = charge(g, eps, opts);
      if (sol.vacuous) continue;
      EXPECT_GE(min_triplet_coverage(g, sol.x), 1.0 - 1e-9);
      EXPECT_NEAR(sol.primal_value, sum(sol.x), 1e-9 * sol.primal_value);
      EXPECT_LE(sol.dual_value, sol.primal_value);
      EXPECT_LE(sol.gap, charge_gap_bound(eps) + 1e-9);
      EXPECT_LE(sol.max_pair_load, sol.update_bound + 1e-9);
      EXPECT_LE(static_cast<double>(sol.iterations),
                static_cast<double>(num_pairs(n)) * sol.update_bound);
      for (std::size_t i = 1; i < sol.ratio_trace.size(); ++i)
        EXPECT_LE(sol.ratio_trace[i], sol.ratio_trace[i - 1]);
      // The LP lower-bounds OPT.
      if (n <= 9) {
        EXPECT_LE(sol.dual_value, static_cast<double>(*naive::opt(g)) + 1e-9);
      }
    }
  }
}

TEST(Charge, Deterministic) {
  const auto g = gnp(14, 0.5, 77);
  const auto a = charge(g, 0.1);
  const auto b = charge(g, 0.1);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.dual_value, b.dual_value);
  EXPECT_EQ(a.best_iteration, b.best_iteration);
}

TEST(Charge, RescalingKeepsFeasibility) {
  // With eps = 0.005 the stopping bound is about e^461, past 2^512.
  const auto g = complete_minus_edge(5);
  const auto sol = charge(g, 0.005);
  EXPECT_GT(sol.rescales, 0u);
  EXPECT_GE(min_triplet_coverage(g, sol.x), 1.0 - 1e-9);
  EXPECT_LE(sol.gap, charge_gap_bound(0.005) + 1e-9);
  EXPECT_LE(sol.max_pair_load, sol.update_bound + 1e-9);
}

TEST(ChargeWeighted, UnitWeightsMatchUnweighted) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = gnp(10, 0.5, seed);
    const WeightedInstance inst{g, std::vector<std::uint64_t>(10, 1)};
    const auto a = charge(g, 0.1);
    const auto b = charge_weighted(inst, 0.1);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.iterations, b.iterations);
    EXPECT_EQ(a.gap, b.gap);
  }
  const WeightedInstance k3{complete_minus_edge(3), {1, 1, 1}};
  for (double v : charge_weighted(k3, 0.1).x) EXPECT_NEAR(v, 1.0 / 3.0, 1e-12);
}

TEST(ChargeWeighted, HeavyCentre) {
  // One constraint x01/1 + x02/W + x12/W >= 1; the optimum is x01 = 1.
  const WeightedInstance inst{complete_minus_edge(3), {1, 1, 100}};
  const auto sol = charge_weighted(inst, 0.1);
  EXPECT_GE(min_triplet_coverage(inst.graph, sol.x, inst.weights), 1.0 - 1e-9);
  EXPECT_LE(sol.dual_value, 1.0 + 1e-9);
  EXPECT_LE(sol.primal_value, sol.gap * sol.dual_value * (1 + 1e-12));
  EXPECT_LE(sol.gap, charge_gap_bound(0.1) + 1e-9);
}

TEST(ChargeWeighted, CertificateOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = random_weighted(5 + seed % 4, 0.5, 8, seed);
    const auto sol = charge_weighted(inst, 0.1);
    if (sol.vacuous) continue;
    EXPECT_GE(min_triplet_coverage(inst.graph, sol.x, inst.weights), 1.0 - 1e-9);
    EXPECT_LE(sol.dual_value, sol.primal_value);
    EXPECT_LE(sol.gap, 1.2);
    EXPECT_LE(sol.gap, charge_gap_bound(0.1) + 1e-9);
    EXPECT_LE(sol.max_pair_load, sol.update_bound + 1e-9);
    EXPECT_LE(sol.dual_value,
              static_cast<double>(*naive::opt(inst.graph, inst.weights)) + 1e-9);
  }
}
