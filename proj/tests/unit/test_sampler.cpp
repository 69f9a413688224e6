#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "ccpivot/rng.hpp"
#include "ccpivot/sampler.hpp"

using namespace ccpivot;

namespace {

std::vector<std::uint64_t> log_uniform_weights(std::size_t n, int max_exp, Rng& rng) {
  std::vector<std::uint64_t> w(n);
  for (auto& x : w) {
    const auto e = rng.below(static_cast<std::uint64_t>(max_exp));
    x = (1ULL << e) + rng.below(1ULL << e);
  }
  return w;
}

}  // namespace

TEST(AliasTable, ExactColumnMass) {
  // Probability of each outcome summed over columns must equal w / total.
  const std::vector<std::uint64_t> w{5, 1, 1, 9, 0, 4};
  AliasTable t{std::span<const std::uint64_t>(w)};
  Rng rng(1);
  std::vector<int> hist(w.size(), 0);
  const int draws = 400000;
  for (int i = 0; i < draws; ++i) ++hist[t.sample(rng)];
  EXPECT_EQ(hist[4], 0);
  for (std::size_t i = 0; i < w.size(); ++i)
    EXPECT_NEAR(hist[i] / static_cast<double>(draws), w[i] / 20.0, 0.004);
}

TEST(AliasTable, EmptyAndUniform) {
  AliasTable empty{std::span<const std::uint64_t>()};
  EXPECT_TRUE(empty.empty());
  const std::vector<double> same(4, 2.5);
  AliasTable t{std::span<const double>(same)};
  EXPECT_DOUBLE_EQ(t.total(), 10.0);
}

TEST(Sampler, BucketBoundaries) {
  const std::vector<std::uint64_t> two{1, 1};
  DecrementalSampler a{std::span<const std::uint64_t>(two)};
  EXPECT_EQ(a.bucket_count(), 1u);
  EXPECT_EQ(a.initial_weight(0), 2u);
  EXPECT_EQ(a.actual_weight(0), 2u);

  const std::vector<std::uint64_t> three{1, 2, 4};
  DecrementalSampler b{std::span<const std::uint64_t>(three)};
  EXPECT_EQ(b.bucket_count(), 3u);
  EXPECT_EQ(b.initial_weight(0), 1u);
  EXPECT_EQ(b.initial_weight(1), 2u);
  EXPECT_EQ(b.initial_weight(2), 4u);
  EXPECT_EQ(DecrementalSampler::bucket_for(3), 1u);
  EXPECT_EQ(DecrementalSampler::bucket_for(~0ULL), 63u);
}

TEST(Sampler, Errors) {
  const std::vector<std::uint64_t> bad{1, 0};
  EXPECT_THROW(DecrementalSampler{std::span<const std::uint64_t>(bad)}, std::invalid_argument);
  const std::vector<std::uint64_t> huge{~0ULL, 2};
  EXPECT_THROW(DecrementalSampler{std::span<const std::uint64_t>(huge)}, std::overflow_error);

  const std::vector<std::uint64_t> w{3};
  DecrementalSampler s{std::span<const std::uint64_t>(w)};
  Rng rng(0);
  EXPECT_EQ(s.sample(rng), 0u);
  EXPECT_TRUE(s.empty());
  EXPECT_THROW(s.sample(rng), std::out_of_range);
  EXPECT_THROW(s.remove(0), std::invalid_argument);
  EXPECT_THROW(s.remove(1), std::out_of_range);
}

TEST(Sampler, TwoElementProbabilities) {
  for (auto [wa, expected] : {std::pair<std::uint64_t, double>{1, 0.5}, {3, 0.75}}) {
    const std::vector<std::uint64_t> w{wa, 1};
    DecrementalSampler s{std::span<const std::uint64_t>(w)};
    Rng rng(7);
    int hits = 0;
    const int trials = 200000;
    for (int i = 0; i < trials; ++i) hits += s.draw(rng) == 0;
    EXPECT_NEAR(hits / static_cast<double>(trials), expected, 0.005);
  }
  const std::vector<std::uint64_t> w{3, 1};
  DecrementalSampler s{std::span<const std::uint64_t>(w)};
  s.remove(1);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(s.draw(rng), 0u);
}

TEST(Sampler, SingletonBucketEmptiesOnRemoval) {
  const std::vector<std::uint64_t> w{1, 8, 9};
  DecrementalSampler s{std::span<const std::uint64_t>(w)};
  s.remove(0);
  EXPECT_EQ(s.initial_weight(0), 0u);
  EXPECT_EQ(s.actual_weight(0), 0u);
  ASSERT_EQ(s.rebuilds().size(), 1u);
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_NE(s.draw(rng), 0u);
}

TEST(Sampler, FourUnitWeightsRebuildLedger) {
  const std::vector<std::uint64_t> w{1, 1, 1, 1};
  DecrementalSampler s{std::span<const std::uint64_t>(w)};
  s.remove(0);  // q = 3 >= 2
  EXPECT_TRUE(s.rebuilds().empty());
  EXPECT_EQ(s.actual_weight(0), 3u);
  s.remove(1);  // q = 2 >= 2
  EXPECT_TRUE(s.rebuilds().empty());
  s.remove(2);  // q = 1 < 2
  ASSERT_EQ(s.rebuilds().size(), 1u);
  EXPECT_EQ(s.rebuilds()[0].size_at_last_build, 4u);
  EXPECT_EQ(s.rebuilds()[0].removals_since_build, 3u);
  EXPECT_EQ(s.initial_weight(0), 1u);
  EXPECT_EQ(s.actual_weight(0), 1u);
  Rng rng(0);
  EXPECT_EQ(s.sample(rng), 3u);
}

TEST(Sampler, InvariantsUnderInterleavedOperations) {
  Rng rng(99);
  const auto w = log_uniform_weights(3000, 20, rng);
  DecrementalSampler s{std::span<const std::uint64_t>(w)};
  std::vector<Node> live(w.size());
  for (Node i = 0; i < w.size(); ++i) live[i] = i;
  std::size_t step = 0;
  while (!s.empty()) {
    if (rng.bernoulli(0.5)) {
      const Node a = s.sample(rng);
      EXPECT_FALSE(s.contains(a));
    } else {
      // Remove a uniformly random live element directly.
      Node a;
      do {
        a = static_cast<Node>(rng.below(w.size()));
      } while (!s.contains(a));
      s.remove(a);
    }
    if (++step % 97 == 0) {
      ASSERT_TRUE(s.check_invariants());
    }
  }
  EXPECT_TRUE(s.check_invariants());
  for (const auto& ev : s.rebuilds())
    EXPECT_GE(ev.removals_since_build, (ev.size_at_last_build + 2) / 3);
}

TEST(Sampler, FirstDrawDistribution) {
  Rng rng(2024);
  const auto w = log_uniform_weights(50, 10, rng);
  DecrementalSampler s{std::span<const std::uint64_t>(w)};
  double total = 0;
  for (auto x : w) total += static_cast<double>(x);
  std::vector<double> hist(w.size(), 0);
  const int trials = 500000;
  for (int i = 0; i < trials; ++i) ++hist[s.draw(rng)];
  double tv = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    tv += std::abs(hist[i] / trials - static_cast<double>(w[i]) / total);
  EXPECT_LT(tv / 2, 0.01);
}

TEST(Sampler, LifetimeWorkIsLinear) {
  for (std::size_t n : {1000u, 10000u}) {
    Rng rng(n);
    const auto w = log_uniform_weights(n, 20, rng);
    DecrementalSampler s{std::span<const std::uint64_t>(w)};
    EXPECT_LE(s.counters().construction, 3 * n + 64);
    while (!s.empty()) s.sample(rng);
    EXPECT_LE(s.counters().total(), 40 * n) << n;
    EXPECT_LE(s.counters().rebuild, 10 * n) << n;
  }
}
