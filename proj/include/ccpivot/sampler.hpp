#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccpivot/core.hpp"
#include "ccpivot/rng.hpp"

namespace ccpivot {

// Walker's alias method over a fixed list of nonnegative weights: O(k)
// construction, O(1) draws. Built with the two-worklist scheme; entries whose
// scaled probability is exactly 1 go to the large list.
class AliasTable {
 public:
  AliasTable() = default;

  template <typename W>
  explicit AliasTable(std::span<const W> weights) {
    build(weights);
  }

  template <typename W>
  void build(std::span<const W> weights) {
    const std::size_t k = weights.size();
    prob_.assign(k, 1.0);
    alias_.assign(k, 0);
    total_ = 0.0;
    for (auto w : weights) total_ += static_cast<double>(w);
    if (k == 0 || total_ <= 0.0) {
      prob_.clear();
      alias_.clear();
      total_ = 0.0;
      return;
    }
    std::vector<double> scaled(k);
    small_.clear();
    large_.clear();
    for (std::size_t i = 0; i < k; ++i) {
      scaled[i] = static_cast<double>(weights[i]) * static_cast<double>(k) / total_;
      (scaled[i] < 1.0 ? small_ : large_).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small_.empty() && !large_.empty()) {
      const auto s = small_.back();
      small_.pop_back();
      const auto l = large_.back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] -= 1.0 - scaled[s];
      if (scaled[l] < 1.0) {
        large_.pop_back();
        small_.push_back(l);
      }
    }
    // Leftovers are 1 up to rounding.
    for (auto i : large_) prob_[i] = 1.0, alias_[i] = i;
    for (auto i : small_) prob_[i] = 1.0, alias_[i] = i;
  }

  std::size_t size() const { return prob_.size(); }
  bool empty() const { return prob_.empty(); }
  double total() const { return total_; }

  // Index drawn with probability weight / total. Requires !empty().
  std::uint32_t sample(Rng& rng) const {
    const auto column = static_cast<std::uint32_t>(rng.below(prob_.size()));
    return rng.uniform01() < prob_[column] ? column : alias_[column];
  }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
  std::vector<std::uint32_t> small_, large_;
  double total_ = 0.0;
};

// Weighted sampling without replacement from a shrinking set in O(n) total
// time with high probability.
//
// Elements are bucketed by weight range [2^i, 2^(i+1)). Bucket i keeps an
// initial weight p_i (its total at the last rebuild) and an actual weight q_i
// (its live total). A draw picks a bucket by p from a top-level alias table,
// accepts it with probability q_i / p_i, then draws from the bucket's alias
// table until a live element comes up. A bucket whose live weight falls
// below p_i / 2 is rebuilt over its live members.
class DecrementalSampler {
 public:
  static constexpr std::size_t kMaxBuckets = 64;

  struct Counters {
    std::uint64_t construction = 0;  // elements and table entries touched in new()
    std::uint64_t rebuild = 0;       // table entries rebuilt after removals
    std::uint64_t bucket_draws = 0;  // top-level draws, including rejections
    std::uint64_t element_draws = 0; // in-bucket draws, including dead hits
    std::uint64_t removals = 0;

    std::uint64_t total() const {
      return construction + rebuild + bucket_draws + element_draws + removals;
    }
  };

  // One entry per bucket rebuild.
  struct RebuildEvent {
    std::uint32_t bucket = 0;
    std::uint64_t size_at_last_build = 0;
    std::uint64_t removals_since_build = 0;
  };

  explicit DecrementalSampler(std::span<const std::uint64_t> weights)
      : weights_(weights.begin(), weights.end()),
        live_(weights.size(), 1),
        bucket_of_(weights.size()),
        live_count_(weights.size()) {
    if (weights.size() >= std::numeric_limits<std::uint32_t>::max())
      throw std::length_error("too many elements");
    std::uint64_t total = 0;
    for (std::size_t a = 0; a < weights_.size(); ++a) {
      const std::uint64_t w = weights_[a];
      if (w == 0)
        throw std::invalid_argument("weight of element " + std::to_string(a) +
                                    " is not positive");
      if (total > std::numeric_limits<std::uint64_t>::max() - w)
        throw std::overflow_error("total weight exceeds 64 bits");
      total += w;
      const auto b = static_cast<std::uint32_t>(std::bit_width(w) - 1);
      bucket_of_[a] = b;
      buckets_[b].members.push_back(static_cast<Node>(a));
      buckets_[b].actual += w;
      ++counters_.construction;
    }
    for (std::uint32_t b = 0; b < kMaxBuckets; ++b) {
      auto& bucket = buckets_[b];
      if (bucket.members.empty()) continue;
      ++bucket_count_;
      bucket.initial = bucket.actual;
      build_bucket_table(bucket);
      counters_.construction += bucket.members.size();
    }
    build_top();
    counters_.construction += kMaxBuckets;
  }

  std::size_t size() const { return live_count_; }
  bool empty() const { return live_count_ == 0; }
  bool contains(Node a) const { return a < live_.size() && live_[a]; }

  // Draws a live element with probability w_a / (live total) without
  // removing it.
  Node draw(Rng& rng) {
    if (empty()) throw std::out_of_range("sample from an empty sampler");
    const std::uint64_t cap = rejection_cap();
    std::uint64_t misses = 0;
    for (;;) {
      ++counters_.bucket_draws;
      const auto b = top_ids_[top_.sample(rng)];
      auto& bucket = buckets_[b];
      if (rng.below(bucket.initial) >= bucket.actual) {
        if (++misses > cap)
          throw InvariantViolation("decremental sampler exceeded its rejection cap");
        continue;
      }
      for (;;) {
        ++counters_.element_draws;
        const Node a = bucket.members[bucket.table.sample(rng)];
        if (live_[a]) return a;
        if (++misses > cap)
          throw InvariantViolation("decremental sampler exceeded its rejection cap");
      }
    }
  }

  // Draws and removes.
  Node sample(Rng& rng) {
    const Node a = draw(rng);
    remove(a);
    return a;
  }

  void remove(Node a) {
    if (a >= live_.size()) throw std::out_of_range("element id out of range");
    if (!live_[a])
      throw std::invalid_argument("element " + std::to_string(a) + " was already removed");
    live_[a] = 0;
    --live_count_;
    ++counters_.removals;
    const auto b = bucket_of_[a];
    auto& bucket = buckets_[b];
    bucket.actual -= weights_[a];
    ++bucket.removals_since_build;
    if (2 * bucket.actual < bucket.initial) rebuild(b);
  }

  std::uint64_t initial_weight(std::uint32_t bucket) const { return buckets_[bucket].initial; }
  std::uint64_t actual_weight(std::uint32_t bucket) const { return buckets_[bucket].actual; }
  // Occupied buckets at construction (the bucket count l).
  std::size_t bucket_count() const { return bucket_count_; }
  static std::uint32_t bucket_for(std::uint64_t weight) {
    return static_cast<std::uint32_t>(std::bit_width(weight) - 1);
  }
  const Counters& counters() const { return counters_; }
  const std::vector<RebuildEvent>& rebuilds() const { return rebuild_log_; }

  // Recomputes every bucket's live total from scratch and compares it with
  // the maintained q_i; also checks q_i >= p_i / 2.
  bool check_invariants() const {
    std::uint64_t sums[kMaxBuckets] = {};
    for (std::size_t a = 0; a < weights_.size(); ++a) {
      if (!live_[a]) continue;
      if (bucket_of_[a] != bucket_for(weights_[a])) return false;
      sums[bucket_of_[a]] += weights_[a];
    }
    for (std::size_t b = 0; b < kMaxBuckets; ++b) {
      if (sums[b] != buckets_[b].actual) return false;
      if (2 * buckets_[b].actual < buckets_[b].initial) return false;
    }
    return true;
  }

 private:
  struct Bucket {
    std::vector<Node> members;  // members as of the last rebuild
    AliasTable table;
    std::uint64_t initial = 0;
    std::uint64_t actual = 0;
    std::uint64_t removals_since_build = 0;
  };

  void build_bucket_table(Bucket& bucket) {
    std::vector<std::uint64_t> w(bucket.members.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = weights_[bucket.members[i]];
    bucket.table.build(std::span<const std::uint64_t>(w));
  }

  void build_top() {
    top_ids_.clear();
    std::vector<std::uint64_t> p;
    for (std::uint32_t b = 0; b < kMaxBuckets; ++b) {
      if (buckets_[b].initial == 0) continue;
      top_ids_.push_back(b);
      p.push_back(buckets_[b].initial);
    }
    top_.build(std::span<const std::uint64_t>(p));
  }

  void rebuild(std::uint32_t b) {
    auto& bucket = buckets_[b];
    rebuild_log_.push_back({b, bucket.members.size(), bucket.removals_since_build});
    std::erase_if(bucket.members, [&](Node a) { return !live_[a]; });
    counters_.rebuild += bucket.removals_since_build + bucket.members.size();
    bucket.initial = bucket.actual;
    bucket.removals_since_build = 0;
    build_bucket_table(bucket);
    build_top();
    counters_.rebuild += kMaxBuckets;
  }

  // 64 * l * log2(n) + 64 consecutive misses; each attempt succeeds with
  // probability at least 1/2 while the invariants hold.
  std::uint64_t rejection_cap() const {
    const double log_n = std::log2(static_cast<double>(std::max<std::size_t>(weights_.size(), 1)));
    return static_cast<std::uint64_t>(64.0 * static_cast<double>(bucket_count_) * log_n) + 64;
  }

  std::vector<std::uint64_t> weights_;
  std::vector<char> live_;
  std::vector<std::uint32_t> bucket_of_;
  Bucket buckets_[kMaxBuckets];
  AliasTable top_;
  std::vector<std::uint32_t> top_ids_;
  std::size_t live_count_ = 0;
  std::size_t bucket_count_ = 0;
  Counters counters_;
  std::vector<RebuildEvent> rebuild_log_;
};

}  // namespace ccpivot
