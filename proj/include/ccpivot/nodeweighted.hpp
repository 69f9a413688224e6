#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ccpivot/charge.hpp"
#include "ccpivot/core.hpp"
#include "ccpivot/pivot.hpp"
#include "ccpivot/rng.hpp"
#include "ccpivot/sampler.hpp"

namespace ccpivot {

struct WeightedResult {
  PivotResult pivot;
  std::uint64_t cost = 0;
  ChargeSolution charge;
};

inline void check_weights(const WeightedInstance& inst) {
  if (inst.weights.size() != inst.graph.n())
    throw std::invalid_argument("weight vector size does not match node count");
  for (auto w : inst.weights)
    if (w == 0) throw std::invalid_argument("node weights must be positive");
}

// Deterministic (3 + eps)-approximation: weighted charging LP at eps / 3,
// then PIVOT by the weighted ratio rule.
inline WeightedResult nwcc_deterministic(const WeightedInstance& inst, double epsilon) {
  check_weights(inst);
  WeightedResult res;
  res.charge = charge_weighted(inst, epsilon / 3.0);
  res.pivot = cluster_weighted_deterministic(inst, res.charge);
  res.cost = weighted_cost(inst, res.pivot.clustering);
  return res;
}

namespace detail {

class WeightedSamplerSelector {
 public:
  WeightedSamplerSelector(std::span<const std::uint64_t> weights, std::uint64_t seed)
      : sampler_(weights), rng_(seed) {}

  Node select(const AliveSet&) { return sampler_.draw(rng_); }
  void on_remove(Node u, const AliveSet&) { sampler_.remove(u); }

  const DecrementalSampler& sampler() const { return sampler_; }

 private:
  DecrementalSampler sampler_;
  Rng rng_;
};

}  // namespace detail

// PIVOT with each pivot drawn with probability proportional to its weight
// among the unclustered nodes. The pivot is removed first, then its
// neighbours in ascending id order.
inline PivotResult nwcc_randomized(const WeightedInstance& inst, std::uint64_t seed) {
  check_weights(inst);
  detail::WeightedSamplerSelector sel(inst.weights, seed);
  return detail::run_pivot_with(inst.graph, sel);
}

}  // namespace ccpivot
