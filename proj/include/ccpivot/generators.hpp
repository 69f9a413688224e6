#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccpivot/core.hpp"
#include "ccpivot/rng.hpp"

namespace ccpivot {

// K_{2h} minus the perfect matching {(2k, 2k+1)}. Every PIVOT run costs
// 3h - 3 while the single cluster costs h.
inline Graph matching_lower_bound(std::size_t half_n) {
  if (half_n < 1) throw std::invalid_argument("half_n must be at least 1");
  Graph g = Graph::complete(2 * half_n);
  for (Node k = 0; k < half_n; ++k) g.remove_edge(2 * k, 2 * k + 1);
  return g;
}

// K_n without the edge (0, 1).
inline Graph complete_minus_edge(std::size_t n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  Graph g = Graph::complete(n);
  g.remove_edge(0, 1);
  return g;
}

namespace detail {

inline void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

// Pairs visited in lexicographic order, one uniform draw each.
inline Graph gnp_from(std::size_t n, double p, Rng& rng) {
  Graph g(n);
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

}  // namespace detail

inline Graph gnp(std::size_t n, double p, std::uint64_t seed) {
  detail::check_probability(p, "p");
  Rng rng(seed);
  return detail::gnp_from(n, p, rng);
}

// k near-equal contiguous clusters (node i belongs to cluster i*k/n), then
// every pair is flipped independently with probability flip_prob.
inline Graph planted(std::size_t n, std::size_t k, double flip_prob, std::uint64_t seed) {
  detail::check_probability(flip_prob, "flip_prob");
  if (k < 1 || k > std::max<std::size_t>(n, 1))
    throw std::invalid_argument("k must lie in [1, n]");
  Rng rng(seed);
  Graph g(n);
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) {
      const bool same = (u * k / n) == (v * k / n);
      if (same != rng.bernoulli(flip_prob)) g.add_edge(u, v);
    }
  return g;
}

// G(n, p) plus f_pairs friendly and h_pairs hostile pairs drawn uniformly
// without replacement from all pairs, so F and H are disjoint. The result is
// not necessarily satisfiable.
inline ConstrainedInstance random_constrained(std::size_t n, double p, std::size_t f_pairs,
                                              std::size_t h_pairs, std::uint64_t seed) {
  detail::check_probability(p, "p");
  const std::size_t total = num_pairs(n);
  if (f_pairs + h_pairs > total)
    throw std::invalid_argument("f_pairs + h_pairs exceeds the number of node pairs");
  Rng rng(seed);
  ConstrainedInstance inst{detail::gnp_from(n, p, rng), {}, {}};

  std::vector<NodePair> pairs;
  pairs.reserve(total);
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) pairs.push_back({u, v});
  const std::size_t need = f_pairs + h_pairs;
  for (std::size_t i = 0; i < need; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(pairs[i], pairs[j]);
  }
  inst.friendly.assign(pairs.begin(), pairs.begin() + f_pairs);
  inst.hostile.assign(pairs.begin() + f_pairs, pairs.begin() + need);
  return inst;
}

// G(n, p) with weights uniform in [1, max_w].
inline WeightedInstance random_weighted(std::size_t n, double p, std::uint64_t max_w,
                                        std::uint64_t seed) {
  detail::check_probability(p, "p");
  if (max_w < 1) throw std::invalid_argument("max_w must be at least 1");
  Rng rng(seed);
  WeightedInstance inst{detail::gnp_from(n, p, rng), {}};
  inst.weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) inst.weights.push_back(1 + rng.below(max_w));
  return inst;
}

}  // namespace ccpivot
