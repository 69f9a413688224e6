#pragma once

// Multiplicative-weights approximation of the charging covering LP
//
//   min  sum_e c_e z_e   s.t.  z_uv + z_vw + z_wu >= 1  for every bad triplet uvw
//
// with c_e = 1 (unweighted) or c_e = w_u * w_v (node-weighted, where the
// returned charge is x_e = c_e * z_e). Each round picks the bad triplet with
// the smallest current sum, multiplies its three variables by
// (1 + eps * c_min / c_e) and credits c_min to the dual. The run stops once
// sum_e c_e z_e reaches B = (C0 (1 + eps))^(1/eps) / (1 + eps), C0 being the
// initial objective. The best-ratio snapshot, divided by its minimum triplet
// sum, is returned together with a dual packing certificate.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "ccpivot/core.hpp"
#include "ccpivot/indexed_heap.hpp"

namespace ccpivot {

struct ChargeOptions {
  // Record the best primal/min ratio after every round (memory grows with the
  // iteration count).
  bool record_ratio_trace = false;
};

struct ChargeSolution {
  std::size_t n = 0;
  // Pair-indexed by pair_index(n, u, v). Feasible for the respective LP.
  std::vector<double> x;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 1.0;
  double epsilon = 0.0;
  std::uint64_t iterations = 0;
  bool vacuous = false;

  // log_{1+eps} B + 1: the most (1+eps)-steps any variable may take and the
  // dual scaling divisor.
  double update_bound = 0.0;
  // Largest per-pair sum of c_min / c_e over the run; with unit costs this is
  // the number of times the pair was multiplied by (1 + eps).
  double max_pair_load = 0.0;
  std::uint64_t best_iteration = 0;
  std::uint32_t rescales = 0;
  std::size_t triplet_count = 0;
  std::vector<double> ratio_trace;

  double charge(Node u, Node v) const { return x[pair_index(n, u, v)]; }
};

// Upper bound on the certified primal/dual gap for a given eps:
// 1/(1-eps) * eps/ln(1+eps).
inline double charge_gap_bound(double epsilon) {
  return (1.0 / (1.0 - epsilon)) * (epsilon / std::log1p(epsilon));
}

// Smallest left-hand side over all bad-triplet constraints, or +inf when the
// graph has none. With weights, each term is divided by w_u * w_v.
inline double min_triplet_coverage(const Graph& g, std::span<const double> x,
                                   std::span<const std::uint64_t> weights = {}) {
  const std::size_t n = g.n();
  double best = std::numeric_limits<double>::infinity();
  auto term = [&](Node a, Node b) {
    const double v = x[pair_index(n, a, b)];
    if (weights.empty()) return v;
    return v / (static_cast<double>(weights[a]) * static_cast<double>(weights[b]));
  };
  for_each_bad_triplet(g, [&](const BadTriplet& t) {
    best = std::min(best, term(t.u, t.v) + term(t.v, t.w) + term(t.u, t.w));
  });
  return best;
}

namespace detail {

// Bad triplets of a graph with their pair ids, plus the reverse index from
// pairs to the triplets that contain them (CSR layout).
struct TripletIndex {
  std::vector<std::array<std::uint32_t, 3>> pairs_of;
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> triplets_of;

  explicit TripletIndex(const Graph& g) {
    const std::size_t n = g.n();
    for_each_bad_triplet(g, [&](const BadTriplet& t) {
      pairs_of.push_back({static_cast<std::uint32_t>(pair_index(n, t.u, t.v)),
                          static_cast<std::uint32_t>(pair_index(n, t.v, t.w)),
                          static_cast<std::uint32_t>(pair_index(n, t.u, t.w))});
    });
    offsets.assign(num_pairs(n) + 1, 0);
    for (const auto& tp : pairs_of)
      for (auto e : tp) ++offsets[e + 1];
    for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
    triplets_of.resize(offsets.back());
    std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::uint32_t t = 0; t < pairs_of.size(); ++t)
      for (auto e : pairs_of[t]) triplets_of[fill[e]++] = t;
  }

  std::span<const std::uint32_t> containing(std::uint32_t pair) const {
    return {triplets_of.data() + offsets[pair], offsets[pair + 1] - offsets[pair]};
  }
};

// Variables are stored divided by 2^(kRescaleBits * rescales).
inline constexpr int kRescaleBits = 512;
inline constexpr double kRescaleLimit = 0x1.0p512;

// Applies one multiplicative round to z for triplet `t`; returns c_min.
inline double apply_round(const TripletIndex& idx, std::span<const double> costs,
                          double epsilon, std::uint32_t t, std::vector<double>& z) {
  const auto& tp = idx.pairs_of[t];
  const double c_min = std::min({costs[tp[0]], costs[tp[1]], costs[tp[2]]});
  for (auto e : tp) z[e] *= 1.0 + epsilon * (c_min / costs[e]);
  return c_min;
}

inline ChargeSolution charge_impl(const Graph& g, std::vector<double> costs, double epsilon,
                                  const ChargeOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  const std::size_t n = g.n();
  const std::size_t pairs = num_pairs(n);

  ChargeSolution sol;
  sol.n = n;
  sol.epsilon = epsilon;
  sol.x.assign(pairs, 0.0);

  const TripletIndex idx(g);
  sol.triplet_count = idx.pairs_of.size();
  if (idx.pairs_of.empty()) {
    sol.vacuous = true;
    return sol;
  }
  if (idx.pairs_of.size() >= std::numeric_limits<std::uint32_t>::max())
    throw std::length_error("too many bad triplets");

  double objective0 = 0.0;
  for (double c : costs) objective0 += c;
  const double log1p_eps = std::log1p(epsilon);
  const double log_b = std::log(objective0 * (1.0 + epsilon)) / epsilon - log1p_eps;
  sol.update_bound = log_b / log1p_eps + 1.0;

  std::vector<double> z(pairs, 1.0);
  std::vector<double> load(pairs, 0.0);
  double objective = objective0;
  std::uint32_t rescales = 0;
  double dual_counter = 0.0;

  auto triplet_sum = [&](std::uint32_t t) {
    const auto& tp = idx.pairs_of[t];
    return z[tp[0]] + z[tp[1]] + z[tp[2]];
  };
  std::vector<double> keys(idx.pairs_of.size());
  for (std::uint32_t t = 0; t < keys.size(); ++t) keys[t] = triplet_sum(t);
  IndexedMinHeap<double> heap(std::move(keys));

  double best_ratio = objective / heap.key(heap.top());
  std::uint64_t best_iteration = 0;
  std::vector<std::uint32_t> picks;

  const double log_scale = kRescaleBits * std::numbers::ln2;
  while (std::log(objective) + rescales * log_scale < log_b) {
    const std::uint32_t t = heap.top();
    const auto& tp = idx.pairs_of[t];
    const double c_min = std::min({costs[tp[0]], costs[tp[1]], costs[tp[2]]});
    // sum_e c_e z_e grows by eps * c_min * (z_uv + z_vw + z_wu).
    objective += epsilon * c_min * heap.key(t);
    apply_round(idx, costs, epsilon, t, z);
    bool overflow = false;
    for (auto e : tp) {
      load[e] += c_min / costs[e];
      overflow |= z[e] > kRescaleLimit;
      for (auto other : idx.containing(e)) heap.update(other, triplet_sum(other));
    }
    dual_counter += c_min;
    picks.push_back(t);
    ++sol.iterations;

    if (overflow) {
      for (auto& v : z) v = std::ldexp(v, -kRescaleBits);
      objective = std::ldexp(objective, -kRescaleBits);
      heap.transform_all([](double k) { return std::ldexp(k, -kRescaleBits); });
      ++rescales;
    }

    const double ratio = objective / heap.key(heap.top());
    if (ratio < best_ratio) {
      best_ratio = ratio;
      best_iteration = sol.iterations;
    }
    if (options.record_ratio_trace) sol.ratio_trace.push_back(best_ratio);
  }
  sol.rescales = rescales;
  sol.best_iteration = best_iteration;
  sol.max_pair_load = *std::max_element(load.begin(), load.end());

  // Rebuild the snapshot by replaying the first best_iteration rounds with
  // the same arithmetic as the run.
  std::vector<double> snap(pairs, 1.0);
  for (std::uint64_t i = 0; i < best_iteration; ++i) {
    const auto t = picks[i];
    apply_round(idx, costs, epsilon, t, snap);
    bool overflow = false;
    for (auto e : idx.pairs_of[t]) overflow |= snap[e] > kRescaleLimit;
    if (overflow)
      for (auto& v : snap) v = std::ldexp(v, -kRescaleBits);
  }
  double snap_min = std::numeric_limits<double>::infinity();
  for (const auto& tp : idx.pairs_of)
    snap_min = std::min(snap_min, snap[tp[0]] + snap[tp[1]] + snap[tp[2]]);

  double primal = 0.0;
  for (std::size_t e = 0; e < pairs; ++e) {
    sol.x[e] = costs[e] * (snap[e] / snap_min);
    primal += sol.x[e];
  }
  sol.primal_value = primal;
  sol.dual_value = dual_counter / sol.update_bound;
  sol.gap = sol.primal_value / sol.dual_value;
  return sol;
}

}  // namespace detail

// (1 + O(eps))-approximate solution of the unweighted charging LP.
inline ChargeSolution charge(const Graph& g, double epsilon, const ChargeOptions& options = {}) {
  return detail::charge_impl(g, std::vector<double>(num_pairs(g.n()), 1.0), epsilon, options);
}

// Node-weighted charging LP: every bad triplet needs
// x_uv/(w_u w_v) + x_vw/(w_v w_w) + x_wu/(w_w w_u) >= 1.
inline ChargeSolution charge_weighted(const WeightedInstance& inst, double epsilon,
                                      const ChargeOptions& options = {}) {
  const std::size_t n = inst.graph.n();
  if (inst.weights.size() != n)
    throw std::invalid_argument("weight vector size does not match node count");
  std::vector<double> costs(num_pairs(n));
  for (Node u = 0; u < n; ++u) {
    if (inst.weights[u] == 0) throw std::invalid_argument("node weights must be positive");
    for (Node v = u + 1; v < n; ++v)
      costs[pair_index(n, u, v)] =
          static_cast<double>(inst.weights[u]) * static_cast<double>(inst.weights[v]);
  }
  return detail::charge_impl(inst.graph, std::move(costs), epsilon, options);
}

}  // namespace ccpivot
