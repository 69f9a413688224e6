#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ccpivot/charge.hpp"
#include "ccpivot/core.hpp"
#include "ccpivot/rng.hpp"

namespace ccpivot {

// Pivot chosen uniformly among the unclustered nodes (CC-PIVOT).
struct UniformRule {
  std::uint64_t seed = 0;
};

// Pivot minimizing (#bad triplets at u) / (sum of x over the pair opposite u).
struct RatioRule {
  std::span<const double> charges;
};

// As RatioRule with numerator terms w_v * w_w.
struct WeightedRatioRule {
  std::span<const double> charges;
  std::span<const std::uint64_t> weights;
};

// Replays a recorded pivot order. Entries that are already clustered are
// skipped; if the order runs out, the smallest unclustered node is used.
struct SequenceRule {
  std::vector<Node> order;
};

using PivotRule = std::variant<UniformRule, RatioRule, WeightedRatioRule, SequenceRule>;

struct PivotResult {
  Clustering clustering;
  std::vector<Node> pivots;
};

class InfeasibleCharges : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

class AliveSet {
 public:
  explicit AliveSet(std::size_t n) : bits_((n + 63) / 64, ~0ULL), count_(n) {
    if (n % 64) bits_.back() = (1ULL << (n % 64)) - 1;
    if (n == 0) bits_.clear();
  }

  bool contains(Node u) const { return (bits_[u >> 6] >> (u & 63)) & 1ULL; }
  void erase(Node u) {
    bits_[u >> 6] &= ~(1ULL << (u & 63));
    --count_;
  }
  std::size_t size() const { return count_; }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t b = bits_[w];
      while (b) {
        f(static_cast<Node>(w * 64 + std::countr_zero(b)));
        b &= b - 1;
      }
    }
  }

  // Alive members of a graph row.
  template <typename F>
  void for_each_in(std::span<const std::uint64_t> row, F&& f) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t b = bits_[w] & row[w];
      while (b) {
        f(static_cast<Node>(w * 64 + std::countr_zero(b)));
        b &= b - 1;
      }
    }
  }

  Node first() const {
    for (std::size_t w = 0; w < bits_.size(); ++w)
      if (bits_[w]) return static_cast<Node>(w * 64 + std::countr_zero(bits_[w]));
    return 0;
  }

 private:
  std::vector<std::uint64_t> bits_;
  std::size_t count_;
};

// Runs PIVOT. The selector provides `Node select(const AliveSet&)` and
// `void on_remove(Node, const AliveSet&)`, the latter called after the node
// has been erased from the alive set.
template <typename Selector>
PivotResult run_pivot_with(const Graph& g, Selector& selector) {
  const std::size_t n = g.n();
  AliveSet alive(n);
  std::vector<std::size_t> labels(n, 0);
  PivotResult result;
  std::vector<Node> cluster;
  while (alive.size() > 0) {
    const Node u = selector.select(alive);
    if (u >= n || !alive.contains(u))
      throw InvariantViolation("pivot rule selected a clustered node");
    cluster.clear();
    cluster.push_back(u);
    alive.for_each_in(g.row(u), [&](Node v) { cluster.push_back(v); });
    const std::size_t id = result.pivots.size();
    result.pivots.push_back(u);
    for (Node v : cluster) {
      labels[v] = id;
      alive.erase(v);
      selector.on_remove(v, alive);
    }
  }
  result.clustering = Clustering::from_labels(labels);
  return result;
}

class UniformSelector {
 public:
  UniformSelector(std::size_t n, std::uint64_t seed) : rng_(seed), pos_(n) {
    nodes_.resize(n);
    for (Node u = 0; u < n; ++u) nodes_[u] = pos_[u] = u;
  }

  Node select(const AliveSet&) {
    return nodes_[static_cast<std::size_t>(rng_.below(nodes_.size()))];
  }

  void on_remove(Node u, const AliveSet&) {
    const Node last = nodes_.back();
    nodes_[pos_[u]] = last;
    pos_[last] = pos_[u];
    nodes_.pop_back();
  }

 private:
  Rng rng_;
  std::vector<Node> nodes_;
  std::vector<Node> pos_;
};

class SequenceSelector {
 public:
  SequenceSelector(std::size_t n, std::vector<Node> order)
      : n_(n), order_(std::move(order)) {}

  Node select(const AliveSet& alive) {
    while (next_ < order_.size()) {
      const Node u = order_[next_++];
      if (u < n_ && alive.contains(u)) return u;
    }
    return alive.first();
  }

  void on_remove(Node, const AliveSet&) {}

 private:
  std::size_t n_;
  std::vector<Node> order_;
  std::size_t next_ = 0;
};

// Maintains per-node sums over bad triplets of the remaining graph:
// num[u] = sum of w_v w_w and den[u] = sum of x_vw over triplets uvw.
class RatioSelector {
 public:
  RatioSelector(const Graph& g, std::span<const double> charges,
                std::span<const std::uint64_t> weights)
      : g_(g), x_(charges), weights_(weights), num_(g.n(), 0.0), den_(g.n(), 0.0) {
    for_each_bad_triplet(g, [&](const BadTriplet& t) {
      add(t.u, t.v, t.w, 1.0);
      add(t.v, t.u, t.w, 1.0);
      add(t.w, t.u, t.v, 1.0);
    });
  }

  Node select(const AliveSet& alive) {
    Node best = 0;
    bool have = false;
    alive.for_each([&](Node u) {
      if (!have || less(u, best)) {
        best = u;
        have = true;
      }
    });
    return best;
  }

  void on_remove(Node r, const AliveSet& alive) {
    // Every bad triplet {r, v, w} with v, w still alive leaves the graph.
    std::vector<Node> rest;
    alive.for_each([&](Node v) { rest.push_back(v); });
    for (std::size_t i = 0; i < rest.size(); ++i) {
      const Node v = rest[i];
      const bool rv = g_.has_edge(r, v);
      for (std::size_t j = i + 1; j < rest.size(); ++j) {
        const Node w = rest[j];
        if (rv + g_.has_edge(r, w) + g_.has_edge(v, w) != 2) continue;
        add(v, r, w, -1.0);
        add(w, r, v, -1.0);
      }
    }
  }

 private:
  double weight(Node u) const {
    return weights_.empty() ? 1.0 : static_cast<double>(weights_[u]);
  }

  void add(Node u, Node v, Node w, double sign) {
    num_[u] += sign * weight(v) * weight(w);
    den_[u] += sign * x_[pair_index(g_.n(), v, w)];
  }

  // 0 when the node is in no bad triplet, +inf when it is but carries no
  // charge, num/den otherwise. Compared by cross-multiplication.
  int ratio_class(Node u) const {
    if (num_[u] <= 0.0) return 0;
    if (den_[u] <= 0.0) return 2;
    return 1;
  }

  bool less(Node a, Node b) const {
    const int ca = ratio_class(a), cb = ratio_class(b);
    if (ca != cb) return ca < cb;
    if (ca != 1) return false;
    return num_[a] * den_[b] < num_[b] * den_[a];
  }

  const Graph& g_;
  std::span<const double> x_;
  std::span<const std::uint64_t> weights_;
  std::vector<double> num_;
  std::vector<double> den_;
};

inline void check_charges(const Graph& g, std::span<const double> x,
                          std::span<const std::uint64_t> weights) {
  if (x.size() != num_pairs(g.n()))
    throw std::invalid_argument("charge vector does not match the graph's pair count");
  if (!weights.empty() && weights.size() != g.n())
    throw std::invalid_argument("weight vector size does not match node count");
  const double coverage = min_triplet_coverage(g, x, weights);
  if (coverage < 1.0 - 1e-9)
    throw InfeasibleCharges("charges violate a bad-triplet constraint (coverage " +
                            std::to_string(coverage) + ")");
}

}  // namespace detail

inline PivotResult run_pivot(const Graph& g, const PivotRule& rule) {
  return std::visit(
      [&](const auto& r) -> PivotResult {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, UniformRule>) {
          detail::UniformSelector sel(g.n(), r.seed);
          return detail::run_pivot_with(g, sel);
        } else if constexpr (std::is_same_v<R, RatioRule>) {
          if (r.charges.size() != num_pairs(g.n()))
            throw std::invalid_argument("charge vector does not match the graph");
          detail::RatioSelector sel(g, r.charges, {});
          return detail::run_pivot_with(g, sel);
        } else if constexpr (std::is_same_v<R, WeightedRatioRule>) {
          if (r.charges.size() != num_pairs(g.n()) || r.weights.size() != g.n())
            throw std::invalid_argument("charges or weights do not match the graph");
          detail::RatioSelector sel(g, r.charges, r.weights);
          return detail::run_pivot_with(g, sel);
        } else {
          detail::SequenceSelector sel(g.n(), r.order);
          return detail::run_pivot_with(g, sel);
        }
      },
      rule);
}

// True iff every pivot's cluster is exactly the pivot plus its neighbours
// that were unclustered when it was chosen.
inline bool is_pivot_consistent(const Graph& g, const PivotResult& r) {
  const std::size_t n = g.n();
  if (r.clustering.n() != n || r.pivots.size() != r.clustering.k()) return false;
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    const Node u = r.pivots[i];
    if (u >= n || done[u]) return false;
    const auto id = r.clustering.cluster_of(u);
    for (Node v = 0; v < n; ++v) {
      const bool expected = v == u || (!done[v] && g.has_edge(u, v));
      if ((r.clustering.cluster_of(v) == id) != expected) return false;
    }
    for (Node v = 0; v < n; ++v)
      if (r.clustering.cluster_of(v) == id) done[v] = true;
  }
  return true;
}

// Deterministic PIVOT driven by a feasible charging-LP solution. The output
// cost never exceeds 3 * sum(x); a violation throws InvariantViolation.
inline PivotResult cluster_deterministic(const Graph& g, const ChargeSolution& sol) {
  detail::check_charges(g, sol.x, {});
  auto result = run_pivot(g, RatioRule{sol.x});
  double total = 0.0;
  for (double v : sol.x) total += v;
  const auto c = cost(g, result.clustering);
  if (static_cast<double>(c) > 3.0 * total * (1.0 + 1e-9) + 1e-9)
    throw InvariantViolation("deterministic pivot cost " + std::to_string(c) +
                             " exceeds 3 * total charge " + std::to_string(3.0 * total));
  return result;
}

inline PivotResult cluster_weighted_deterministic(const WeightedInstance& inst,
                                                  const ChargeSolution& sol) {
  detail::check_charges(inst.graph, sol.x, inst.weights);
  auto result = run_pivot(inst.graph, WeightedRatioRule{sol.x, inst.weights});
  double total = 0.0;
  for (double v : sol.x) total += v;
  const auto c = weighted_cost(inst, result.clustering);
  if (static_cast<double>(c) > 3.0 * total * (1.0 + 1e-9) + 1e-9)
    throw InvariantViolation("weighted deterministic pivot cost " + std::to_string(c) +
                             " exceeds 3 * total charge " + std::to_string(3.0 * total));
  return result;
}

}  // namespace ccpivot
