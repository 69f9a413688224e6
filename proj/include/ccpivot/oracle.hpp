#pragma once

// Exact solvers for desk-scale instances. Set partitions are enumerated as
// restricted growth strings with the cost updated incrementally as each node
// is placed, pruning any branch whose partial cost already reaches the best
// complete one.

#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccpivot/core.hpp"

namespace ccpivot {

inline constexpr std::size_t kOracleMaxNodes = 12;
inline constexpr std::size_t kPivotSearchMaxNodes = 10;

struct ExactResult {
  Clustering clustering;
  std::uint64_t cost = 0;
};

namespace detail {

inline void check_oracle_size(std::size_t n, std::size_t limit) {
  if (n > limit)
    throw std::length_error("exact search is limited to n <= " + std::to_string(limit) +
                            " (got " + std::to_string(n) + ")");
}

enum class PairRule : std::uint8_t { kFree, kTogether, kApart, kContradiction };

class PartitionSearch {
 public:
  PartitionSearch(const Graph& g, std::span<const std::uint64_t> weights,
                  std::vector<PairRule> rules)
      : g_(g), n_(g.n()), weights_(weights), rules_(std::move(rules)), labels_(n_, 0),
        best_labels_(n_, 0) {}

  std::optional<ExactResult> run() {
    for (auto r : rules_)
      if (r == PairRule::kContradiction) return std::nullopt;
    if (n_ == 0) return ExactResult{Clustering::from_labels(std::vector<std::size_t>{}), 0};
    search(0, 0, 0);
    if (!found_) return std::nullopt;
    return ExactResult{Clustering::from_labels(best_labels_), best_};
  }

 private:
  std::uint64_t weight(Node u) const { return weights_.empty() ? 1 : weights_[u]; }
  PairRule rule(Node u, Node v) const { return rules_.empty() ? PairRule::kFree : rules_[u * n_ + v]; }

  void search(Node i, std::size_t clusters, std::uint64_t partial) {
    if (i == n_) {
      if (!found_ || partial < best_) {
        found_ = true;
        best_ = partial;
        best_labels_ = labels_;
      }
      return;
    }
    for (std::size_t c = 0; c <= clusters; ++c) {
      std::uint64_t add = 0;
      bool allowed = true;
      for (Node j = 0; j < i && allowed; ++j) {
        const bool same = labels_[j] == c;
        const auto r = rule(i, j);
        if ((r == PairRule::kTogether && !same) || (r == PairRule::kApart && same))
          allowed = false;
        else if (g_.has_edge(i, j) != same)
          add += weight(i) * weight(j);
      }
      if (!allowed) continue;
      if (found_ && partial + add >= best_) continue;
      labels_[i] = c;
      search(i + 1, c == clusters ? clusters + 1 : clusters, partial + add);
    }
  }

  const Graph& g_;
  std::size_t n_;
  std::span<const std::uint64_t> weights_;
  std::vector<PairRule> rules_;
  std::vector<std::size_t> labels_;
  std::vector<std::size_t> best_labels_;
  std::uint64_t best_ = 0;
  bool found_ = false;
};

}  // namespace detail

inline ExactResult exact_cc(const Graph& g) {
  detail::check_oracle_size(g.n(), kOracleMaxNodes);
  return *detail::PartitionSearch(g, {}, {}).run();
}

// nullopt when no partition satisfies every friendly and hostile pair.
inline std::optional<ExactResult> exact_constrained(const ConstrainedInstance& inst) {
  const std::size_t n = inst.graph.n();
  detail::check_oracle_size(n, kOracleMaxNodes);
  using detail::PairRule;
  std::vector<PairRule> rules(n * n, PairRule::kFree);
  auto mark = [&](const NodePair& p, PairRule r) {
    if (p.u >= n || p.v >= n || p.u == p.v)
      throw std::invalid_argument("constraint pair is out of range or a self-loop");
    for (auto idx : {p.u * n + p.v, p.v * n + p.u}) {
      auto& slot = rules[idx];
      slot = (slot == PairRule::kFree || slot == r) ? r : PairRule::kContradiction;
    }
  };
  for (const auto& p : inst.friendly) mark(p, PairRule::kTogether);
  for (const auto& p : inst.hostile) mark(p, PairRule::kApart);
  return detail::PartitionSearch(inst.graph, {}, std::move(rules)).run();
}

inline ExactResult exact_nwcc(const WeightedInstance& inst) {
  detail::check_oracle_size(inst.graph.n(), kOracleMaxNodes);
  if (inst.weights.size() != inst.graph.n())
    throw std::invalid_argument("weight vector size does not match node count");
  return *detail::PartitionSearch(inst.graph, inst.weights, {}).run();
}

struct PivotOrderResult {
  std::uint64_t cost = 0;
  std::vector<Node> order;
};

// Minimum PIVOT cost over all pivot sequences, memoized on the set of
// unclustered nodes.
inline PivotOrderResult best_pivot_order(const Graph& g) {
  const std::size_t n = g.n();
  detail::check_oracle_size(n, kPivotSearchMaxNodes);
  const std::uint32_t full = n == 0 ? 0 : (1u << n) - 1;
  std::vector<std::uint32_t> nbr(n, 0);
  for (Node u = 0; u < n; ++u)
    g.for_each_neighbor(u, [&](Node v) { nbr[u] |= 1u << v; });

  constexpr auto kUnset = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> best(std::size_t{1} << n, kUnset);
  std::vector<Node> choice(std::size_t{1} << n, 0);
  best[0] = 0;

  // Violations charged when `cluster` is cut out of `rest`: missing edges
  // inside it and edges leaving it.
  auto local_cost = [&](std::uint32_t cluster, std::uint32_t rest) {
    std::uint64_t c = 0;
    for (Node v = 0; v < n; ++v) {
      if (!((cluster >> v) & 1u)) continue;
      const std::uint32_t inside = cluster & ~(1u << v);
      c += std::popcount(inside & ~nbr[v]);  // counted twice
      c += 2 * std::popcount((rest & ~cluster) & nbr[v]);
    }
    return c / 2;
  };

  // States in increasing order of the mask: every proper subset is smaller.
  for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
    for (Node u = 0; u < n; ++u) {
      if (!((s >> u) & 1u)) continue;
      const std::uint32_t cluster = (1u << u) | (nbr[u] & s);
      const std::uint64_t c = local_cost(cluster, s) + best[s & ~cluster];
      if (c < best[s]) {
        best[s] = c;
        choice[s] = u;
      }
    }
    if (s == full) break;
  }

  PivotOrderResult out;
  out.cost = best[full];
  for (std::uint32_t s = full; s != 0;) {
    const Node u = choice[s];
    out.order.push_back(u);
    s &= ~((1u << u) | (nbr[u] & s));
  }
  return out;
}

}  // namespace ccpivot
