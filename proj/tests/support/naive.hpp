#pragma once

// Slow reference implementations for cross-checking. Deliberately share no
// code with the library beyond the Graph and Clustering containers.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ccpivot/core.hpp"

namespace naive {

using ccpivot::Graph;
using ccpivot::Node;

// Every set partition of {0..n-1}, as label vectors.
inline void for_each_partition(std::size_t n,
                               const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> labels(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == n) {
      f(labels);
      return;
    }
    for (int c = 0; c <= used; ++c) {
      labels[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  if (n == 0) {
    f(labels);
    return;
  }
  labels[0] = 0;
  rec(1, 1);
}

inline std::set<std::pair<Node, Node>> edge_set(const Graph& g) {
  std::set<std::pair<Node, Node>> e;
  for (Node u = 0; u < g.n(); ++u)
    for (Node v = u + 1; v < g.n(); ++v)
      if (g.has_edge(u, v)) e.insert({u, v});
  return e;
}

// |E symmetric-difference E_C| computed from explicit pair sets.
inline std::uint64_t cost(const Graph& g, const std::vector<int>& labels,
                          const std::vector<std::uint64_t>& weights = {}) {
  const auto e = edge_set(g);
  std::set<std::pair<Node, Node>> ec;
  for (Node u = 0; u < labels.size(); ++u)
    for (Node v = u + 1; v < labels.size(); ++v)
      if (labels[u] == labels[v]) ec.insert({u, v});
  std::uint64_t total = 0;
  auto w = [&](Node u) -> std::uint64_t { return weights.empty() ? 1 : weights[u]; };
  for (const auto& p : e)
    if (!ec.count(p)) total += w(p.first) * w(p.second);
  for (const auto& p : ec)
    if (!e.count(p)) total += w(p.first) * w(p.second);
  return total;
}

struct Pair {
  Node u, v;
};

inline std::optional<std::uint64_t> opt(const Graph& g,
                                        const std::vector<std::uint64_t>& weights = {},
                                        const std::vector<Pair>& together = {},
                                        const std::vector<Pair>& apart = {}) {
  std::optional<std::uint64_t> best;
  for_each_partition(g.n(), [&](const std::vector<int>& labels) {
    for (const auto& p : together)
      if (labels[p.u] != labels[p.v]) return;
    for (const auto& p : apart)
      if (labels[p.u] == labels[p.v]) return;
    const auto c = cost(g, labels, weights);
    if (!best || c < *best) best = c;
  });
  return best;
}

inline std::vector<Pair> pairs_of(const std::vector<ccpivot::NodePair>& ps) {
  std::vector<Pair> out;
  for (const auto& p : ps) out.push_back({p.u, p.v});
  return out;
}

// Minimum PIVOT cost over all pivot sequences, by plain recursion.
inline std::uint64_t best_pivot_cost(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<int> labels(n, -1);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::function<void(int)> rec = [&](int next) {
    bool any = false;
    for (Node u = 0; u < n; ++u) {
      if (labels[u] != -1) continue;
      any = true;
      std::vector<Node> taken{u};
      for (Node v = 0; v < n; ++v)
        if (labels[v] == -1 && v != u && g.has_edge(u, v)) taken.push_back(v);
      for (Node v : taken) labels[v] = next;
      rec(next + 1);
      for (Node v : taken) labels[v] = -1;
    }
    if (!any) best = std::min(best, cost(g, labels));
  };
  rec(0);
  return best;
}

// Number of unordered triples with exactly two edges.
inline std::size_t count_bad_triplets(const Graph& g) {
  std::size_t count = 0;
  for (Node a = 0; a < g.n(); ++a)
    for (Node b = 0; b < g.n(); ++b)
      for (Node c = 0; c < g.n(); ++c) {
        if (!(a < b && b < c)) continue;
        const int e = g.has_edge(a, b) + g.has_edge(b, c) + g.has_edge(a, c);
        count += e == 2;
      }
  return count;
}

}  // namespace naive
