#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ccpivot {

// A property that the algorithms guarantee was found violated at run time.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using Node = std::uint32_t;

struct NodePair {
  Node u = 0;
  Node v = 0;

  // Canonical form has u < v.
  static NodePair canonical(Node a, Node b) {
    return a < b ? NodePair{a, b} : NodePair{b, a};
  }

  friend bool operator==(const NodePair&, const NodePair&) = default;
  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

inline std::size_t num_pairs(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

// Index of the unordered pair {u, v} (u != v) in lexicographic order over
// all pairs of a node set of size n.
inline std::size_t pair_index(std::size_t n, Node u, Node v) {
  if (u > v) std::swap(u, v);
  return static_cast<std::size_t>(u) * (2 * n - u - 1) / 2 + (v - u - 1);
}

// Undirected simple graph over nodes 0..n-1 stored as bit-packed adjacency
// rows. Symmetric and irreflexive.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n)
      : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

  static Graph from_edges(std::size_t n, std::span<const NodePair> edges) {
    Graph g(n);
    for (const auto& e : edges) g.add_edge(e.u, e.v);
    return g;
  }

  static Graph complete(std::size_t n) {
    Graph g(n);
    for (Node u = 0; u < n; ++u)
      for (Node v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t words_per_row() const { return words_; }

  bool has_edge(Node u, Node v) const {
    return (bits_[u * words_ + (v >> 6)] >> (v & 63)) & 1ULL;
  }

  // Returns true if the edge was newly inserted.
  bool add_edge(Node u, Node v) {
    check_pair(u, v);
    if (has_edge(u, v)) return false;
    flip(u, v);
    ++m_;
    return true;
  }

  // Returns true if the edge was present.
  bool remove_edge(Node u, Node v) {
    check_pair(u, v);
    if (!has_edge(u, v)) return false;
    flip(u, v);
    --m_;
    return true;
  }

  void set_edge(Node u, Node v, bool present) {
    if (present)
      add_edge(u, v);
    else
      remove_edge(u, v);
  }

  std::span<const std::uint64_t> row(Node u) const {
    return {bits_.data() + u * words_, words_};
  }

  std::size_t degree(Node u) const {
    std::size_t d = 0;
    for (auto w : row(u)) d += static_cast<std::size_t>(std::popcount(w));
    return d;
  }

  std::vector<Node> neighbors(Node u) const {
    std::vector<Node> out;
    for_each_neighbor(u, [&](Node v) { out.push_back(v); });
    return out;
  }

  template <typename F>
  void for_each_neighbor(Node u, F&& f) const {
    const auto r = row(u);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(static_cast<Node>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  // Edges in lexicographic order, u < v.
  std::vector<NodePair> edges() const {
    std::vector<NodePair> out;
    out.reserve(m_);
    for (Node u = 0; u < n_; ++u)
      for_each_neighbor(u, [&](Node v) {
        if (u < v) out.push_back({u, v});
      });
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.bits_ == b.bits_;
  }

 private:
  void check_pair(Node u, Node v) const {
    if (u >= n_ || v >= n_) throw std::out_of_range("node id out of range");
    if (u == v) throw std::invalid_argument("self-loop");
  }

  void flip(Node u, Node v) {
    bits_[u * words_ + (v >> 6)] ^= 1ULL << (v & 63);
    bits_[v * words_ + (u >> 6)] ^= 1ULL << (u & 63);
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t m_ = 0;
  std::vector<std::uint64_t> bits_;
};

// A partition of 0..n-1. Cluster ids are canonical: numbered 0..k-1 in order
// of each cluster's smallest member, so relabelled partitions compare equal.
class Clustering {
 public:
  Clustering() = default;

  static Clustering from_labels(std::span<const std::size_t> labels) {
    Clustering c;
    c.assignment_.resize(labels.size());
    std::unordered_map<std::size_t, std::uint32_t> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto [it, inserted] =
          seen.try_emplace(labels[i], static_cast<std::uint32_t>(seen.size()));
      c.assignment_[i] = it->second;
    }
    c.k_ = seen.size();
    return c;
  }

  static Clustering from_labels(std::initializer_list<std::size_t> labels) {
    return from_labels(std::span<const std::size_t>(labels.begin(), labels.size()));
  }

  // Every node must appear in exactly one cluster; empty clusters are dropped.
  static Clustering from_clusters(std::size_t n,
                                  const std::vector<std::vector<Node>>& clusters) {
    std::vector<std::size_t> labels(n, SIZE_MAX);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      for (Node u : clusters[c]) {
        if (u >= n) throw std::out_of_range("cluster member out of range");
        if (labels[u] != SIZE_MAX)
          throw std::invalid_argument("node " + std::to_string(u) +
                                      " appears in two clusters");
        labels[u] = c;
      }
    }
    for (std::size_t u = 0; u < n; ++u)
      if (labels[u] == SIZE_MAX)
        throw std::invalid_argument("node " + std::to_string(u) +
                                    " is not covered");
    return from_labels(labels);
  }

  static Clustering singletons(std::size_t n) {
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i;
    return from_labels(labels);
  }

  static Clustering one_cluster(std::size_t n) {
    return from_labels(std::vector<std::size_t>(n, 0));
  }

  std::size_t n() const { return assignment_.size(); }
  std::size_t k() const { return k_; }
  std::uint32_t cluster_of(Node u) const { return assignment_[u]; }
  bool together(Node u, Node v) const { return assignment_[u] == assignment_[v]; }
  std::span<const std::uint32_t> assignment() const { return assignment_; }

  // Clusters ordered by id, members ascending.
  std::vector<std::vector<Node>> clusters() const {
    std::vector<std::vector<Node>> out(k_);
    for (Node u = 0; u < assignment_.size(); ++u) out[assignment_[u]].push_back(u);
    return out;
  }

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<std::uint32_t> assignment_;
  std::size_t k_ = 0;
};

// Three nodes inducing exactly two edges; `missing` is the non-adjacent pair.
struct BadTriplet {
  Node u = 0, v = 0, w = 0;
  NodePair missing;

  // The node adjacent to both others.
  Node center() const {
    if (missing.u != u && missing.v != u) return u;
    if (missing.u != v && missing.v != v) return v;
    return w;
  }

  friend bool operator==(const BadTriplet&, const BadTriplet&) = default;
};

struct ConstrainedInstance {
  Graph graph;
  std::vector<NodePair> friendly;
  std::vector<NodePair> hostile;

  friend bool operator==(const ConstrainedInstance&, const ConstrainedInstance&) = default;
};

struct WeightedInstance {
  Graph graph;
  std::vector<std::uint64_t> weights;

  friend bool operator==(const WeightedInstance&, const WeightedInstance&) = default;
};

inline void check_same_size(const Graph& g, const Clustering& c) {
  if (g.n() != c.n())
    throw std::invalid_argument("clustering covers " + std::to_string(c.n()) +
                                " nodes but graph has " + std::to_string(g.n()));
}

// |E symmetric-difference E_C|.
inline std::uint64_t cost(const Graph& g, const Clustering& c) {
  check_same_size(g, c);
  std::uint64_t total = 0;
  const std::size_t n = g.n();
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      total += g.has_edge(u, v) != c.together(u, v);
  return total;
}

inline std::uint64_t weighted_cost(const WeightedInstance& inst, const Clustering& c) {
  check_same_size(inst.graph, c);
  if (inst.weights.size() != inst.graph.n())
    throw std::invalid_argument("weight vector size does not match node count");
  std::uint64_t total = 0;
  const std::size_t n = inst.graph.n();
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (inst.graph.has_edge(u, v) != c.together(u, v))
        total += inst.weights[u] * inst.weights[v];
  return total;
}

// Calls f(BadTriplet) for every bad triplet in lexicographic (u < v < w) order.
template <typename F>
void for_each_bad_triplet(const Graph& g, F&& f) {
  const std::size_t n = g.n();
  for (Node u = 0; u < n; ++u) {
    for (Node v = u + 1; v < n; ++v) {
      const bool uv = g.has_edge(u, v);
      for (Node w = v + 1; w < n; ++w) {
        const bool uw = g.has_edge(u, w);
        const bool vw = g.has_edge(v, w);
        if (uv + uw + vw != 2) continue;
        NodePair missing = !uv ? NodePair{u, v} : !uw ? NodePair{u, w} : NodePair{v, w};
        f(BadTriplet{u, v, w, missing});
      }
    }
  }
}

inline std::vector<BadTriplet> bad_triplets(const Graph& g) {
  std::vector<BadTriplet> out;
  for_each_bad_triplet(g, [&](const BadTriplet& t) { out.push_back(t); });
  return out;
}

inline bool satisfies_constraints(const ConstrainedInstance& inst, const Clustering& c) {
  for (const auto& p : inst.friendly)
    if (!c.together(p.u, p.v)) return false;
  for (const auto& p : inst.hostile)
    if (c.together(p.u, p.v)) return false;
  return true;
}

}  // namespace ccpivot
