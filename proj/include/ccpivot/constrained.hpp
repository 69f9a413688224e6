#pragma once

// Constrained correlation clustering through graph transformation.
//
// Supernodes are the connected components of the friendly-pair graph. The
// transformation (1) completes every supernode to a clique, (2) deletes all
// edges between hostile supernodes, (3) while two hostile supernodes are
// both connected to a third, deletes one edge from each connection, and
// (4) rounds each pair of supernodes to all-or-nothing at the threshold
// (3 - sqrt 5) / 2. Any PIVOT run on the result respects all constraints.

#include <bit>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "ccpivot/charge.hpp"
#include "ccpivot/core.hpp"
#include "ccpivot/pivot.hpp"

namespace ccpivot {

inline constexpr double kRoundingThreshold = 2.0 - std::numbers::phi;  // (3 - sqrt5) / 2

class SupernodePartition {
 public:
  SupernodePartition() = default;

  SupernodePartition(std::size_t n, std::span<const NodePair> friendly)
      : parent_(n), size_(n, 1), id_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
    for (const auto& p : friendly) unite(p.u, p.v);
    std::vector<std::uint32_t> root_id(n, UINT32_MAX);
    for (Node u = 0; u < n; ++u) {
      const Node r = find(u);
      if (root_id[r] == UINT32_MAX) {
        root_id[r] = static_cast<std::uint32_t>(members_.size());
        members_.emplace_back();
      }
      id_[u] = root_id[r];
      members_[id_[u]].push_back(u);
    }
  }

  std::size_t count() const { return members_.size(); }
  // Supernode ids are ordered by smallest member.
  std::uint32_t of(Node u) const { return id_[u]; }
  const std::vector<std::vector<Node>>& supernodes() const { return members_; }
  const std::vector<Node>& members(std::uint32_t s) const { return members_[s]; }

 private:
  Node find(Node u) {
    while (parent_[u] != u) {
      parent_[u] = parent_[parent_[u]];
      u = parent_[u];
    }
    return u;
  }

  void unite(Node a, Node b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::vector<Node> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint32_t> id_;
  std::vector<std::vector<Node>> members_;
};

struct TransformOptions {
  // Keep the edge set after every phase (four O(n^2) graph copies).
  bool keep_snapshots = false;
};

struct TransformTrace {
  std::optional<Graph> e1, e2, e3, e4;
  // Each drop removes one edge of a connection to the shared supernode from
  // both hostile sides.
  std::vector<std::pair<NodePair, NodePair>> dropped_pairs;
  // Supernode id pairs (a < b) with at least one edge before rounding.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> rounded_up;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> rounded_down;
};

struct TransformResult {
  Graph graph;
  SupernodePartition supernodes;
  TransformTrace trace;
  // Elementary steps performed; O(n (n + m)).
  std::uint64_t operations = 0;
};

// Some hostile pair lies inside a single supernode.
struct Infeasible {
  NodePair witness;
};

using TransformOutcome = std::variant<TransformResult, Infeasible>;

inline TransformOutcome transform(const ConstrainedInstance& inst,
                                  const TransformOptions& options = {}) {
  const Graph& g = inst.graph;
  const std::size_t n = g.n();
  for (const auto* list : {&inst.friendly, &inst.hostile})
    for (const auto& p : *list)
      if (p.u >= n || p.v >= n || p.u == p.v)
        throw std::invalid_argument("constraint pair is out of range or a self-loop");

  TransformResult out;
  out.supernodes = SupernodePartition(n, inst.friendly);
  const auto& sn = out.supernodes;
  const std::size_t k = sn.count();
  std::uint64_t ops = n + inst.friendly.size();

  std::vector<char> hostile(k * k, 0);
  for (const auto& p : inst.hostile) {
    const auto a = sn.of(p.u), b = sn.of(p.v);
    if (a == b) return Infeasible{NodePair::canonical(p.u, p.v)};
    hostile[a * k + b] = hostile[b * k + a] = 1;
  }
  ops += inst.hostile.size();
  auto is_hostile = [&](std::uint32_t a, std::uint32_t b) { return hostile[a * k + b] != 0; };

  Graph e = g;
  for (const auto& members : sn.supernodes())
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j, ++ops)
        e.add_edge(members[i], members[j]);
  if (options.keep_snapshots) out.trace.e1 = e;

  for (const auto& edge : e.edges()) {
    ++ops;
    if (is_hostile(sn.of(edge.u), sn.of(edge.v))) e.remove_edge(edge.u, edge.v);
  }
  if (options.keep_snapshots) out.trace.e2 = e;

  // Inter-supernode edges grouped by supernode pair, each group in
  // lexicographic edge order, with a cursor to its smallest surviving edge.
  std::vector<NodePair> inter;
  for (const auto& edge : e.edges())
    if (sn.of(edge.u) != sn.of(edge.v)) inter.push_back(edge);
  ops += inter.size();
  auto block = [&](std::uint32_t a, std::uint32_t b) {
    return a < b ? a * k + b : b * k + a;
  };
  std::vector<std::uint32_t> count(k * k, 0);
  std::vector<std::uint32_t> offset(k * k + 1, 0);
  for (const auto& edge : inter) {
    const auto a = sn.of(edge.u), b = sn.of(edge.v);
    ++count[a * k + b];
    ++count[b * k + a];
    ++offset[block(a, b) + 1];
  }
  for (std::size_t i = 1; i < offset.size(); ++i) offset[i] += offset[i - 1];
  std::vector<NodePair> grouped(inter.size());
  {
    std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
    for (const auto& edge : inter) grouped[fill[block(sn.of(edge.u), sn.of(edge.v))]++] = edge;
  }
  std::vector<std::uint32_t> cursor(offset.begin(), offset.end() - 1);

  auto drop = [&](NodePair edge) {
    e.remove_edge(edge.u, edge.v);
    const auto a = sn.of(edge.u), b = sn.of(edge.v);
    --count[a * k + b];
    --count[b * k + a];
  };
  auto smallest_edge = [&](std::uint32_t a, std::uint32_t b) {
    const auto blk = block(a, b);
    while (!e.has_edge(grouped[cursor[blk]].u, grouped[cursor[blk]].v)) {
      ++cursor[blk];
      ++ops;
    }
    return grouped[cursor[blk]];
  };

  for (const auto& edge : inter) {
    if (!e.has_edge(edge.u, edge.v)) continue;
    const auto su = sn.of(edge.u), sv = sn.of(edge.v);
    for (std::uint32_t w = 0; w < k; ++w) {
      ++ops;
      if (w == su || w == sv) continue;
      std::optional<NodePair> partner;
      if (count[w * k + su] > 0 && is_hostile(w, sv))
        partner = smallest_edge(w, su);
      else if (count[w * k + sv] > 0 && is_hostile(w, su))
        partner = smallest_edge(w, sv);
      if (!partner) continue;
      drop(edge);
      drop(*partner);
      out.trace.dropped_pairs.emplace_back(edge, *partner);
      break;
    }
  }
  if (options.keep_snapshots) out.trace.e3 = e;

  for (std::uint32_t a = 0; a < k; ++a) {
    for (std::uint32_t b = a + 1; b < k; ++b) {
      ++ops;
      const std::uint32_t present = count[a * k + b];
      if (present == 0) continue;
      const auto& ua = sn.members(a);
      const auto& ub = sn.members(b);
      const double total = static_cast<double>(ua.size()) * static_cast<double>(ub.size());
      const bool up = static_cast<double>(present) > kRoundingThreshold * total;
      for (Node x : ua)
        for (Node y : ub) {
          e.set_edge(x, y, up);
          ++ops;
        }
      (up ? out.trace.rounded_up : out.trace.rounded_down).emplace_back(a, b);
    }
  }
  if (options.keep_snapshots) out.trace.e4 = e;

  out.graph = std::move(e);
  out.operations = ops;
  return out;
}

// |E symmetric-difference E'| between two graphs on the same node set.
inline std::uint64_t edge_distance(const Graph& a, const Graph& b) {
  if (a.n() != b.n()) throw std::invalid_argument("graphs differ in node count");
  std::uint64_t d = 0;
  for (Node u = 0; u < a.n(); ++u) {
    const auto ra = a.row(u), rb = b.row(u);
    for (std::size_t w = 0; w < ra.size(); ++w) d += std::popcount(ra[w] ^ rb[w]);
  }
  return d / 2;
}

struct ConstrainedResult {
  PivotResult pivot;
  std::uint64_t cost = 0;
  TransformResult transform;
  ChargeSolution charge;
  // |E symmetric-difference E'|.
  std::uint64_t preprocessing_cost = 0;
  // 3 * certified charge gap: the approximation factor of the pivot step.
  double certified_alpha = 0.0;
  // (alpha + 1)(1 + sqrt 5) + alpha.
  double certified_factor = 0.0;
};

using ConstrainedOutcome = std::variant<ConstrainedResult, Infeasible>;

inline double constrained_factor(double alpha) {
  return (alpha + 1.0) * (2.0 * std::numbers::phi) + alpha;
}

// Transform, then deterministic PIVOT on the transformed graph driven by a
// charge solution computed with eps / 3.
inline ConstrainedOutcome constrained_cluster(const ConstrainedInstance& inst, double epsilon,
                                              const TransformOptions& options = {}) {
  if (!(epsilon > 0.0 && epsilon < 3.0))
    throw std::invalid_argument("epsilon must lie in (0, 3)");
  auto outcome = transform(inst, options);
  if (auto* bad = std::get_if<Infeasible>(&outcome)) return *bad;

  ConstrainedResult res;
  res.transform = std::move(std::get<TransformResult>(outcome));
  const Graph& transformed = res.transform.graph;
  res.charge = charge(transformed, epsilon / 3.0);
  res.pivot = cluster_deterministic(transformed, res.charge);
  res.cost = cost(inst.graph, res.pivot.clustering);
  res.preprocessing_cost = edge_distance(inst.graph, transformed);
  res.certified_alpha = 3.0 * res.charge.gap;
  res.certified_factor = constrained_factor(res.certified_alpha);
  if (!satisfies_constraints(inst, res.pivot.clustering))
    throw InvariantViolation("constrained clustering violates a hard constraint");
  return res;
}

}  // namespace ccpivot
