#pragma once

// Invariant checks over a single instance, shared by the `verify` command and
// the test suites. An optional sidecar document `<stem>.expected.json` pins
// exact values:
//
//   {"opt":1,"infeasible":false,"pivot_cost":12,"best_pivot_cost":3,
//    "single_cluster_cost":5}
//
// All fields are optional; unknown fields are rejected.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ccpivot/charge.hpp"
#include "ccpivot/constrained.hpp"
#include "ccpivot/core.hpp"
#include "ccpivot/io.hpp"
#include "ccpivot/nodeweighted.hpp"
#include "ccpivot/oracle.hpp"
#include "ccpivot/pivot.hpp"

namespace ccpivot {

struct Expectations {
  std::optional<std::uint64_t> opt;
  std::optional<bool> infeasible;
  std::optional<std::uint64_t> pivot_cost;
  std::optional<std::uint64_t> best_pivot_cost;
  std::optional<std::uint64_t> single_cluster_cost;
};

inline Expectations parse_expectations(std::string_view text) {
  using detail::Json;
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(FormatErrc::kMalformed, e.what());
  }
  if (!doc.is_object()) throw FormatError(FormatErrc::kMalformed, "expected an object");
  Expectations ex;
  for (const auto& [key, value] : doc.items()) {
    if (key == "infeasible") {
      if (!value.is_boolean())
        throw FormatError(FormatErrc::kMalformed, "'infeasible' must be a boolean");
      ex.infeasible = value.get<bool>();
      continue;
    }
    std::optional<std::uint64_t>* slot = key == "opt"                   ? &ex.opt
                                         : key == "pivot_cost"          ? &ex.pivot_cost
                                         : key == "best_pivot_cost"     ? &ex.best_pivot_cost
                                         : key == "single_cluster_cost" ? &ex.single_cluster_cost
                                                                        : nullptr;
    if (!slot) throw FormatError(FormatErrc::kUnknownField, "field '" + key + "'");
    *slot = detail::read_count(value, key.c_str());
  }
  return ex;
}

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  double epsilon = 0.1;
  // Epsilon for the constrained pipeline.
  double constrained_epsilon = 0.01;
  // Seeds for the randomized algorithms, 1..random_runs.
  std::uint64_t random_runs = 20;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  }
  void add(std::string name, bool pass, std::string detail = {}) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
};

// Friendly pairs (any two nodes of one supernode) are adjacent with equal
// neighbourhoods; hostile pairs are non-adjacent with no common neighbour;
// every pair of supernodes is joined completely or not at all.
inline std::optional<std::string> transformed_structure_violation(
    const ConstrainedInstance& inst, const TransformResult& tr) {
  const Graph& g = tr.graph;
  const auto& sn = tr.supernodes;
  const std::size_t n = g.n();
  auto same_neighbourhood = [&](Node u, Node v) {
    for (Node w = 0; w < n; ++w)
      if (w != u && w != v && g.has_edge(u, w) != g.has_edge(v, w)) return false;
    return true;
  };
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) {
      const auto su = sn.of(u), sv = sn.of(v);
      if (su == sv) {
        if (!g.has_edge(u, v) || !same_neighbourhood(u, v))
          return "friendly nodes " + std::to_string(u) + "," + std::to_string(v) +
                 " are not twins";
        continue;
      }
      const Node ru = sn.members(su).front(), rv = sn.members(sv).front();
      if (g.has_edge(u, v) != g.has_edge(ru, rv))
        return "supernode block of " + std::to_string(u) + "," + std::to_string(v) +
               " is not all-or-nothing";
    }
  for (const auto& p : inst.hostile) {
    if (g.has_edge(p.u, p.v))
      return "hostile pair " + std::to_string(p.u) + "," + std::to_string(p.v) + " adjacent";
    for (Node w = 0; w < n; ++w)
      if (w != p.u && w != p.v && g.has_edge(p.u, w) && g.has_edge(p.v, w))
        return "hostile pair " + std::to_string(p.u) + "," + std::to_string(p.v) +
               " shares neighbour " + std::to_string(w);
  }
  return std::nullopt;
}

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline void check_charge(VerifyReport& r, const Graph& g, const ChargeSolution& sol,
                         std::span<const std::uint64_t> weights) {
  if (sol.vacuous) {
    r.add("charge-vacuous", std::all_of(sol.x.begin(), sol.x.end(), [](double v) { return v == 0; }));
    return;
  }
  const double coverage = min_triplet_coverage(g, sol.x, weights);
  r.add("charge-feasible", coverage >= 1.0 - 1e-9, "min coverage " + num(coverage));
  const double bound = charge_gap_bound(sol.epsilon);
  r.add("charge-gap", sol.dual_value <= sol.primal_value * (1 + 1e-12) && sol.gap <= bound + 1e-9,
        "gap " + num(sol.gap) + " bound " + num(bound));
  r.add("charge-iterations",
        sol.max_pair_load <= sol.update_bound + 1e-9 &&
            static_cast<double>(sol.iterations) <=
                static_cast<double>(num_pairs(g.n())) * sol.update_bound,
        "max load " + num(sol.max_pair_load) + " bound " + num(sol.update_bound));
}

inline void check_replay(VerifyReport& r, const Graph& g, const PivotResult& run,
                         const char* name) {
  const auto replay = run_pivot(g, SequenceRule{run.pivots});
  r.add(name, is_pivot_consistent(g, run) && replay.clustering == run.clustering);
}

inline void verify_graph(VerifyReport& r, const Graph& g, const Expectations& ex,
                         const VerifyOptions& opt) {
  const auto sol = charge(g, opt.epsilon);
  check_charge(r, g, sol, {});
  std::uint64_t det_cost = 0;
  try {
    const auto det = cluster_deterministic(g, sol);
    det_cost = cost(g, det.clustering);
    double total = 0;
    for (double v : sol.x) total += v;
    r.add("cluster-3x", true, "cost " + std::to_string(det_cost) + " <= " + num(3 * total));
    check_replay(r, g, det, "cluster-replay");
  } catch (const std::exception& e) {
    r.add("cluster-3x", false, e.what());
  }

  std::uint64_t worst = 0, best_seen = UINT64_MAX;
  bool consistent = true;
  for (std::uint64_t seed = 1; seed <= opt.random_runs; ++seed) {
    const auto run = run_pivot(g, UniformRule{seed});
    consistent &= is_pivot_consistent(g, run);
    const auto c = cost(g, run.clustering);
    worst = std::max(worst, c);
    best_seen = std::min(best_seen, c);
  }
  r.add("uniform-pivot-replay", consistent);
  if (ex.pivot_cost)
    r.add("pivot-cost", worst == *ex.pivot_cost && best_seen == *ex.pivot_cost,
          "range [" + std::to_string(best_seen) + "," + std::to_string(worst) + "]");
  if (ex.single_cluster_cost) {
    const auto c = cost(g, Clustering::one_cluster(g.n()));
    r.add("single-cluster-cost", c == *ex.single_cluster_cost, "cost " + std::to_string(c));
  }
  if (g.n() <= kOracleMaxNodes) {
    const auto exact = exact_cc(g);
    r.add("oracle-lower-bound", exact.cost <= det_cost && exact.cost <= best_seen,
          "opt " + std::to_string(exact.cost));
    r.add("cluster-vs-opt", det_cost <= (3.0 + opt.epsilon) * static_cast<double>(exact.cost),
          "cost " + std::to_string(det_cost) + " opt " + std::to_string(exact.cost));
    if (ex.opt) r.add("opt", exact.cost == *ex.opt, "opt " + std::to_string(exact.cost));
  } else if (ex.opt) {
    r.add("opt", false, "instance too large for the exact oracle");
  }
  if (ex.best_pivot_cost) {
    if (g.n() > kPivotSearchMaxNodes) {
      r.add("best-pivot-cost", false, "instance too large for pivot-order search");
    } else {
      const auto bp = best_pivot_order(g);
      const auto replay = run_pivot(g, SequenceRule{bp.order});
      r.add("best-pivot-cost",
            bp.cost == *ex.best_pivot_cost && cost(g, replay.clustering) == bp.cost,
            "best " + std::to_string(bp.cost));
    }
  }
}

inline void verify_constrained(VerifyReport& r, const ConstrainedInstance& inst,
                               const Expectations& ex, const VerifyOptions& opt) {
  const std::size_t n = inst.graph.n();
  std::optional<std::optional<ExactResult>> exact;
  if (n <= kOracleMaxNodes) exact = exact_constrained(inst);

  const auto outcome = constrained_cluster(inst, opt.constrained_epsilon);
  const bool infeasible = std::holds_alternative<Infeasible>(outcome);
  if (exact) r.add("feasibility-vs-oracle", infeasible == !exact->has_value());
  if (ex.infeasible) r.add("infeasible", infeasible == *ex.infeasible);
  if (infeasible) return;

  const auto& res = std::get<ConstrainedResult>(outcome);
  r.add("constraints-satisfied", satisfies_constraints(inst, res.pivot.clustering));
  const auto violation = transformed_structure_violation(inst, res.transform);
  r.add("transform-structure", !violation, violation.value_or(""));
  check_charge(r, res.transform.graph, res.charge, {});
  if (exact && exact->has_value()) {
    const double best = static_cast<double>((*exact)->cost);
    r.add("cost-16-opt", static_cast<double>(res.cost) <= 16.0 * best,
          "cost " + std::to_string(res.cost) + " opt " + num(best));
    r.add("preprocessing-bound",
          static_cast<double>(res.preprocessing_cost) <= 2.0 * std::numbers::phi * best + 1e-9,
          "|E^E'| " + std::to_string(res.preprocessing_cost) + " opt " + num(best));
    if (ex.opt) r.add("opt", (*exact)->cost == *ex.opt, "opt " + num(best));
  }
}

inline void verify_weighted(VerifyReport& r, const WeightedInstance& inst,
                            const Expectations& ex, const VerifyOptions& opt) {
  const Graph& g = inst.graph;
  std::uint64_t det_cost = UINT64_MAX;
  try {
    const auto det = nwcc_deterministic(inst, opt.epsilon);
    det_cost = det.cost;
    check_charge(r, g, det.charge, inst.weights);
    r.add("weighted-cluster-3x", true, "cost " + std::to_string(det.cost));
  } catch (const std::exception& e) {
    r.add("weighted-cluster-3x", false, e.what());
  }
  bool valid = true;
  std::uint64_t best_seen = UINT64_MAX;
  for (std::uint64_t seed = 1; seed <= opt.random_runs; ++seed) {
    const auto run = nwcc_randomized(inst, seed);
    const auto replay = run_pivot(g, SequenceRule{run.pivots});
    valid &= is_pivot_consistent(g, run) && replay.clustering == run.clustering;
    best_seen = std::min(best_seen, weighted_cost(inst, run.clustering));
  }
  r.add("randomized-replay", valid);
  if (g.n() <= kOracleMaxNodes) {
    const auto exact = exact_nwcc(inst);
    r.add("oracle-lower-bound", exact.cost <= det_cost && exact.cost <= best_seen,
          "opt " + std::to_string(exact.cost));
    if (ex.opt) r.add("opt", exact.cost == *ex.opt, "opt " + std::to_string(exact.cost));
  }
}

}  // namespace detail

inline VerifyReport verify_instance(const Instance& inst, const Expectations& ex = {},
                                    const VerifyOptions& opt = {}) {
  VerifyReport r;
  try {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Graph>)
            detail::verify_graph(r, x, ex, opt);
          else if constexpr (std::is_same_v<T, ConstrainedInstance>)
            detail::verify_constrained(r, x, ex, opt);
          else
            detail::verify_weighted(r, x, ex, opt);
        },
        inst);
  } catch (const std::exception& e) {
    r.add("no-exception", false, e.what());
  }
  return r;
}

}  // namespace ccpivot
