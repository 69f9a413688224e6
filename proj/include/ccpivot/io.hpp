#pragma once

// Text instance documents:
//
//   {"n":4,"edges":[[0,2],[0,3]],"friendly":[[0,1]],"hostile":[[2,3]]}
//   {"n":3,"edges":[[0,1]],"weights":[2,3,1]}
//
// `n` and `edges` are required. The presence of `friendly` or `hostile`
// makes a constrained instance, `weights` a weighted one; both together are
// rejected, as is any other key. Serialization is compact single-line JSON
// with keys in the order above and edges sorted lexicographically.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "ccpivot/core.hpp"
#include "json.hpp"

namespace ccpivot {

enum class FormatErrc {
  kMalformed,
  kUnknownField,
  kOutOfRange,
  kSelfLoop,
  kDuplicateEdge,
  kNonpositiveWeight,
  kMixedInstance,
};

inline const char* to_string(FormatErrc code) {
  switch (code) {
    case FormatErrc::kMalformed: return "malformed";
    case FormatErrc::kUnknownField: return "unknown-field";
    case FormatErrc::kOutOfRange: return "node-out-of-range";
    case FormatErrc::kSelfLoop: return "self-loop";
    case FormatErrc::kDuplicateEdge: return "duplicate-edge";
    case FormatErrc::kNonpositiveWeight: return "nonpositive-weight";
    case FormatErrc::kMixedInstance: return "mixed-instance";
  }
  return "unknown";
}

class FormatError : public std::runtime_error {
 public:
  FormatError(FormatErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  FormatErrc code() const { return code_; }

 private:
  FormatErrc code_;
};

using Instance = std::variant<Graph, ConstrainedInstance, WeightedInstance>;

inline const Graph& graph_of(const Instance& inst) {
  return std::visit(
      [](const auto& x) -> const Graph& {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Graph>)
          return x;
        else
          return x.graph;
      },
      inst);
}

namespace detail {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

inline std::uint64_t read_count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw FormatError(FormatErrc::kMalformed,
                      std::string(what) + " must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

inline std::vector<NodePair> read_pairs(const Json& j, std::size_t n, const char* field) {
  if (!j.is_array())
    throw FormatError(FormatErrc::kMalformed, std::string(field) + " must be a list");
  std::vector<NodePair> out;
  out.reserve(j.size());
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
        !p[1].is_number_integer())
      throw FormatError(FormatErrc::kMalformed,
                        std::string(field) + " entries must be [u, v] integer pairs");
    const std::int64_t a = p[0].get<std::int64_t>();
    const std::int64_t b = p[1].get<std::int64_t>();
    if (a < 0 || b < 0 || static_cast<std::uint64_t>(a) >= n ||
        static_cast<std::uint64_t>(b) >= n)
      throw FormatError(FormatErrc::kOutOfRange,
                        std::string(field) + " pair [" + std::to_string(a) + "," +
                            std::to_string(b) + "] with n=" + std::to_string(n));
    if (a == b)
      throw FormatError(FormatErrc::kSelfLoop,
                        std::string(field) + " pair [" + std::to_string(a) + "," +
                            std::to_string(b) + "]");
    out.push_back(NodePair::canonical(static_cast<Node>(a), static_cast<Node>(b)));
  }
  return out;
}

inline OrderedJson write_pairs(const std::vector<NodePair>& pairs) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& p : pairs) {
    const auto c = NodePair::canonical(p.u, p.v);
    arr.push_back({c.u, c.v});
  }
  return arr;
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  using detail::Json;
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(FormatErrc::kMalformed, e.what());
  }
  if (!doc.is_object())
    throw FormatError(FormatErrc::kMalformed, "document must be a single object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "n" && key != "edges" && key != "friendly" && key != "hostile" &&
        key != "weights")
      throw FormatError(FormatErrc::kUnknownField, "field '" + key + "'");
  }
  if (!doc.contains("n")) throw FormatError(FormatErrc::kMalformed, "missing field 'n'");
  if (!doc.contains("edges"))
    throw FormatError(FormatErrc::kMalformed, "missing field 'edges'");
  const std::size_t n = detail::read_count(doc["n"], "n");
  if (n > (1u << 24)) throw FormatError(FormatErrc::kMalformed, "n is too large");

  Graph g(n);
  for (const auto& e : detail::read_pairs(doc["edges"], n, "edges")) {
    if (!g.add_edge(e.u, e.v))
      throw FormatError(FormatErrc::kDuplicateEdge,
                        "edge [" + std::to_string(e.u) + "," + std::to_string(e.v) + "]");
  }

  const bool constrained = doc.contains("friendly") || doc.contains("hostile");
  const bool weighted = doc.contains("weights");
  if (constrained && weighted)
    throw FormatError(FormatErrc::kMixedInstance,
                      "hard constraints and node weights cannot be combined");

  if (constrained) {
    ConstrainedInstance inst{std::move(g), {}, {}};
    if (doc.contains("friendly"))
      inst.friendly = detail::read_pairs(doc["friendly"], n, "friendly");
    if (doc.contains("hostile"))
      inst.hostile = detail::read_pairs(doc["hostile"], n, "hostile");
    return inst;
  }
  if (weighted) {
    const auto& w = doc["weights"];
    if (!w.is_array() || w.size() != n)
      throw FormatError(FormatErrc::kMalformed,
                        "weights must be a list of n=" + std::to_string(n) + " integers");
    WeightedInstance inst{std::move(g), {}};
    inst.weights.reserve(n);
    for (const auto& x : w) {
      if (!x.is_number_integer())
        throw FormatError(FormatErrc::kMalformed, "weights must be integers");
      if (x.is_number_unsigned() ? x.get<std::uint64_t>() == 0 : x.get<std::int64_t>() <= 0)
        throw FormatError(FormatErrc::kNonpositiveWeight,
                          "weight " + x.dump() + " at index " +
                              std::to_string(inst.weights.size()));
      inst.weights.push_back(x.get<std::uint64_t>());
    }
    return inst;
  }
  return g;
}

inline std::string serialize(const Graph& g) {
  detail::OrderedJson doc;
  doc["n"] = g.n();
  doc["edges"] = detail::write_pairs(g.edges());
  return doc.dump() + "\n";
}

inline std::string serialize(const ConstrainedInstance& inst) {
  detail::OrderedJson doc;
  doc["n"] = inst.graph.n();
  doc["edges"] = detail::write_pairs(inst.graph.edges());
  doc["friendly"] = detail::write_pairs(inst.friendly);
  doc["hostile"] = detail::write_pairs(inst.hostile);
  return doc.dump() + "\n";
}

inline std::string serialize(const WeightedInstance& inst) {
  detail::OrderedJson doc;
  doc["n"] = inst.graph.n();
  doc["edges"] = detail::write_pairs(inst.graph.edges());
  doc["weights"] = inst.weights;
  return doc.dump() + "\n";
}

inline std::string serialize(const Instance& inst) {
  return std::visit([](const auto& x) { return serialize(x); }, inst);
}

// {"clusters":[[0,1],[2]],"cost":1}
inline std::string serialize_clustering(const Clustering& c, std::uint64_t cost_value) {
  detail::OrderedJson doc;
  doc["clusters"] = c.clusters();
  doc["cost"] = cost_value;
  return doc.dump() + "\n";
}

struct ClusteringDocument {
  Clustering clustering;
  std::uint64_t cost = 0;
};

inline ClusteringDocument parse_clustering(std::string_view text, std::size_t n) {
  using detail::Json;
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(FormatErrc::kMalformed, e.what());
  }
  if (!doc.is_object()) throw FormatError(FormatErrc::kMalformed, "expected an object");
  for (const auto& [key, _] : doc.items())
    if (key != "clusters" && key != "cost")
      throw FormatError(FormatErrc::kUnknownField, "field '" + key + "'");
  if (!doc.contains("clusters") || !doc["clusters"].is_array())
    throw FormatError(FormatErrc::kMalformed, "missing 'clusters' list");
  std::vector<std::vector<Node>> clusters;
  for (const auto& c : doc["clusters"]) {
    if (!c.is_array()) throw FormatError(FormatErrc::kMalformed, "cluster must be a list");
    auto& out = clusters.emplace_back();
    for (const auto& u : c) {
      if (!u.is_number_integer())
        throw FormatError(FormatErrc::kMalformed, "cluster members must be integers");
      const auto id = u.get<std::int64_t>();
      if (id < 0 || static_cast<std::uint64_t>(id) >= n)
        throw FormatError(FormatErrc::kOutOfRange, "cluster member " + std::to_string(id));
      out.push_back(static_cast<Node>(id));
    }
  }
  ClusteringDocument result;
  try {
    result.clustering = Clustering::from_clusters(n, clusters);
  } catch (const std::invalid_argument& e) {
    throw FormatError(FormatErrc::kMalformed, e.what());
  }
  if (!doc.contains("cost")) throw FormatError(FormatErrc::kMalformed, "missing 'cost'");
  result.cost = detail::read_count(doc["cost"], "cost");
  return result;
}

}  // namespace ccpivot
