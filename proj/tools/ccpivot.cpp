// Command-line front end. Machine-readable documents go to stdout, human
// summaries to stderr. Exit status: 0 success, 2 infeasible, 64 usage or
// input error, 70 internal invariant violation.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ccpivot/ccpivot.hpp"

namespace fs = std::filesystem;
using namespace ccpivot;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CCPIVOT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("CCPIVOT_SEED is not an integer: ") + env);
    }
  }
  return 1;
}

std::string read_text(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load(const std::string& path) { return parse_instance(read_text(path)); }

Json pairs_json(const std::vector<NodePair>& pairs) {
  Json arr = Json::array();
  for (const auto& p : pairs) arr.push_back({p.u, p.v});
  return arr;
}

double sum(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v;
  return s;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::size_t half = 2, n = 10, k = 2;
  double p = 0.5, flip = 0.1;
  std::size_t friendly = 2, hostile = 2;
  std::uint64_t max_weight = 8;
  std::uint64_t seed = 1;
};

void add_gen(CLI::App& app, GenArgs& a, std::string& out) {
  auto* gen = app.add_subcommand("gen", "Generate an instance document");
  gen->require_subcommand(1);
  auto seeded = [&](CLI::App* c) { c->add_option("--seed", a.seed, "Seed")->capture_default_str(); };

  auto* lb = gen->add_subcommand("matching-lb", "K_2h minus a perfect matching");
  lb->add_option("--half", a.half, "h")->required()->check(CLI::PositiveNumber);
  lb->callback([&] { out = serialize(matching_lower_bound(a.half)); });

  auto* cme = gen->add_subcommand("complete-minus-edge", "K_n minus edge (0,1)");
  cme->add_option("--n", a.n, "Node count")->required()->check(CLI::Range(2, 1 << 16));
  cme->callback([&] { out = serialize(complete_minus_edge(a.n)); });

  auto* gnp_cmd = gen->add_subcommand("gnp", "Erdos-Renyi G(n, p)");
  gnp_cmd->add_option("--n", a.n, "Node count")->required();
  gnp_cmd->add_option("--p", a.p, "Edge probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  seeded(gnp_cmd);
  gnp_cmd->callback([&] { out = serialize(gnp(a.n, a.p, a.seed)); });

  auto* pl = gen->add_subcommand("planted", "k planted clusters with random flips");
  pl->add_option("--n", a.n, "Node count")->required();
  pl->add_option("--k", a.k, "Cluster count")->required();
  pl->add_option("--flip", a.flip, "Flip probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  seeded(pl);
  pl->callback([&] { out = serialize(planted(a.n, a.k, a.flip, a.seed)); });

  auto* con = gen->add_subcommand("constrained", "G(n, p) with random friendly/hostile pairs");
  con->add_option("--n", a.n, "Node count")->required();
  con->add_option("--p", a.p, "Edge probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  con->add_option("--friendly", a.friendly, "Friendly pair count")->capture_default_str();
  con->add_option("--hostile", a.hostile, "Hostile pair count")->capture_default_str();
  seeded(con);
  con->callback([&] {
    out = serialize(random_constrained(a.n, a.p, a.friendly, a.hostile, a.seed));
  });

  auto* w = gen->add_subcommand("weighted", "G(n, p) with weights in [1, max]");
  w->add_option("--n", a.n, "Node count")->required();
  w->add_option("--p", a.p, "Edge probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  w->add_option("--max-weight", a.max_weight, "Largest weight")->capture_default_str()->check(CLI::PositiveNumber);
  seeded(w);
  w->callback([&] { out = serialize(random_weighted(a.n, a.p, a.max_weight, a.seed)); });
}

// ---- solvers ---------------------------------------------------------------

struct SolveArgs {
  std::string input;
  std::string rule = "uniform";
  std::uint64_t seed = 1;
  double epsilon = 0.1;
};

int run_solve(const SolveArgs& a, std::string& out) {
  const Instance inst = load(a.input);
  const Graph& g = graph_of(inst);
  PivotResult result;
  std::uint64_t c = 0;
  if (a.rule == "uniform") {
    result = run_pivot(g, UniformRule{a.seed});
    c = cost(g, result.clustering);
    std::cerr << "uniform pivot, seed " << a.seed << ": cost " << c << "\n";
  } else if (a.rule == "ratio") {
    const auto sol = charge(g, a.epsilon / 3.0);
    result = cluster_deterministic(g, sol);
    c = cost(g, result.clustering);
    std::cerr << "ratio pivot: cost " << c << ", 3*sum(x) " << 3 * sum(sol.x) << ", gap "
              << sol.gap << "\n";
  } else if (a.rule == "weighted-ratio") {
    const auto* w = std::get_if<WeightedInstance>(&inst);
    if (!w) throw UsageError("--rule weighted-ratio needs an instance with weights");
    const auto res = nwcc_deterministic(*w, a.epsilon);
    result = res.pivot;
    c = res.cost;
    std::cerr << "weighted ratio pivot: weighted cost " << c << ", 3*sum(x) "
              << 3 * sum(res.charge.x) << ", gap " << res.charge.gap << "\n";
  } else {
    throw UsageError("unknown rule " + a.rule);
  }
  out = serialize_clustering(result.clustering, c);
  return kExitOk;
}

struct ConstrainedArgs {
  std::string input;
  double epsilon = 0.01;
  std::string trace_path;
};

Json trace_json(const TransformResult& tr) {
  Json doc;
  doc["supernodes"] = tr.supernodes.supernodes();
  for (const auto& [name, snap] : {std::pair{"e1", &tr.trace.e1}, std::pair{"e2", &tr.trace.e2},
                                   std::pair{"e3", &tr.trace.e3}, std::pair{"e4", &tr.trace.e4}})
    doc[name] = pairs_json(snap->has_value() ? (*snap)->edges() : std::vector<NodePair>{});
  Json dropped = Json::array();
  for (const auto& [a, b] : tr.trace.dropped_pairs)
    dropped.push_back({{a.u, a.v}, {b.u, b.v}});
  doc["dropped_pairs"] = dropped;
  doc["rounded_up"] = tr.trace.rounded_up;
  doc["rounded_down"] = tr.trace.rounded_down;
  doc["operations"] = tr.operations;
  return doc;
}

int run_constrained(const ConstrainedArgs& a, std::string& out) {
  const Instance inst = load(a.input);
  const auto* ci = std::get_if<ConstrainedInstance>(&inst);
  ConstrainedInstance plain;
  if (!ci) {
    plain.graph = graph_of(inst);
    ci = &plain;
  }
  TransformOptions opts;
  opts.keep_snapshots = !a.trace_path.empty();
  const auto outcome = constrained_cluster(*ci, a.epsilon, opts);
  if (const auto* bad = std::get_if<Infeasible>(&outcome)) {
    std::cerr << "infeasible: nodes " << bad->witness.u << " and " << bad->witness.v
              << " are friendly-connected but hostile\n";
    return kExitInfeasible;
  }
  const auto& res = std::get<ConstrainedResult>(outcome);
  if (!a.trace_path.empty()) {
    std::ofstream f(a.trace_path);
    if (!f) throw UsageError("cannot write " + a.trace_path);
    f << trace_json(res.transform).dump() << "\n";
  }
  std::cerr << "constrained: cost " << res.cost << ", preprocessing |E^E'| "
            << res.preprocessing_cost << ", certified factor " << res.certified_factor << "\n";
  out = serialize_clustering(res.pivot.clustering, res.cost);
  return kExitOk;
}

struct WeightedArgs {
  std::string input;
  std::string mode = "det";
  double epsilon = 0.1;
  std::uint64_t seed = 1;
  std::uint64_t trials = 1;
};

int run_weighted(const WeightedArgs& a, std::string& out) {
  const Instance inst = load(a.input);
  const auto* w = std::get_if<WeightedInstance>(&inst);
  if (!w) throw UsageError("solve-weighted needs an instance with weights");
  if (a.mode == "det") {
    const auto res = nwcc_deterministic(*w, a.epsilon);
    std::cerr << "deterministic: weighted cost " << res.cost << ", 3*sum(x) "
              << 3 * sum(res.charge.x) << ", gap " << res.charge.gap << "\n";
    out = serialize_clustering(res.pivot.clustering, res.cost);
    return kExitOk;
  }
  if (a.mode != "rand") throw UsageError("unknown mode " + a.mode);
  if (a.trials == 0) throw UsageError("--trials must be positive");
  // Emits the cheapest run; the mean goes to stderr.
  Clustering best;
  std::uint64_t best_cost = UINT64_MAX;
  double total = 0;
  for (std::uint64_t t = 0; t < a.trials; ++t) {
    const auto r = nwcc_randomized(*w, a.seed + t);
    const auto c = weighted_cost(*w, r.clustering);
    total += static_cast<double>(c);
    if (c < best_cost) {
      best_cost = c;
      best = r.clustering;
    }
  }
  std::cerr << "randomized: " << a.trials << " runs, mean weighted cost "
            << total / static_cast<double>(a.trials) << ", best " << best_cost << "\n";
  out = serialize_clustering(best, best_cost);
  return kExitOk;
}

struct ChargeArgs {
  std::string input;
  double epsilon = 0.1;
};

int run_charge(const ChargeArgs& a, std::string& out) {
  const Instance inst = load(a.input);
  const auto* w = std::get_if<WeightedInstance>(&inst);
  const auto sol = w ? charge_weighted(*w, a.epsilon) : charge(graph_of(inst), a.epsilon);
  Json doc;
  doc["n"] = sol.n;
  doc["epsilon"] = sol.epsilon;
  doc["vacuous"] = sol.vacuous;
  doc["iterations"] = sol.iterations;
  doc["primal"] = sol.primal_value;
  doc["dual"] = sol.dual_value;
  doc["gap"] = sol.gap;
  doc["gap_bound"] = charge_gap_bound(a.epsilon);
  Json x = Json::array();
  for (Node u = 0; u < sol.n; ++u)
    for (Node v = u + 1; v < sol.n; ++v) {
      const double val = sol.charge(u, v);
      if (val >= 1e-12) x.push_back({u, v, val});
    }
  doc["x"] = x;
  std::cerr << "charge: primal " << sol.primal_value << ", dual " << sol.dual_value << ", gap "
            << sol.gap << " (bound " << charge_gap_bound(a.epsilon) << "), " << sol.iterations
            << " iterations\n";
  out = doc.dump() + "\n";
  return kExitOk;
}

struct OracleArgs {
  std::string input;
  bool pivot_order = false;
};

int run_oracle(const OracleArgs& a, std::string& out) {
  const Instance inst = load(a.input);
  if (a.pivot_order) {
    const auto r = best_pivot_order(graph_of(inst));
    Json doc;
    doc["cost"] = r.cost;
    doc["order"] = r.order;
    out = doc.dump() + "\n";
    return kExitOk;
  }
  if (const auto* ci = std::get_if<ConstrainedInstance>(&inst)) {
    const auto r = exact_constrained(*ci);
    if (!r) {
      std::cerr << "infeasible: no partition satisfies the hard constraints\n";
      return kExitInfeasible;
    }
    out = serialize_clustering(r->clustering, r->cost);
  } else if (const auto* w = std::get_if<WeightedInstance>(&inst)) {
    const auto r = exact_nwcc(*w);
    out = serialize_clustering(r.clustering, r.cost);
  } else {
    const auto r = exact_cc(std::get<Graph>(inst));
    out = serialize_clustering(r.clustering, r.cost);
  }
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string dir;
  unsigned jobs = 1;
};

int run_verify(const VerifyArgs& a, std::string& out) {
  if (!fs::is_directory(a.dir)) throw UsageError(a.dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && entry.path().extension() == ".json" &&
        name.find(".expected.") == std::string::npos)
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<VerifyReport> reports(files.size());
  std::vector<std::string> errors(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      try {
        const Instance inst = load(files[i].string());
        Expectations ex;
        auto side = files[i];
        side.replace_extension(".expected.json");
        if (fs::exists(side)) ex = parse_expectations(read_text(side.string()));
        reports[i] = verify_instance(inst, ex);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < std::max(1u, a.jobs); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream table;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto name = files[i].filename().string();
    if (!errors[i].empty()) {
      ++failed;
      table << "FAIL\t" << name << "\tload\t" << errors[i] << "\n";
      continue;
    }
    for (const auto& c : reports[i].checks)
      table << (c.pass ? "PASS" : "FAIL") << "\t" << name << "\t" << c.name << "\t" << c.detail
            << "\n";
    if (!reports[i].pass()) ++failed;
  }
  out = table.str();
  std::cerr << files.size() - failed << "/" << files.size() << " instances pass\n";
  if (files.empty()) throw UsageError("no instance documents in " + a.dir);
  return failed == 0 ? kExitOk : kExitInternal;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::size_t n = 1000;
  std::uint64_t trials = 1000000;
  double p = 0.5;
  double epsilon = 0.1;
  std::uint64_t seed = 1;
};

std::vector<std::uint64_t> log_uniform_weights(std::size_t n, Rng& rng) {
  std::vector<std::uint64_t> w(n);
  for (auto& x : w) {
    const auto e = rng.below(20);
    x = (1ULL << e) + rng.below(1ULL << e);
  }
  return w;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

int run_bench_sampler(const BenchArgs& a, std::string& out) {
  Rng rng(a.seed);
  const auto w = log_uniform_weights(a.n, rng);
  DecrementalSampler probe{std::span<const std::uint64_t>(w)};
  std::vector<double> hist(a.n, 0);
  for (std::uint64_t t = 0; t < a.trials; ++t) ++hist[probe.draw(rng)];
  double total = 0, tv = 0;
  for (auto x : w) total += static_cast<double>(x);
  for (std::size_t i = 0; i < a.n; ++i)
    tv += std::abs(hist[i] / static_cast<double>(a.trials) - static_cast<double>(w[i]) / total);
  tv /= 2;

  const auto start = std::chrono::steady_clock::now();
  DecrementalSampler s{std::span<const std::uint64_t>(w)};
  while (!s.empty()) s.sample(rng);
  const double ms = elapsed_ms(start);
  const auto& c = s.counters();
  Json doc;
  doc["n"] = a.n;
  doc["trials"] = a.trials;
  doc["tv_distance"] = tv;
  doc["construction_ops"] = c.construction;
  doc["rebuild_ops"] = c.rebuild;
  doc["bucket_draws"] = c.bucket_draws;
  doc["element_draws"] = c.element_draws;
  doc["total_ops"] = c.total();
  doc["ops_per_element"] = static_cast<double>(c.total()) / static_cast<double>(a.n);
  doc["drain_ms"] = ms;
  out = doc.dump() + "\n";
  std::cerr << "sampler n=" << a.n << ": TV " << tv << ", " << doc["ops_per_element"]
            << " ops per element\n";
  return kExitOk;
}

int run_bench_charge(const BenchArgs& a, std::string& out) {
  const auto g = gnp(a.n, a.p, a.seed);
  const auto start = std::chrono::steady_clock::now();
  const auto sol = charge(g, a.epsilon);
  const double ms = elapsed_ms(start);
  Json doc;
  doc["n"] = a.n;
  doc["triplets"] = sol.triplet_count;
  doc["iterations"] = sol.iterations;
  doc["iteration_bound"] = static_cast<double>(num_pairs(a.n)) * sol.update_bound;
  doc["max_pair_load"] = sol.max_pair_load;
  doc["update_bound"] = sol.update_bound;
  doc["gap"] = sol.gap;
  doc["ms"] = ms;
  out = doc.dump() + "\n";
  return kExitOk;
}

int run_bench_transform(const BenchArgs& a, std::string& out) {
  ConstrainedInstance inst;
  TransformOutcome outcome = Infeasible{};
  std::uint64_t seed = a.seed;
  for (int attempt = 0; attempt < 100 && std::holds_alternative<Infeasible>(outcome); ++attempt) {
    inst = random_constrained(a.n, a.p, a.n / 4, a.n / 10, seed++);
    outcome = transform(inst);
  }
  if (std::holds_alternative<Infeasible>(outcome))
    throw UsageError("no satisfiable instance found for these parameters");
  const auto start = std::chrono::steady_clock::now();
  const auto& tr = std::get<TransformResult>(transform(inst));
  const double ms = elapsed_ms(start);
  const double scale =
      static_cast<double>(a.n) * static_cast<double>(a.n + inst.graph.m());
  Json doc;
  doc["n"] = a.n;
  doc["m"] = inst.graph.m();
  doc["operations"] = tr.operations;
  doc["ops_per_n_n_plus_m"] = static_cast<double>(tr.operations) / scale;
  doc["ms"] = ms;
  out = doc.dump() + "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation clustering toolkit"};
  app.require_subcommand(1);
  std::string out;
  int status = kExitOk;

  std::uint64_t seed;
  try {
    seed = default_seed();
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  GenArgs gen_args;
  gen_args.seed = seed;
  add_gen(app, gen_args, out);

  SolveArgs solve_args;
  solve_args.seed = seed;
  auto* solve = app.add_subcommand("solve", "PIVOT with a chosen rule");
  solve->add_option("input", solve_args.input, "Instance document (default stdin)");
  solve->add_option("--rule", solve_args.rule, "uniform | ratio | weighted-ratio")
      ->capture_default_str()
      ->check(CLI::IsMember({"uniform", "ratio", "weighted-ratio"}));
  solve->add_option("--seed", solve_args.seed, "Seed for the uniform rule")->capture_default_str();
  solve->add_option("--epsilon", solve_args.epsilon, "Accuracy for the ratio rules")
      ->capture_default_str()
      ->check(CLI::Range(1e-6, 2.999));
  solve->callback([&] { status = run_solve(solve_args, out); });

  ConstrainedArgs con_args;
  auto* con = app.add_subcommand("solve-constrained", "Clustering under friendly/hostile pairs");
  con->add_option("input", con_args.input, "Instance document (default stdin)");
  con->add_option("--epsilon", con_args.epsilon, "Accuracy")->capture_default_str()->check(CLI::Range(1e-6, 2.999));
  con->add_option("--emit-trace", con_args.trace_path, "Write the transformation trace here");
  con->callback([&] { status = run_constrained(con_args, out); });

  WeightedArgs w_args;
  w_args.seed = seed;
  auto* wsub = app.add_subcommand("solve-weighted", "Node-weighted clustering");
  wsub->add_option("input", w_args.input, "Instance document (default stdin)");
  wsub->add_option("--mode", w_args.mode, "det | rand")->capture_default_str()->check(CLI::IsMember({"det", "rand"}));
  wsub->add_option("--epsilon", w_args.epsilon, "Accuracy for det")->capture_default_str()->check(CLI::Range(1e-6, 2.999));
  wsub->add_option("--seed", w_args.seed, "First seed for rand")->capture_default_str();
  wsub->add_option("--trials", w_args.trials, "Runs for rand")->capture_default_str();
  wsub->callback([&] { status = run_weighted(w_args, out); });

  ChargeArgs charge_args;
  auto* ch = app.add_subcommand("charge", "Approximate the charging LP");
  ch->add_option("input", charge_args.input, "Instance document (default stdin)");
  ch->add_option("--epsilon", charge_args.epsilon, "Accuracy in (0, 1)")->capture_default_str()->check(CLI::Range(1e-6, 0.999999));
  ch->callback([&] { status = run_charge(charge_args, out); });

  OracleArgs oracle_args;
  auto* orc = app.add_subcommand("oracle", "Exact optimum by enumeration (n <= 12)");
  orc->add_option("input", oracle_args.input, "Instance document (default stdin)");
  orc->add_flag("--pivot-order", oracle_args.pivot_order, "Best PIVOT order instead (n <= 10)");
  orc->callback([&] { status = run_oracle(oracle_args, out); });

  VerifyArgs verify_args;
  auto* ver = app.add_subcommand("verify", "Run invariant checks over a directory of instances");
  ver->add_option("dir", verify_args.dir, "Directory of *.json instances")->required();
  ver->add_option("--jobs", verify_args.jobs, "Parallel workers")->capture_default_str();
  ver->callback([&] { status = run_verify(verify_args, out); });

  BenchArgs bench_args;
  bench_args.seed = seed;
  auto* bench = app.add_subcommand("bench", "Operation-counter and timing reports");
  bench->require_subcommand(1);
  auto bench_opts = [&](CLI::App* c) {
    c->add_option("--n", bench_args.n, "Size")->capture_default_str();
    c->add_option("--seed", bench_args.seed, "Seed")->capture_default_str();
  };
  auto* bs = bench->add_subcommand("sampler", "Sampler distribution and lifetime work");
  bench_opts(bs);
  bs->add_option("--trials", bench_args.trials, "First-draw trials")->capture_default_str();
  bs->callback([&] { status = run_bench_sampler(bench_args, out); });
  auto* bc = bench->add_subcommand("charge", "Charging LP on G(n, p)");
  bench_opts(bc);
  bc->add_option("--p", bench_args.p, "Edge probability")->capture_default_str();
  bc->add_option("--epsilon", bench_args.epsilon, "Accuracy")->capture_default_str();
  bc->callback([&] { status = run_bench_charge(bench_args, out); });
  auto* bt = bench->add_subcommand("transform", "Transformation on a random constrained instance");
  bench_opts(bt);
  bt->add_option("--p", bench_args.p, "Edge probability")->capture_default_str();
  bt->callback([&] { status = run_bench_transform(bench_args, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  std::cout << out;
  return status;
}
