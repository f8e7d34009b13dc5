#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rainbow/components.hpp"
#include "rainbow/envelopes.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/experiments.hpp"
#include "rainbow/finders/rbfs.hpp"
#include "rainbow/finders/rdfs.hpp"
#include "rainbow/finders/sprinkle.hpp"
#include "rainbow/finders/subcritical.hpp"
#include "rainbow/finders/supercritical.hpp"
#include "rainbow/forest.hpp"
#include "rainbow/io.hpp"
#include "rainbow/random_models.hpp"

namespace rainbow::cli {

using Json = nlohmann::ordered_json;

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitNotFound = 2;
inline constexpr int kExitUsage = 64;

inline constexpr std::uint64_t kDefaultSeed = 1;

namespace detail {

/// Flags that describe a generated graph; shared by `gen` and `find`.
struct GraphFlags {
  std::string model = "gnp";
  std::optional<std::uint64_t> n;
  std::optional<double> p;
  std::optional<double> eps;
  std::optional<double> d;
  std::optional<std::uint64_t> c;
  std::optional<std::uint64_t> t;
  std::string degrees;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void add_graph_flags(CLI::App& cmd, GraphFlags& g, bool with_model) {
  if (with_model)
    cmd.add_option("--model", g.model, "gnp | config | forest")
        ->check(CLI::IsMember({"gnp", "config", "forest"}))
        ->capture_default_str();
  cmd.add_option("--n", g.n, "vertices (forest: m)");
  cmd.add_option("--p", g.p, "edge probability (default: from --eps or --d)");
  cmd.add_option("--eps", g.eps, "p = (1 + eps) / n");
  cmd.add_option("--d", g.d, "p = d / n; config model: regular degree d");
  cmd.add_option("--c", g.c, "colours, 0 = uncoloured (default: n)");
  if (with_model) {
    cmd.add_option("--t", g.t, "forest roots");
    cmd.add_option("--degrees", g.degrees, "config model degree list, comma separated");
  }
}

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("RAINBOW_SEED"); env != nullptr && *env != '\0') {
    const std::string text(env);
    if (text.find_first_not_of("0123456789") != std::string::npos || text.size() > 20)
      throw Usage("RAINBOW_SEED must be an unsigned integer, got '" + text + "'");
    try {
      return std::stoull(text);
    } catch (const std::out_of_range&) {
      throw Usage("RAINBOW_SEED out of range: " + text);
    }
  }
  return kDefaultSeed;
}

inline Vertex require_n(const GraphFlags& g) {
  if (!g.n) throw Usage("--n is required");
  if (*g.n > std::numeric_limits<Vertex>::max() - 1) throw Usage("--n too large");
  return static_cast<Vertex>(*g.n);
}

inline Colour resolve_colours(const GraphFlags& g, Vertex n) {
  const std::uint64_t c = g.c.value_or(n);
  if (c > std::numeric_limits<Colour>::max()) throw Usage("--c too large");
  return static_cast<Colour>(c);
}

inline double resolve_p(const GraphFlags& g, Vertex n, Json& config) {
  const int given = int(g.p.has_value()) + int(g.eps.has_value()) + int(g.d.has_value());
  if (given != 1) throw Usage("give exactly one of --p, --eps, --d");
  double p = 0.0;
  if (g.p) p = *g.p;
  if (g.eps) {
    p = (1.0 + *g.eps) / n;
    config["eps"] = *g.eps;
  }
  if (g.d) {
    p = *g.d / n;
    config["d"] = *g.d;
  }
  config["p"] = p;
  return p;
}

inline DegreeSequence resolve_degrees(const GraphFlags& g, Json& config) {
  DegreeSequence seq;
  if (!g.degrees.empty()) {
    if (g.d || g.n) throw Usage("--degrees excludes --n and --d");
    std::stringstream in(g.degrees);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
        throw Usage("bad degree '" + item + "'");
      seq.degrees.push_back(std::stoull(item));
    }
  } else {
    const Vertex n = require_n(g);
    if (!g.d || *g.d < 0 || *g.d != std::floor(*g.d)) throw Usage("config model needs --degrees or an integer --d");
    seq.degrees.assign(n, static_cast<std::size_t>(*g.d));
    config["d"] = *g.d;
  }
  config["n"] = seq.degrees.size();
  config["degree_sum"] = seq.total();
  return seq;
}

/// Builds the graph described by the flags; `config` receives every resolved value.
inline ColouredGraph generate(const GraphFlags& g, std::uint64_t seed, Json& config) {
  RngStream rng(seed, 0);
  config["model"] = g.model;
  if (g.model == "gnp") {
    const Vertex n = require_n(g);
    config["n"] = n;
    const double p = resolve_p(g, n, config);
    const Colour c = resolve_colours(g, n);
    config["c"] = c;
    config["seed"] = seed;
    if (c == 0) {
      RngStream graph_rng = rng.child(0);
      return sample_gnp(n, p, graph_rng);
    }
    return sample_coloured_gnp(n, p, c, rng);
  }
  if (g.model == "config") {
    if (g.p || g.eps) throw Usage("config model takes --degrees or --d");
    const DegreeSequence seq = resolve_degrees(g, config);
    const Colour c = resolve_colours(g, static_cast<Vertex>(seq.degrees.size()));
    config["c"] = c;
    config["seed"] = seed;
    RngStream graph_rng = rng.child(0);
    ColouredGraph graph = sample_configuration(seq, graph_rng);
    if (c == 0) return graph;
    RngStream colour_rng = rng.child(1);
    return colour_uniform(graph, c, colour_rng);
  }
  throw Usage("model " + g.model + " does not produce a graph");
}

inline Json edge_triples(const ColouredGraph& g, const std::vector<EdgeId>& ids) {
  Json out = Json::array();
  for (EdgeId id : ids) {
    const Edge& e = g.edge(id);
    out.push_back(Json::array({e.u, e.v, e.colour}));
  }
  return out;
}

inline Json graph_summary(const ColouredGraph& g) {
  const VertexPartition parts = connected_components(g);
  return Json{{"n", g.order()},
              {"edges", g.size()},
              {"colours", g.colours()},
              {"multigraph", g.is_multigraph()},
              {"components", parts.sizes.size()},
              {"largest_component", parts.largest_size()}};
}

inline Json trace_json(const ColouredGraph& g, const ExplorationTrace& t) {
  return Json{{"order", t.order()},
              {"length", t.edges.size()},
              {"queries", t.queries},
              {"accepted", t.accepted},
              {"stop", std::string(to_string(t.stop))},
              {"vertices", t.vertices},
              {"edges", edge_triples(g, t.edges)}};
}

inline Json report_json(const PipelineReport& r) {
  Json bridges = Json::array();
  for (const auto& [deleted, kept] : r.double_colour_bridges) bridges.push_back(Json::array({deleted, kept}));
  return Json{{"giant_order", r.giant_order},
              {"lu_order", r.lu_order},
              {"core_order", r.core_order},
              {"core_size", r.core_size},
              {"non_unique_core_edges", r.non_unique_core_edges},
              {"hat_core_order", r.hat_core_order},
              {"colour_set_size", r.colour_set_size},
              {"forest_edges", r.forest_edges},
              {"x1", r.x1},
              {"x2", r.x2},
              {"x3", r.x3},
              {"x4", r.x4},
              {"final_tree_order", r.final_tree_order},
              {"double_colour_bridges", bridges}};
}

inline Json cycle_json(const SprinkledCycleRun& run) {
  Json cycle = nullptr;
  if (run.cycle) {
    Json edges = Json::array();
    for (const Edge& e : run.cycle->edges) edges.push_back(Json::array({e.u, e.v, e.colour}));
    cycle = Json{{"length", run.cycle->length()}, {"vertices", run.cycle->vertices}, {"edges", edges}};
  }
  return Json{{"first_round_edges", run.first_round_edges},
              {"second_round_edges", run.second_round_edges},
              {"path_length", run.path.edges.size()},
              {"path_queries", run.path.queries},
              {"path_stop", std::string(to_string(run.path.stop))},
              {"cycle", cycle}};
}

/// Writes `text` to `path`, or to `out` when no path is given.
inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
  if (!file) throw std::runtime_error("write failed: " + path);
}

inline ExplorationMode parse_mode(const std::string& mode) {
  return mode == "faithful" ? ExplorationMode::Faithful : ExplorationMode::Greedy;
}

struct GenCommand {
  GraphFlags graph;
  std::optional<std::uint64_t> seed;
  std::string out;

  int run(std::ostream& out_stream) const {
    const std::uint64_t s = resolve_seed(seed);
    Json config{{"command", "gen"}};
    std::ostringstream body;
    Json summary;
    if (graph.model == "forest") {
      if (!graph.n || !graph.t) throw Usage("forest model needs --n and --t");
      if (graph.p || graph.eps || graph.d || graph.c || !graph.degrees.empty())
        throw Usage("forest model takes only --n, --t, --seed");
      config["model"] = "forest";
      config["m"] = *graph.n;
      config["t"] = *graph.t;
      config["seed"] = s;
      RngStream rng(s, 0);
      const RootedForest f = sample_uniform_forest(*graph.n, *graph.t, rng);
      body << to_text(f) << '\n';
      summary = Json{{"m", f.m}, {"t", f.t}, {"edges", f.edge_count()}, {"root_tree_order", subtree_sizes(f)[0]}};
    } else {
      if (graph.t) throw Usage("--t applies to the forest model");
      const ColouredGraph g = generate(graph, s, config);
      write_edge_list(body, g);
      summary = graph_summary(g);
    }
    config["out"] = out;
    const Json record{{"config", config}, {"summary", summary}};
    if (out.empty()) {
      out_stream << body.str();
      return kExitOk;
    }
    emit(body.str(), out, out_stream);
    out_stream << record.dump() << '\n';
    return kExitOk;
  }
};

struct FindCommand {
  std::string finder;
  std::string input;
  GraphFlags graph;
  std::string mode = "greedy";
  double delta = 0.5;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> seed;
  bool fallback = false;
  bool timing = false;
  std::string out;

  int run(std::ostream& out_stream, std::ostream& err) const {
    const std::uint64_t s = resolve_seed(seed);
    Json config{{"command", "find"}, {"finder", finder}};
    const auto start = std::chrono::steady_clock::now();
    Json result;
    int code = kExitOk;
    if (finder == "cycle") {
      result = run_cycle(s, config);
      if (result["cycle"].is_null()) code = kExitNotFound;
    } else {
      Json graph_config;
      ColouredGraph g;
      if (!input.empty()) {
        if (graph.n || graph.p || graph.eps || graph.d || graph.c)
          throw Usage("--input excludes generator flags");
        g = read_edge_list_file(input);
        graph_config = Json{{"input", input}};
      } else {
        g = generate(graph, s, graph_config);
      }
      config["graph"] = graph_config;
      config["graph_summary"] = graph_summary(g);
      result = run_on_graph(g, s, config);
    }
    config["out"] = out;
    Json record{{"config", config}, {"result", result}};
    if (timing)
      record["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(record.dump() + '\n', out, out_stream);
    if (code == kExitNotFound) err << "NotFound: sprinkling closed no rainbow cycle\n";
    return code;
  }

  Json run_on_graph(const ColouredGraph& g, std::uint64_t s, Json& config) const {
    if (finder == "sub") {
      const RainbowTree tree = subcritical_rainbow_tree(g);
      return Json{{"order", tree.order}, {"edges", edge_triples(g, tree.edges)}};
    }
    if (finder == "super") {
      config["fallback"] = fallback;
      try {
        const SupercriticalResult r = supercritical_rainbow_tree(g);
        return Json{{"order", r.tree.order},
                    {"fallback_used", false},
                    {"edges", edge_triples(g, r.tree.edges)},
                    {"report", report_json(r.report)}};
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyCore || !fallback) throw;
      }
      const RainbowTree tree = subcritical_rainbow_tree(g);
      return Json{{"order", tree.order}, {"fallback_used", true}, {"edges", edge_triples(g, tree.edges)}};
    }
    if (finder == "rdfs") {
      RdfsOptions o{.mode = parse_mode(mode), .delta = delta, .query_budget = budget};
      config["mode"] = mode;
      config["delta"] = delta;
      if (o.mode == ExplorationMode::Faithful) {
        if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidDelta, "need 0 < delta < 1");
        config["query_budget"] = budget.value_or(rdfs_query_budget(g, delta));
      }
      return trace_json(g, rdfs_longest_path(g, o));
    }
    if (finder == "rbfs") {
      RbfsOptions o{.mode = parse_mode(mode), .delta = delta, .alpha = 0.0, .epsilon = epsilon.value_or(0.0)};
      config["mode"] = mode;
      config["delta"] = delta;
      config["epsilon"] = o.epsilon;
      config["alpha"] = g.order() == 0 ? 0.0 : static_cast<double>(g.colours()) / g.order();
      config["seed"] = s;
      RngStream rng(s, 1);
      return trace_json(g, rbfs_forest(g, o, rng));
    }
    throw Usage("unknown finder " + finder);
  }

  Json run_cycle(std::uint64_t s, Json& config) const {
    if (!input.empty()) throw Usage("the cycle finder samples its own two rounds; --input is not accepted");
    if (graph.p) throw Usage("the cycle finder takes --d or --eps");
    const Vertex n = require_n(graph);
    const Colour c = resolve_colours(graph, n);
    config["n"] = n;
    config["c"] = c;
    config["seed"] = s;
    if (c == 0) throw Error(ErrorCode::InvalidConfig, "the cycle finder needs colours");
    RngStream rng(s, 0);
    if (graph.d && !graph.eps) {
      config["d"] = *graph.d;
      config["delta"] = delta;
      return cycle_json(sprinkled_cycle(n, c, *graph.d, delta, rng));
    }
    if (graph.eps && !graph.d) {
      config["eps"] = *graph.eps;
      return cycle_json(find_rainbow_cycle_weakly_super(n, c, *graph.eps, rng));
    }
    throw Usage("the cycle finder needs exactly one of --d, --eps");
  }
};

struct ExperimentCommand {
  std::string suite;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> seed;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  bool raw = false;
  std::string out;

  int run(std::ostream& out_stream, std::ostream& err) const {
    if (raw && out.empty()) throw Usage("--raw needs --out");
    const std::uint64_t s = resolve_seed(seed);
    experiments::SuiteOptions options;
    options.reps = reps;
    if (n) {
      if (*n > std::numeric_limits<Vertex>::max() - 1) throw Usage("--n too large");
      options.n = static_cast<Vertex>(*n);
    }
    // Thread count is left out of the echo so output bytes do not depend on it.
    Json config{{"command", "experiment"},
                {"suite", suite},
                {"reps", reps ? Json(*reps) : Json("default")},
                {"n", n ? Json(*n) : Json("default")},
                {"seed", s},
                {"raw", raw},
                {"envelopes_version", envelopes::kVersion}};
    const experiments::Report report =
        experiments::run_suite(suite, options, {.seed = s, .threads = static_cast<unsigned>(threads), .raw = raw});
    std::ostringstream csv;
    experiments::write_csv(csv, config, report.rows);
    emit(csv.str(), out, out_stream);
    if (raw) emit(experiments::raw_json(config, report).dump(1) + '\n', out + ".json", out_stream);
    std::size_t failed = 0;
    for (const auto& row : report.rows) failed += row.status == "fail";
    err << "suite " << suite << ": " << report.rows.size() << " rows, " << failed << " failed checks ("
        << threads << " threads)\n";
    for (const auto& row : report.rows)
      if (row.status == "fail")
        err << "  FAIL " << row.experiment << ' ' << row.row << " mean=" << experiments::detail::format_number(row.mean)
            << " envelope " << row.envelope << '\n';
    return failed == 0 ? kExitOk : kExitFailure;
  }
};

inline int code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::EmptyCore:
    case ErrorCode::NotFound: return kExitNotFound;
    default: return kExitUsage;
  }
}

}  // namespace detail

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rainbow trees, paths and cycles in randomly coloured random graphs", "rainbow_cli"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  detail::GenCommand gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "sample a graph (edge list) or a forest (parent array)");
  detail::add_graph_flags(*gen_cmd, gen.graph, true);
  gen_cmd->add_option("--seed", gen.seed, "seed (default: $RAINBOW_SEED, else 1)");
  gen_cmd->add_option("--out", gen.out, "output file (default: stdout)");

  detail::FindCommand find;
  CLI::App* find_cmd = app.add_subcommand("find", "run a rainbow finder and print a JSON record");
  find_cmd->add_option("--finder", find.finder, "sub | super | rdfs | rbfs | cycle")
      ->required()
      ->check(CLI::IsMember({"sub", "super", "rdfs", "rbfs", "cycle"}));
  find_cmd->add_option("--input", find.input, "edge-list file (default: generate G_c(n,p) from the flags)");
  detail::add_graph_flags(*find_cmd, find.graph, false);
  find_cmd->add_option("--mode", find.mode, "rdfs/rbfs mode: greedy | faithful")
      ->check(CLI::IsMember({"greedy", "faithful"}))
      ->capture_default_str();
  find_cmd->add_option("--delta", find.delta, "rdfs/rbfs/cycle delta")->capture_default_str();
  find_cmd->add_option("--epsilon", find.epsilon, "rbfs faithful stopping epsilon (default: 0)");
  find_cmd->add_option("--budget", find.budget, "rdfs query budget (default: ceil(delta^2 r n / 8))");
  find_cmd->add_option("--seed", find.seed, "seed (default: $RAINBOW_SEED, else 1)");
  find_cmd->add_flag("--fallback", find.fallback, "super: use the subcritical finder when the core is empty");
  find_cmd->add_flag("--timing", find.timing, "add wall_time_s to the record (output no longer reproducible)");
  find_cmd->add_option("--out", find.out, "output file (default: stdout)");

  detail::ExperimentCommand exp;
  CLI::App* exp_cmd = app.add_subcommand("experiment", "run a Monte Carlo suite and write summary CSV");
  exp_cmd->add_option("--suite", exp.suite, "suite name")->required()->check(CLI::IsMember(experiments::suite_names()));
  exp_cmd->add_option("--reps", exp.reps, "repetitions per row (default: per-suite workload)");
  exp_cmd->add_option("--n", exp.n, "graph order for phase, giant, cycle (default: per-suite workload)");
  exp_cmd->add_option("--seed", exp.seed, "seed (default: $RAINBOW_SEED, else 1)");
  exp_cmd->add_option("--threads", exp.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  exp_cmd->add_flag("--raw", exp.raw, "also write per-repetition records to <out>.json");
  exp_cmd->add_option("--out", exp.out, "CSV file (default: stdout)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    if (chosen == gen_cmd) return gen.run(out);
    if (chosen == find_cmd) return find.run(out, err);
    return exp.run(out, err);
  } catch (const detail::Usage& e) {
    err << "usage error: " << e.what() << '\n' << chosen->help();
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return detail::code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace rainbow::cli
