// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <unistd.h>
#include <vector>

#include "rainbow/cli.hpp"
#include "rainbow/envelopes.hpp"
#include "rainbow/experiments.hpp"
#include "rainbow/finders/rbfs.hpp"
#include "rainbow/finders/rdfs.hpp"
#include "rainbow/finders/sprinkle.hpp"
#include "rainbow/finders/subcritical.hpp"
#include "rainbow/finders/supercritical.hpp"
#include "rainbow/oracles.hpp"
#include "rainbow/random_models.hpp"

namespace {

using namespace rainbow;
using experiments::Report;
using experiments::SummaryRow;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // 0 = none
  std::function<Outcome()> run;
};

experiments::Settings settings() {
  return {.seed = 1, .threads = std::max(1u, std::thread::hardware_concurrency()), .raw = false};
}

const SummaryRow& row(const Report& r, const std::string& name) {
  for (const SummaryRow& x : r.rows)
    if (x.row == name) return x;
  throw std::runtime_error("missing row " + name);
}

std::string fmt(double x) { return experiments::detail::format_number(x); }

// Every listed row must have status "pass"; the detail names each with its mean.
Outcome rows_pass(const Report& r, const std::vector<std::string>& names) {
  Outcome o{true, ""};
  for (const std::string& name : names) {
    const SummaryRow& x = row(r, name);
    o.pass = o.pass && x.status == "pass";
    o.detail += (o.detail.empty() ? "" : "; ") + name + " = " + fmt(x.mean) + " (" + x.status + ")";
  }
  return o;
}

double chi_square_critical(std::size_t cells, double significance) {
  boost::math::chi_squared dist(static_cast<double>(cells - 1));
  return boost::math::quantile(boost::math::complement(dist, significance));
}

Outcome forest_counting() {
  Outcome o{true, ""};
  std::size_t classes = 0;
  for (std::size_t m = 1; m <= 6; ++m)
    for (std::size_t t = 1; t <= m; ++t) {
      std::uint64_t expected = m == t ? 1 : t;
      for (std::size_t i = 0; i + t + 1 < m; ++i) expected *= m;
      const std::size_t got = enumerate_forests(m, t).count;
      ++classes;
      if (got != expected) {
        o.pass = false;
        o.detail += "m=" + std::to_string(m) + " t=" + std::to_string(t) + " got " + std::to_string(got) + "; ";
      }
    }
  if (o.pass) o.detail = std::to_string(classes) + " classes exact";
  return o;
}

Outcome sampler_uniformity() {
  Outcome o{true, ""};
  for (auto [m, t] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 1}, {4, 2}, {5, 2}}) {
    const EnumerationResult all = enumerate_forests(m, t);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < all.encodings.size(); ++i) index[all.encodings[i]] = i;
    std::vector<double> counts(all.count, 0.0);
    RngStream rng(1, 1000 + 10 * m + t);
    const std::size_t samples = 1000000;
    bool outside = false;
    for (std::size_t s = 0; s < samples; ++s) {
      const auto it = index.find(to_text(sample_uniform_forest(m, t, rng)));
      if (it == index.end()) {
        outside = true;
        break;
      }
      ++counts[it->second];
    }
    const double expected = static_cast<double>(samples) / all.count;
    double chi = 0;
    for (double k : counts) chi += (k - expected) * (k - expected) / expected;
    const double critical = chi_square_critical(all.count, 1e-3);
    o.pass = o.pass && !outside && chi < critical;
    o.detail += "(" + std::to_string(m) + "," + std::to_string(t) + ") chi2=" + fmt(chi) + " < " + fmt(critical) + "; ";
  }
  return o;
}

Outcome configuration_model() {
  Outcome o{true, ""};
  RngStream seq_rng(1, 2000);
  std::size_t preserved = 0;
  for (int s = 0; s < 20; ++s) {
    DegreeSequence d;
    const std::size_t n = 2 + seq_rng.below(49);
    for (std::size_t v = 0; v < n; ++v) d.degrees.push_back(seq_rng.below(7));
    if (d.total() % 2) ++d.degrees[seq_rng.below(n)];
    RngStream rng(1, 2100 + s);
    bool ok = true;
    for (int k = 0; k < 10000 && ok; ++k) ok = degree_sequence(sample_configuration(d, rng)).degrees == d.degrees;
    preserved += ok;
  }
  o.pass = preserved == 20;
  const DegreeSequence two_two{{2, 2}};
  const std::size_t samples = 10000;
  std::size_t parallel = 0;
  RngStream rng(1, 2200);
  for (std::size_t k = 0; k < samples; ++k) {
    const ColouredGraph g = sample_configuration(two_two, rng);
    parallel += g.edges()[0].u != g.edges()[0].v;
  }
  const double freq = static_cast<double>(parallel) / samples;
  o.pass = o.pass && std::abs(freq - 2.0 / 3.0) <= 0.02 && std::abs((1.0 - freq) - 1.0 / 3.0) <= 0.02;
  o.detail = std::to_string(preserved) + "/20 sequences preserved over 1e4 samples; (2,2) parallel " + fmt(freq) +
             ", loops " + fmt(1.0 - freq);
  return o;
}

Outcome min_split() {
  const Report r = experiments::exp_min_split({4, 100, 400, 1600}, 10000, settings());
  Outcome o = rows_pass(r, {"check:exact m=4", "check:ratio m=400/100", "check:ratio m=1600/400"});
  o.detail += "; mean(1600) = " + fmt(row(r, "m=1600").mean);
  return o;
}

Outcome bridge_bound() {
  Report r = experiments::exp_bridge_number(1000, 50, 10000, settings());
  r.append(experiments::exp_bridge_number(5, 2, envelopes::kSmallCaseReps, settings()));
  Outcome o = rows_pass(r, {"check:upper m=1000 t=50", "check:exact m=5 t=2"});
  o.detail += "; bound " + fmt(1.05 * 1000 / 51) + ", exact(5,2) " + fmt(exact_mean_bridge_number(5, 2).value());
  return o;
}

Outcome double_bridge() {
  const Report r = experiments::exp_min_double_bridge(100, {10, 100, 1000}, 10000, settings());
  return rows_pass(r, {"normalised t=10", "check:decreasing"}).pass
             ? Outcome{true, "normalised " + fmt(row(r, "normalised t=10").mean) + " > " +
                                 fmt(row(r, "normalised t=100").mean) + " > " + fmt(row(r, "normalised t=1000").mean)}
             : Outcome{false, "normalised " + fmt(row(r, "normalised t=10").mean) + ", " +
                                  fmt(row(r, "normalised t=100").mean) + ", " + fmt(row(r, "normalised t=1000").mean)};
}

Outcome borel() {
  const Report r = experiments::exp_tree_size_law(100000, 1000, 100000, settings(), 5);
  Outcome o{true, ""};
  for (std::size_t k = 1; k <= 5; ++k) {
    const SummaryRow& x = row(r, "pmf k=" + std::to_string(k));
    o.pass = o.pass && x.status == "pass";
    o.detail += "k=" + std::to_string(k) + " " + fmt(x.mean) + " vs " + fmt(x.reference) + "; ";
  }
  return o;
}

Outcome phase_sub() {
  const Report r = experiments::exp_phase_transition(1000000, 1000000, {-0.05}, 10, settings());
  Outcome o = rows_pass(r, {"check:subcritical eps=-0.05", "ratio eps=-0.05"});
  o.pass = row(r, "check:subcritical eps=-0.05").status == "pass";
  o.detail += "; reference " + fmt(row(r, "tree eps=-0.05").reference) + ", eps^3 n = " +
              fmt(row(r, "tree eps=-0.05").eps3n);
  return o;
}

Outcome phase_super() {
  // Finders throw std::logic_error on any output that is not a rainbow tree.
  try {
    const Report r = experiments::exp_phase_transition(1000000, 1000000, {0.05}, 10, settings());
    Outcome o = rows_pass(r, {"check:supercritical eps=0.05", "tree eps=0.05"});
    o.pass = row(r, "check:supercritical eps=0.05").status == "pass";
    o.detail += "; 0.7*2*eps*n = " + fmt(0.7 * 0.1 * 1e6) + ", all outputs rainbow and connected";
    return o;
  } catch (const std::logic_error& e) {
    return {false, std::string("structural violation: ") + e.what()};
  }
}

Report& cycle_report() {
  static Report r = experiments::exp_cycle(100000, 100000, 129, 0.5, 10, settings());
  return r;
}

Outcome long_path() {
  Outcome o = rows_pass(cycle_report(), {"check:path d=129 delta=0.5", "faithful_path d=129 delta=0.5"});
  o.pass = row(cycle_report(), "check:path d=129 delta=0.5").status == "pass";
  o.detail += "; first round has d = 128, target 0.5n = 50000";
  return o;
}

Outcome long_cycle() {
  Outcome o = rows_pass(cycle_report(), {"check:cycle d=129 delta=0.5", "cycle d=129 delta=0.5"});
  o.pass = row(cycle_report(), "check:cycle d=129 delta=0.5").status == "pass";
  o.detail += "; greedy path mean " + fmt(row(cycle_report(), "greedy_path d=129 delta=0.5").mean);
  return o;
}

Outcome giant() {
  const double gamma = survival_probability(2.0);
  const double residual = std::abs(1.0 - gamma - std::exp(-2.0 * gamma));
  const Report r = experiments::exp_giant_benchmark(100000, 2.0, 50, settings());
  Outcome o = rows_pass(r, {"d=2"});
  o.pass = o.pass && residual <= 1e-10 && std::abs(gamma - 0.796812) < 5e-7;
  o.detail += "; gamma(2) = " + fmt(gamma) + ", residual " + fmt(residual);
  return o;
}

Outcome oracle_dominance() {
  std::size_t graphs = 0, resampled = 0, violations = 0, empty_cores = 0, cycles = 0;
  std::string first_violation;
  auto note = [&](bool ok, const std::string& what) {
    if (ok) return;
    ++violations;
    if (first_violation.empty()) first_violation = what + " on graph " + std::to_string(graphs);
  };
  for (std::uint64_t i = 0; graphs < 200; ++i) {
    RngStream rng(1, 3000 + i);
    const Vertex n = 1 + static_cast<Vertex>(rng.below(8));
    const Colour c = 1 + static_cast<Colour>(rng.below(8));
    const double p = i % 2 ? 0.6 : 0.3;
    RngStream graph_rng = rng.child(0);
    const ColouredGraph g = sample_coloured_gnp(n, p, c, graph_rng);
    if (g.size() > 22) {
      ++resampled;
      continue;
    }
    ++graphs;
    const std::size_t best = exact_max_rainbow_tree(g).order;
    auto tree_ok = [&](const std::vector<EdgeId>& edges, std::size_t order, const std::string& name) {
      note(is_rainbow(g, edges) && is_tree(g, edges) && order <= best, name);
    };
    try {
      const RainbowTree sub = subcritical_rainbow_tree(g);
      tree_ok(sub.edges, sub.order, "sub");
      try {
        const SupercriticalResult super = supercritical_rainbow_tree(g);
        tree_ok(super.tree.edges, super.tree.order, "super");
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyCore) throw;
        ++empty_cores;
      }
      for (ExplorationMode mode : {ExplorationMode::Greedy, ExplorationMode::Faithful}) {
        const ExplorationTrace path = rdfs_longest_path(g, {.mode = mode, .delta = 0.5});
        tree_ok(path.edges, path.order(), "rdfs");
        const double alpha = static_cast<double>(c) / n;
        RngStream bfs_rng = rng.child(2);
        const ExplorationTrace tree =
            rbfs_forest(g, {.mode = mode, .delta = 0.5 * std::min(1.0, alpha), .alpha = alpha}, bfs_rng);
        tree_ok(tree.edges, tree.order(), "rbfs");
      }
      // Cycle finder: split the edges into two rounds; the cycle lives in g.
      RngStream split_rng = rng.child(3);
      std::vector<Edge> first, second;
      for (const Edge& e : g.edges()) (split_rng.below(2) ? second : first).push_back(e);
      const ColouredGraph g1(n, c, first);
      const ExplorationTrace path = rdfs_longest_path(g1, {.mode = ExplorationMode::Greedy});
      if (auto cycle = sprinkle_close_cycle(g1, path, second, path.order() / 2)) {
        ++cycles;
        note(is_rainbow_cycle(*cycle) && cycle->vertices.size() <= best, "cycle");
      }
    } catch (const std::exception& e) {
      note(false, std::string("exception ") + e.what());
    }
  }
  Outcome o{violations == 0, std::to_string(graphs) + " graphs (" + std::to_string(resampled) +
                                 " resampled for > 22 edges), " + std::to_string(empty_cores) + " empty cores, " +
                                 std::to_string(cycles) + " cycles, " + std::to_string(violations) + " violations"};
  if (!first_violation.empty()) o.detail += "; first: " + first_violation;
  return o;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("rainbow_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> commands{
      {"gen", "--n", "20000", "--d", "1.5", "--c", "300", "--seed", "3"},
      {"gen", "--n", "5000", "--eps", "-0.1", "--c", "0", "--seed", "3"},
      {"gen", "--model", "config", "--n", "4000", "--d", "3", "--c", "50", "--seed", "3"},
      {"gen", "--model", "forest", "--n", "10000", "--t", "40", "--seed", "3"},
      {"find", "--finder", "sub", "--n", "20000", "--eps", "-0.2", "--seed", "4"},
      {"find", "--finder", "super", "--n", "20000", "--eps", "0.2", "--seed", "4"},
      {"find", "--finder", "rdfs", "--mode", "faithful", "--n", "5000", "--d", "20", "--seed", "4"},
      {"find", "--finder", "rdfs", "--mode", "greedy", "--n", "5000", "--d", "20", "--seed", "4"},
      {"find", "--finder", "rbfs", "--mode", "faithful", "--delta", "0.3", "--epsilon", "0.1", "--n", "5000", "--d",
       "5", "--seed", "4"},
      {"find", "--finder", "rbfs", "--mode", "greedy", "--n", "5000", "--d", "5", "--seed", "4"},
      {"find", "--finder", "cycle", "--n", "5000", "--d", "20", "--delta", "0.5", "--seed", "4"},
      {"find", "--finder", "cycle", "--n", "20000", "--eps", "0.3", "--c", "2000", "--seed", "4"},
      {"experiment", "--suite", "all", "--reps", "4", "--n", "5000", "--seed", "5", "--raw"},
      {"experiment", "--suite", "borel", "--reps", "500", "--seed", "5", "--raw"},
      {"experiment", "--suite", "phase", "--reps", "6", "--n", "20000", "--seed", "5", "--raw"},
  };
  std::size_t compared = 0, differing = 0;
  std::string first_difference;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const bool experiment = commands[i][0] == "experiment";
    std::vector<std::string> outputs;
    std::vector<int> codes;
    for (int run = 0; run < 3; ++run) {
      std::vector<std::string> args = commands[i];
      const fs::path out = dir / ("cmd" + std::to_string(i));
      fs::remove(out);
      fs::remove(out.string() + ".json");
      args.insert(args.end(), {"--out", out.string()});
      if (experiment) args.insert(args.end(), {"--threads", run == 2 ? "3" : "1"});
      std::ostringstream stdout_text, stderr_text;
      codes.push_back(cli::run(args, stdout_text, stderr_text));
      std::string bytes = slurp(out);
      if (experiment) bytes += slurp(out.string() + ".json");
      outputs.push_back(bytes + "\n--stdout--\n" + stdout_text.str());
    }
    ++compared;
    if (outputs[0] != outputs[1] || outputs[0] != outputs[2] || codes[0] != codes[1] || codes[0] != codes[2] ||
        outputs[0].size() < 40) {
      ++differing;
      if (first_difference.empty()) {
        first_difference = commands[i][0];
        for (std::size_t k = 1; k < commands[i].size(); ++k) first_difference += " " + commands[i][k];
      }
    }
  }
  fs::remove_all(dir);
  Outcome o{differing == 0, std::to_string(compared) + " commands run 3 times (experiments at 1, 1, 3 threads), " +
                                std::to_string(differing) + " differ"};
  if (!first_difference.empty()) o.detail += "; first: " + first_difference;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "forest counts equal t*m^(m-t-1) for m <= 6", 10, forest_counting},
      {2, "forest sampler uniform (chi-square, 1e6 samples, 1e-3)", 60, sampler_uniformity},
      {3, "configuration model degrees and (2,2) matching frequencies", 0, configuration_model},
      {4, "min split component scaling and exact m=4", 120, min_split},
      {5, "bridge number bound and exact (5,2)", 0, bridge_bound},
      {6, "normalised min double bridge decreasing in t", 300, double_bridge},
      {7, "root tree size follows the Borel law", 0, borel},
      {8, "subcritical rainbow tree order envelope (eps=-0.05, n=1e6)", 300, phase_sub},
      {9, "supercritical rainbow tree order envelope (eps=0.05, n=1e6)", 0, phase_super},
      {10, "faithful rainbow DFS path >= 0.5n (d=128, n=1e5)", 0, long_path},
      {11, "sprinkled rainbow cycle >= 0.5 min(n,c) (d=129, n=1e5)", 0, long_cycle},
      {12, "giant component fraction near gamma(2) (n=1e5)", 0, giant},
      {13, "finders never beat the exact optimum (200 small graphs)", 60, oracle_dominance},
      {14, "CLI output byte-identical across reruns and thread counts", 0, determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && seconds > c.time_limit_s) {
      o.pass = false;
      o.detail += "; over the " + fmt(c.time_limit_s) + " s limit";
    }
    failed += !o.pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1f s", seconds);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << " [" << timing << "] " << o.detail
              << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
