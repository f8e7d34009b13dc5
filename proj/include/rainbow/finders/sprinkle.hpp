#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "rainbow/finders/rdfs.hpp"
#include "rainbow/random_models.hpp"

namespace rainbow {

/// A rainbow cycle: `vertices` in cyclic order, `edges[i]` joins vertices[i]
/// and vertices[i + 1] (the last edge closes the cycle).
struct RainbowCycle {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  std::size_t length() const { return edges.size(); }
};

/// True iff the edges form one closed cycle through `vertices` with pairwise
/// distinct colours.
inline bool is_rainbow_cycle(const RainbowCycle& cycle) {
  const std::size_t k = cycle.vertices.size();
  if (k < 2 || cycle.edges.size() != k || !is_rainbow(cycle.edges)) return false;
  std::vector<Vertex> sorted = cycle.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < k; ++i) {
    const Edge& e = cycle.edges[i];
    const Vertex a = cycle.vertices[i];
    const Vertex b = cycle.vertices[(i + 1) % k];
    if (!((e.u == a && e.v == b) || (e.u == b && e.v == a))) return false;
  }
  return true;
}

/// Closes a rainbow path of g1 into a rainbow cycle with one sprinkled edge.
///
/// Scans `g2_edges` in order for an edge between the first `window` and the
/// last `window` vertices of the path that is not already an edge of g1 and
/// whose colour is unused on the path. The cycle is the path segment between
/// its endpoints plus that edge. Returns nullopt when no edge qualifies.
inline std::optional<RainbowCycle> sprinkle_close_cycle(const ColouredGraph& g1, const ExplorationTrace& path,
                                                        std::span<const Edge> g2_edges, std::size_t window) {
  const std::size_t k = path.vertices.size();
  window = std::min(window, k / 2);
  if (window == 0) return std::nullopt;
  std::vector<std::int64_t> position(g1.order(), -1);
  for (std::size_t i = 0; i < k; ++i) position[path.vertices[i]] = static_cast<std::int64_t>(i);
  auto in_head = [&](Vertex v) { return position[v] >= 0 && static_cast<std::size_t>(position[v]) < window; };
  auto in_tail = [&](Vertex v) { return position[v] >= 0 && static_cast<std::size_t>(position[v]) >= k - window; };

  std::unordered_set<Colour> path_colours;
  for (EdgeId id : path.edges) path_colours.insert(g1.edge(id).colour);
  auto key = [](Vertex a, Vertex b) {
    return (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
  };
  std::unordered_set<std::uint64_t> old_pairs;
  for (const Edge& e : g1.edges())
    if ((in_head(e.u) && in_tail(e.v)) || (in_head(e.v) && in_tail(e.u))) old_pairs.insert(key(e.u, e.v));

  for (const Edge& e : g2_edges) {
    Vertex a = e.u;
    Vertex b = e.v;
    if (in_tail(a) && in_head(b)) std::swap(a, b);
    if (!(in_head(a) && in_tail(b))) continue;
    if (old_pairs.count(key(a, b)) || path_colours.count(e.colour)) continue;
    const auto i = static_cast<std::size_t>(position[a]);
    const auto j = static_cast<std::size_t>(position[b]);
    RainbowCycle cycle;
    cycle.vertices.assign(path.vertices.begin() + static_cast<std::ptrdiff_t>(i),
                          path.vertices.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    for (std::size_t s = i; s < j; ++s) cycle.edges.push_back(g1.edge(path.edges[s]));
    cycle.edges.push_back(e);
    if (!is_rainbow_cycle(cycle)) throw std::logic_error("sprinkle_close_cycle produced an invalid cycle");
    return cycle;
  }
  return std::nullopt;
}

/// Window of ⌈δ r / 4⌉ path vertices at each end, r = min{c, n}.
inline std::optional<RainbowCycle> sprinkle_close_cycle(const ColouredGraph& g1, const ExplorationTrace& path,
                                                        std::span<const Edge> g2_edges, double delta) {
  const double n = g1.order();
  const double r = g1.colours() == 0 ? n : std::min<double>(g1.colours(), n);
  return sprinkle_close_cycle(g1, path, g2_edges, static_cast<std::size_t>(std::ceil(delta * r / 4.0)));
}

/// Probability p2 with (1 - p2)(1 - p1) = 1 - p.
inline double sprinkle_probability(double p, double p1) { return 1.0 - (1.0 - p) / (1.0 - p1); }

/// Everything produced by one two-round (path, then sprinkle) cycle search.
struct SprinkledCycleRun {
  ExplorationTrace path;
  std::optional<RainbowCycle> cycle;
  std::size_t first_round_edges = 0;
  std::size_t second_round_edges = 0;
};

/// The two independent rounds G1 ~ G_c(n, p1) and G2 ~ G_c(n, p2) whose union
/// is G_c(n, p).
struct SprinkleRounds {
  ColouredGraph first;
  ColouredGraph second;
};

inline SprinkleRounds sample_sprinkle_rounds(Vertex n, Colour c, double p, double p1, RngStream& rng) {
  RngStream first = rng.child(10);
  RngStream second = rng.child(11);
  return {sample_coloured_gnp(n, p1, c, first), sample_coloured_gnp(n, sprinkle_probability(p, p1), c, second)};
}

/// Greedy rainbow DFS path in G1 closed with a G2 edge between its δr/4 end windows.
inline SprinkledCycleRun sprinkled_cycle(const SprinkleRounds& rounds, double delta) {
  SprinkledCycleRun run;
  run.first_round_edges = rounds.first.size();
  run.second_round_edges = rounds.second.size();
  run.path = rdfs_longest_path(rounds.first, {.mode = ExplorationMode::Greedy, .delta = delta});
  run.cycle = sprinkle_close_cycle(rounds.first, run.path, rounds.second.edges(), delta);
  return run;
}

/// G_c(n, d/n) generated as G1 ∪ G2 with p1 = (d−1)/n, then closed as above.
inline SprinkledCycleRun sprinkled_cycle(Vertex n, Colour c, double d, double delta, RngStream& rng) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidConfig, "need 0 < delta < 1");
  if (!(d > 1.0)) throw Error(ErrorCode::InvalidConfig, "need d > 1");
  return sprinkled_cycle(sample_sprinkle_rounds(n, c, d / n, (d - 1.0) / n, rng), delta);
}

/// Weakly supercritical cycle: a faithful rainbow DFS on G_c(n, (1+ε)/n) with
/// δ = ε²n/(5c) and budget ⌈(ε/2) n²⌉, then sprinkling up to p = (1+2ε)/n.
/// The end windows are a quarter of the path each.
inline SprinkledCycleRun find_rainbow_cycle_weakly_super(Vertex n, Colour c, double epsilon, RngStream& rng) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidEpsilon, "need 0 < epsilon < 1");
  if (c < 1) throw Error(ErrorCode::InvalidConfig, "need at least one colour");
  const double p1 = (1.0 + epsilon) / n;
  const double p = (1.0 + 2.0 * epsilon) / n;
  RngStream first = rng.child(20);
  RngStream second = rng.child(21);
  const ColouredGraph g1 = sample_coloured_gnp(n, p1, c, first);
  const ColouredGraph g2 = sample_coloured_gnp(n, sprinkle_probability(p, p1), c, second);
  SprinkledCycleRun run;
  run.first_round_edges = g1.size();
  run.second_round_edges = g2.size();
  const double delta = epsilon * epsilon * n / (5.0 * c);
  const auto budget = static_cast<std::uint64_t>(std::ceil(epsilon / 2.0 * static_cast<double>(n) * n));
  run.path = rdfs_longest_path(g1, {.mode = ExplorationMode::Faithful, .delta = delta, .query_budget = budget});
  run.cycle = sprinkle_close_cycle(g1, run.path, g2.edges(), run.path.order() / 4);
  return run;
}

}  // namespace rainbow
