#pragma once

#include <cmath>
#include <deque>
#include <vector>

#include "rainbow/errors.hpp"
#include "rainbow/finders/common.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

struct RbfsOptions {
  ExplorationMode mode = ExplorationMode::Greedy;
  double delta = 0.0;
  /// c / n; computed from the graph when zero.
  double alpha = 0.0;
  /// Enables the faithful stopping rules: stop once a tree reaches
  /// δn − ε²n vertices, or once a tree finishes with the forest holding at
  /// least ε²n vertices.
  double epsilon = 0.0;
};

/// Rainbow breadth-first search building a rainbow forest; returns its
/// largest tree.
///
/// An edge to an undiscovered vertex is accepted iff its colour is not used
/// anywhere in the forest. Faithful mode adds two deliberate restrictions:
/// only the (1−δ)n lowest-indexed undiscovered vertices may be discovered
/// (the rest are forbidden for that step), and an edge with a fresh colour is
/// still rejected with the probability that brings the total rejection
/// probability up to δ/α.
inline ExplorationTrace rbfs_forest(const ColouredGraph& g, const RbfsOptions& options, RngStream& rng) {
  const Vertex n = g.order();
  const double alpha = options.alpha > 0.0 ? options.alpha
                                           : (n == 0 ? 0.0 : static_cast<double>(g.colours()) / n);
  if (!(options.delta >= 0.0 && options.delta < std::min(1.0, alpha)))
    throw Error(ErrorCode::InvalidDelta, "need 0 <= delta < min(1, alpha)");
  const bool faithful = options.mode == ExplorationMode::Faithful;
  const double c = g.colours();
  const double rejection_floor = options.delta / alpha;
  const auto pool_cap = faithful ? static_cast<std::size_t>(std::floor((1.0 - options.delta) * n)) : std::size_t{n};
  const double eps_sq_n = options.epsilon * options.epsilon * n;
  const double large_tree = options.delta * n - eps_sq_n;

  ExplorationTrace trace;
  const Adjacency adj(g);
  detail::FlagCounter undiscovered(n, true);
  std::vector<char> used(std::size_t{g.colours()} + 1, 0);
  std::size_t used_count = 0;
  std::size_t forest_order = 0;
  Vertex lowest = 0;

  std::vector<Vertex> tree;
  std::vector<EdgeId> tree_edges;
  auto allowed = [&](Vertex u) { return undiscovered.test(u) && undiscovered.count_below(u) < pool_cap; };
  auto keep_best = [&]() {
    if (tree.size() > trace.vertices.size()) {
      trace.vertices = tree;
      trace.edges = tree_edges;
    }
  };

  trace.stop = StopReason::Exhausted;
  bool stopped = false;
  while (!stopped) {
    while (lowest < n && !undiscovered.test(lowest)) ++lowest;
    if (lowest == n) break;
    tree.assign(1, lowest);
    tree_edges.clear();
    undiscovered.clear(lowest);
    std::deque<Vertex> queue{lowest};
    while (!queue.empty() && !stopped) {
      const Vertex v = queue.front();
      queue.pop_front();
      for (const auto& [u, id] : adj[v]) {
        if (!allowed(u)) continue;
        ++trace.queries;
        const Colour colour = g.edge(id).colour;
        if (used[colour]) continue;
        if (faithful) {
          const double natural = used_count / c;
          if (natural < rejection_floor && rng.bernoulli((rejection_floor - natural) / (1.0 - natural))) continue;
        }
        used[colour] = 1;
        ++used_count;
        ++trace.accepted;
        undiscovered.clear(u);
        tree.push_back(u);
        tree_edges.push_back(id);
        queue.push_back(u);
        if (faithful && options.epsilon > 0.0 && static_cast<double>(tree.size()) >= large_tree) {
          trace.stop = StopReason::TargetReached;
          stopped = true;
          break;
        }
      }
    }
    keep_best();
    forest_order += tree.size();
    if (!stopped && faithful && options.epsilon > 0.0 && static_cast<double>(forest_order) >= eps_sq_n) {
      trace.stop = StopReason::ForestLimit;
      stopped = true;
    }
  }
  detail::require_rainbow_tree(g, trace.edges, "rbfs_forest");
  return trace;
}

}  // namespace rainbow
