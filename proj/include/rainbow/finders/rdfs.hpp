#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "rainbow/finders/common.hpp"

namespace rainbow {

struct RdfsOptions {
  ExplorationMode mode = ExplorationMode::Greedy;
  double delta = 0.5;
  /// Overrides the faithful budget ⌈δ² r n / 8⌉, r = min{c, n}.
  std::optional<std::uint64_t> query_budget;
  /// Stop as soon as the active path has this many edges.
  std::optional<std::size_t> target_length;
  Vertex start = 0;
};

/// Query budget ⌈δ² r n / 8⌉ with r = min{c, n}.
inline std::uint64_t rdfs_query_budget(const ColouredGraph& g, double delta) {
  const double n = g.order();
  const double r = g.colours() == 0 ? n : std::min<double>(g.colours(), n);
  return static_cast<std::uint64_t>(std::ceil(delta * delta * r * n / 8.0));
}

/// Rainbow depth-first search.
///
/// A stack A of active vertices always spans a rainbow path. The top vertex v
/// queries the pairs vu, u unvisited, in ascending order of u; a query is
/// accepted when vu is an edge whose colour is not on the path, and u is
/// pushed. A vertex with no unqueried pairs left moves to the visited set.
/// When A empties, the smallest unvisited vertex starts a new path.
///
/// Faithful mode stops after the query budget; greedy mode runs to
/// exhaustion. Both return the longest path A held during the run.
///
/// Queries are counted without enumerating non-edges: the pairs skipped
/// between two consecutive neighbours of v are counted on a Fenwick tree of
/// unvisited vertices.
inline ExplorationTrace rdfs_longest_path(const ColouredGraph& g, const RdfsOptions& options = {}) {
  ExplorationTrace trace;
  const Vertex n = g.order();
  if (n == 0) return trace;
  const std::uint64_t budget = options.mode == ExplorationMode::Faithful
                                   ? options.query_budget.value_or(rdfs_query_budget(g, options.delta))
                                   : std::numeric_limits<std::uint64_t>::max();

  const Adjacency adj(g);
  detail::FlagCounter unvisited(n, true);
  std::vector<std::size_t> cursor(n, 0);   // next adjacency entry to look at
  std::vector<Vertex> queried_to(n, 0);    // pairs vu with u < queried_to[v] are spent
  std::vector<std::uint32_t> on_path(std::size_t{g.colours()} + 1, 0);
  std::vector<Vertex> stack;
  std::vector<EdgeId> stack_edges;  // stack_edges[i] joins stack[i] to stack[i + 1]
  Vertex lowest_unvisited = 0;

  std::vector<Vertex> best;
  std::vector<EdgeId> best_edges;
  std::size_t shared = 0;  // length of the common prefix of `stack` and `best`
  auto save_if_longer = [&]() {
    if (stack.size() <= best.size()) return;
    best.resize(shared);
    best.insert(best.end(), stack.begin() + static_cast<std::ptrdiff_t>(shared), stack.end());
    const std::size_t shared_edges = shared == 0 ? 0 : shared - 1;
    best_edges.resize(shared_edges);
    best_edges.insert(best_edges.end(), stack_edges.begin() + static_cast<std::ptrdiff_t>(shared_edges),
                      stack_edges.end());
    shared = stack.size();
  };
  auto push = [&](Vertex u) {
    unvisited.clear(u);
    stack.push_back(u);
  };
  auto charge = [&](std::uint64_t cost) {
    if (cost > budget - trace.queries) {
      trace.queries = budget;
      return false;
    }
    trace.queries += cost;
    return true;
  };

  push(options.start < n ? options.start : 0);
  trace.stop = StopReason::Exhausted;
  for (;;) {
    if (stack.empty()) {
      while (lowest_unvisited < n && !unvisited.test(lowest_unvisited)) ++lowest_unvisited;
      if (lowest_unvisited == n) break;
      push(lowest_unvisited);
    }
    if (options.target_length && stack.size() - 1 >= *options.target_length) {
      trace.stop = StopReason::TargetReached;
      break;
    }
    const Vertex v = stack.back();
    const auto entries = adj[v];
    bool moved = false;
    bool out_of_budget = false;
    while (cursor[v] < entries.size()) {
      const Vertex u = entries[cursor[v]].neighbour;
      if (!unvisited.test(u)) {
        ++cursor[v];
        continue;
      }
      if (!charge(unvisited.count_range(queried_to[v], u))) {
        out_of_budget = true;
        break;
      }
      queried_to[v] = u + 1;
      // Parallel edges form one pair; the pair is accepted through the first
      // of its edges whose colour is free.
      EdgeId through = kNoEdge;
      for (; cursor[v] < entries.size() && entries[cursor[v]].neighbour == u; ++cursor[v]) {
        const EdgeId id = entries[cursor[v]].edge;
        if (through == kNoEdge && on_path[g.edge(id).colour] == 0) through = id;
      }
      if (through != kNoEdge) {
        ++on_path[g.edge(through).colour];
        ++trace.accepted;
        stack_edges.push_back(through);
        push(u);
        moved = true;
        break;
      }
    }
    if (out_of_budget) {
      trace.stop = StopReason::QueryBudget;
      break;
    }
    if (moved) continue;
    if (!charge(unvisited.count_range(queried_to[v], n - 1))) {
      trace.stop = StopReason::QueryBudget;
      break;
    }
    queried_to[v] = n;
    save_if_longer();
    stack.pop_back();
    if (!stack_edges.empty() && stack_edges.size() == stack.size()) {
      --on_path[g.edge(stack_edges.back()).colour];
      stack_edges.pop_back();
    }
    shared = std::min(shared, stack.size());
  }
  save_if_longer();
  trace.vertices = std::move(best);
  trace.edges = std::move(best_edges);
  detail::require_rainbow_tree(g, trace.edges, "rdfs_longest_path");
  return trace;
}

}  // namespace rainbow
