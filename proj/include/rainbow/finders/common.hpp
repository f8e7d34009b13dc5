#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

/// A rainbow tree found in a graph, as edge ids of that graph.
struct RainbowTree {
  std::vector<EdgeId> edges;
  std::size_t order = 0;  // vertices spanned; edges.size() + 1 unless the graph is empty
};

enum class ExplorationMode { Faithful, Greedy };

enum class StopReason { TargetReached, Exhausted, QueryBudget, ForestLimit };

constexpr std::string_view to_string(ExplorationMode mode) {
  return mode == ExplorationMode::Faithful ? "faithful" : "greedy";
}

constexpr std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::TargetReached: return "target_reached";
    case StopReason::Exhausted: return "exhausted";
    case StopReason::QueryBudget: return "query_budget";
    case StopReason::ForestLimit: return "forest_limit";
  }
  return "unknown";
}

/// Outcome of a rainbow DFS/BFS exploration. `vertices` is the path in order
/// (DFS) or the vertex set of the best tree (BFS); `edges` are graph edge ids.
struct ExplorationTrace {
  std::uint64_t queries = 0;
  std::uint64_t accepted = 0;
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;
  StopReason stop = StopReason::Exhausted;

  std::size_t order() const { return vertices.size(); }

  friend bool operator==(const ExplorationTrace&, const ExplorationTrace&) = default;
};

namespace detail {

/// Hard structural check on every finder output.
inline void require_rainbow_tree(const ColouredGraph& g, const std::vector<EdgeId>& edges, const char* finder) {
  if (!is_rainbow(g, edges) || !is_tree(g, edges))
    throw std::logic_error(std::string(finder) + " produced a structure that is not a rainbow tree");
}

/// Fenwick tree over 0/1 flags.
class FlagCounter {
 public:
  explicit FlagCounter(std::size_t n, bool initial) : tree_(n + 1, 0), flags_(n, initial ? 1 : 0) {
    if (!initial) return;
    for (std::size_t i = 1; i <= n; ++i) {
      tree_[i] += 1;
      const std::size_t up = i + (i & (~i + 1));
      if (up <= n) tree_[up] += tree_[i];
    }
  }

  bool test(std::size_t i) const { return flags_[i] != 0; }

  void clear(std::size_t i) {
    if (!flags_[i]) return;
    flags_[i] = 0;
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) --tree_[k];
  }

  /// Number of set flags with index < i.
  std::size_t count_below(std::size_t i) const {
    std::size_t s = 0;
    for (std::size_t k = i; k > 0; k -= k & (~k + 1)) s += tree_[k];
    return s;
  }

  /// Number of set flags in [lo, hi].
  std::size_t count_range(std::size_t lo, std::size_t hi) const {
    return hi < lo ? 0 : count_below(hi + 1) - count_below(lo);
  }

 private:
  std::vector<std::uint32_t> tree_;
  std::vector<char> flags_;
};

}  // namespace detail
}  // namespace rainbow
