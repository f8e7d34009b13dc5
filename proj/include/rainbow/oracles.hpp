#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "rainbow/errors.hpp"
#include "rainbow/finders/common.hpp"
#include "rainbow/forest.hpp"
#include "rainbow/graph.hpp"

// Exhaustive computations on small instances, used as ground truth for the
// samplers and finders.

namespace rainbow {

struct EnumerationResult {
  std::size_t count = 0;
  std::vector<RootedForest> forests;
  std::vector<std::string> encodings;  // to_text of each forest
};

/// Exact rational value.
struct Fraction {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

namespace detail {

// Calls visit(subset) for every k-subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit visit) {
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  if (k > n) return;
  for (;;) {
    visit(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace detail

/// Every forest of F(m, t), found by filtering all (m−t)-edge subsets of K_m
/// for acyclicity with the roots 0..t−1 in distinct trees. Guarded to m <= 8.
inline EnumerationResult enumerate_forests(std::size_t m, std::size_t t) {
  if (m > 8) throw Error(ErrorCode::TooLarge, "enumerate_forests needs m <= 8");
  if (t < 1 || t > m) throw Error(ErrorCode::InvalidRootCount, "need 1 <= t <= m");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex v = 1; v < m; ++v)
    for (Vertex u = 0; u < v; ++u) pairs.emplace_back(u, v);

  EnumerationResult result;
  detail::for_each_combination(pairs.size(), m - t, [&](const std::vector<std::size_t>& pick) {
    std::vector<Vertex> comp(m);
    std::iota(comp.begin(), comp.end(), Vertex{0});
    auto find = [&](Vertex x) {
      while (comp[x] != x) x = comp[x] = comp[comp[x]];
      return x;
    };
    for (std::size_t i : pick) {
      const Vertex a = find(pairs[i].first);
      const Vertex b = find(pairs[i].second);
      if (a == b) return;
      comp[a] = b;
    }
    for (Vertex r = 0; r < t; ++r)
      for (Vertex s = r + 1; s < t; ++s)
        if (find(r) == find(s)) return;

    RootedForest f{m, t, std::vector<Vertex>(m, kNoVertex)};
    std::vector<char> seen(m, 0);
    std::vector<Vertex> queue;
    for (Vertex r = 0; r < t; ++r) {
      queue.push_back(r);
      seen[r] = 1;
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex v = queue[head];
      for (std::size_t i : pick) {
        const auto [a, b] = pairs[i];
        const Vertex w = a == v ? b : (b == v ? a : kNoVertex);
        if (w == kNoVertex || seen[w]) continue;
        seen[w] = 1;
        f.parent[w] = v;
        queue.push_back(w);
      }
    }
    result.encodings.push_back(to_text(f));
    result.forests.push_back(std::move(f));
  });
  result.count = result.forests.size();
  return result;
}

/// A maximum rainbow tree by exhaustive search over edge subsets (include
/// edges in id order first, prune on cycles, repeated colours and size
/// bounds). Among maximum trees the lexicographically smallest sorted
/// edge-id list is returned. Guarded to at most 22 edges.
inline RainbowTree exact_max_rainbow_tree(const ColouredGraph& g) {
  if (g.size() > 22) throw Error(ErrorCode::TooLarge, "exact_max_rainbow_tree needs at most 22 edges");
  RainbowTree best;
  best.order = g.order() == 0 ? 0 : 1;
  const std::size_t m = g.size();
  const std::size_t cap = g.order() == 0 ? 0 : g.order() - 1;

  std::vector<EdgeId> chosen;
  std::vector<std::uint32_t> colour_used(std::size_t{g.colours()} + 1, 0);
  std::vector<std::uint32_t> touched(g.order(), 0);
  std::size_t touched_count = 0;

  // Union-find without path compression so that unions can be undone.
  std::vector<Vertex> parent(g.order());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };

  auto search = [&](auto&& self, std::size_t next) -> void {
    if (!chosen.empty() && touched_count == chosen.size() + 1 && chosen.size() > best.edges.size()) {
      best.edges = chosen;
      best.order = chosen.size() + 1;
    }
    if (best.edges.size() == cap) return;
    if (chosen.size() + (m - next) <= best.edges.size()) return;
    for (std::size_t id = next; id < m; ++id) {
      if (chosen.size() + (m - id) <= best.edges.size()) return;
      const Edge& e = g.edge(static_cast<EdgeId>(id));
      if (e.u == e.v || colour_used[e.colour]) continue;
      const Vertex a = find(e.u);
      const Vertex b = find(e.v);
      if (a == b) continue;
      parent[a] = b;
      ++colour_used[e.colour];
      touched_count += (touched[e.u]++ == 0) + (touched[e.v]++ == 0);
      chosen.push_back(static_cast<EdgeId>(id));
      self(self, id + 1);
      chosen.pop_back();
      touched_count -= (--touched[e.u] == 0) + (--touched[e.v] == 0);
      --colour_used[e.colour];
      parent[a] = a;
      if (best.edges.size() == cap) return;
    }
  };
  search(search, 0);
  return best;
}

/// E[min{|T1|, |T2|}] for a uniform tree on m vertices and a uniform edge,
/// by enumerating all (tree, edge) pairs. Guarded to m <= 7.
inline Fraction exact_min_deleted_component_expectation(std::size_t m) {
  if (m > 7) throw Error(ErrorCode::TooLarge, "needs m <= 7");
  if (m < 2) throw Error(ErrorCode::InvalidConfig, "needs m >= 2");
  const EnumerationResult trees = enumerate_forests(m, 1);
  Fraction out{0, 0};
  for (const RootedForest& f : trees.forests) {
    const std::vector<std::size_t> size = subtree_sizes(f);
    for (std::size_t w = 1; w < m; ++w) {
      out.numerator += std::min(size[w], m - size[w]);
      ++out.denominator;
    }
  }
  return out;
}

/// E[B_e] over a uniform forest of F(m, t) and a uniform edge, by enumeration.
inline Fraction exact_mean_bridge_number(std::size_t m, std::size_t t) {
  if (m == t) throw Error(ErrorCode::InvalidConfig, "forest has no edges");
  Fraction out{0, 0};
  for (const RootedForest& f : enumerate_forests(m, t).forests) {
    const std::vector<std::size_t> size = subtree_sizes(f);
    for (std::size_t w = t; w < m; ++w) {
      out.numerator += size[w];
      ++out.denominator;
    }
  }
  return out;
}

/// E[min{B_e, B_e'}] over a uniform forest of F(m, t) and two distinct
/// uniform edges, by enumeration.
inline Fraction exact_mean_min_double_bridge(std::size_t m, std::size_t t) {
  if (m < t + 2) throw Error(ErrorCode::InvalidConfig, "forest needs at least two edges");
  Fraction out{0, 0};
  for (const RootedForest& f : enumerate_forests(m, t).forests) {
    const std::vector<std::size_t> size = subtree_sizes(f);
    for (std::size_t a = t; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        out.numerator += std::min(size[a], size[b]);
        ++out.denominator;
      }
  }
  return out;
}

/// Borel(1) probability mass e^{-k} k^{k-1} / k!.
inline double borel_pmf(std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidConfig, "Borel support starts at 1");
  const double kd = static_cast<double>(k);
  return std::exp(-kd + (kd - 1.0) * std::log(kd) - std::lgamma(kd + 1.0));
}

}  // namespace rainbow
