#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

/// Connected components. A component is identified by its smallest vertex.
struct VertexPartition {
  std::vector<Vertex> component;        // component id of each vertex
  std::vector<std::size_t> sizes;       // component orders, descending
  std::vector<Vertex> ids;              // component ids, same order as `sizes`

  std::size_t count() const { return sizes.size(); }

  /// Id of the largest component; ties go to the smallest contained vertex.
  Vertex largest() const { return ids.empty() ? kNoVertex : ids.front(); }
  std::size_t largest_size() const { return sizes.empty() ? 0 : sizes.front(); }

  std::vector<Vertex> members(Vertex id) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < component.size(); ++v)
      if (component[v] == id) out.push_back(v);
    return out;
  }
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), Vertex{0}); }

  Vertex find(Vertex x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<Vertex> parent_;
  std::vector<unsigned char> rank_;
};

/// Labels components of the subgraph formed by vertices with `keep_vertex`
/// and edges with `keep_edge`; excluded vertices get kNoVertex.
template <typename KeepVertex, typename KeepEdge>
VertexPartition label_components(const ColouredGraph& g, KeepVertex keep_vertex, KeepEdge keep_edge) {
  UnionFind uf(g.order());
  for (EdgeId id = 0; id < g.size(); ++id) {
    const Edge& e = g.edge(id);
    if (keep_edge(id) && keep_vertex(e.u) && keep_vertex(e.v)) uf.unite(e.u, e.v);
  }
  VertexPartition out;
  out.component.assign(g.order(), kNoVertex);
  std::vector<Vertex> label(g.order(), kNoVertex);
  std::vector<std::size_t> count(g.order(), 0);
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!keep_vertex(v)) continue;
    const Vertex r = uf.find(v);
    if (label[r] == kNoVertex) label[r] = v;
    out.component[v] = label[r];
    ++count[label[r]];
  }
  for (Vertex v = 0; v < g.order(); ++v)
    if (count[v] > 0) out.ids.push_back(v);
  std::stable_sort(out.ids.begin(), out.ids.end(), [&](Vertex a, Vertex b) { return count[a] > count[b]; });
  out.sizes.reserve(out.ids.size());
  for (Vertex id : out.ids) out.sizes.push_back(count[id]);
  return out;
}

}  // namespace detail

inline VertexPartition connected_components(const ColouredGraph& g) {
  return detail::label_components(g, [](Vertex) { return true; }, [](EdgeId) { return true; });
}

/// Number of edges inside each component, indexed by component id.
inline std::vector<std::size_t> component_edge_counts(const ColouredGraph& g, const VertexPartition& p) {
  std::vector<std::size_t> counts(g.order(), 0);
  for (const Edge& e : g.edges()) ++counts[p.component[e.u]];
  return counts;
}

/// Membership mask of the 2-core of the subgraph induced by `within`
/// (all vertices when empty). Loops contribute two to a degree.
inline std::vector<char> two_core_mask(const ColouredGraph& g, const std::vector<char>& within = {}) {
  const Vertex n = g.order();
  std::vector<char> alive(n, 1);
  if (!within.empty()) alive = within;
  std::vector<char> edge_alive(g.size(), 0);
  std::vector<std::size_t> degree(n, 0);
  for (EdgeId id = 0; id < g.size(); ++id) {
    const Edge& e = g.edge(id);
    if (!alive[e.u] || !alive[e.v]) continue;
    edge_alive[id] = 1;
    ++degree[e.u];
    ++degree[e.v];
  }
  const Adjacency adj(g);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v] && degree[v] <= 1) queue.push_back(v);
  std::vector<char> queued(n, 0);
  for (Vertex v : queue) queued[v] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    alive[v] = 0;
    for (const auto& [w, id] : adj[v]) {
      if (!edge_alive[id]) continue;
      edge_alive[id] = 0;
      if (w == v) continue;
      if (--degree[w] <= 1 && alive[w] && !queued[w]) {
        queued[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return alive;
}

/// The 2-core: the maximal subgraph of minimum degree at least two, found by
/// repeatedly deleting vertices of degree at most one. Vertex ids are kept;
/// vertices outside the core are isolated in the result.
inline ColouredGraph two_core(const ColouredGraph& g) {
  const std::vector<char> core = two_core_mask(g);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (core[e.u] && core[e.v]) edges.push_back(e);
  return ColouredGraph::unchecked(g.order(), g.colours(), std::move(edges), g.kind());
}

/// Edge ids of a spanning forest of the subgraph (vertices with `keep_vertex`,
/// edges with `keep_edge`) restricted to the component containing `root`, in
/// BFS order from `root` with neighbours visited in ascending id order.
template <typename KeepVertex, typename KeepEdge>
std::vector<EdgeId> bfs_spanning_tree(const Adjacency& adj, Vertex root, KeepVertex keep_vertex, KeepEdge keep_edge) {
  std::vector<EdgeId> tree;
  if (root == kNoVertex) return tree;
  std::vector<char> seen(adj.order(), 0);
  std::deque<Vertex> queue{root};
  seen[root] = 1;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (const auto& [w, id] : adj[v]) {
      if (seen[w] || !keep_vertex(w) || !keep_edge(id)) continue;
      seen[w] = 1;
      tree.push_back(id);
      queue.push_back(w);
    }
  }
  return tree;
}

}  // namespace rainbow
