#pragma once

#include <algorithm>
#include <vector>

#include "rainbow/components.hpp"
#include "rainbow/forest.hpp"

namespace rainbow {

/// Split of the giant and unicyclic components into their 2-core C and the
/// forest hanging off it.
///
/// `forest` is relabelled: local vertices 0..t-1 are the core vertices (in
/// ascending global id), the remaining local ids are the other vertices of
/// L ∪ U in ascending global id. `to_global` maps local ids back.
struct CoreDecomposition {
  std::vector<Vertex> core_vertices;     // V(C), ascending
  std::vector<EdgeId> core_edges;        // E(C), ascending
  std::vector<Vertex> unicyclic_vertices;
  RootedForest forest;
  std::vector<Vertex> to_global;
  std::vector<EdgeId> parent_edge;       // graph edge joining local w to its parent; kNoEdge for roots

  std::vector<EdgeId> forest_edges() const {
    std::vector<EdgeId> out;
    for (std::size_t w = forest.t; w < forest.m; ++w) out.push_back(parent_edge[w]);
    return out;
  }
};

/// Vertices of all components with exactly one cycle (edges == vertices).
inline std::vector<Vertex> unicyclic_vertices(const ColouredGraph& g, const VertexPartition& p) {
  const std::vector<std::size_t> edges = component_edge_counts(g, p);
  std::vector<std::size_t> order(g.order(), 0);
  for (Vertex v = 0; v < g.order(); ++v) ++order[p.component[v]];
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.order(); ++v)
    if (edges[p.component[v]] == order[p.component[v]]) out.push_back(v);
  return out;
}

/// Decomposes G[giant ∪ unicyclic] into its 2-core and a forest rooted at the
/// core vertices, oriented away from the core by BFS.
inline CoreDecomposition core_forest_decomposition(const ColouredGraph& g, const std::vector<Vertex>& giant,
                                                   const std::vector<Vertex>& unicyclic) {
  std::vector<char> in_lu(g.order(), 0);
  for (Vertex v : giant) in_lu[v] = 1;
  for (Vertex v : unicyclic) in_lu[v] = 1;
  const std::vector<char> core = two_core_mask(g, in_lu);

  CoreDecomposition out;
  out.unicyclic_vertices = unicyclic;
  std::sort(out.unicyclic_vertices.begin(), out.unicyclic_vertices.end());
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (core[v]) out.core_vertices.push_back(v);
    else if (in_lu[v]) rest.push_back(v);
  }
  if (out.core_vertices.empty()) throw Error(ErrorCode::EmptyCore, "2-core of giant and unicyclic components is empty");
  if (std::none_of(giant.begin(), giant.end(), [&](Vertex v) { return core[v] != 0; }))
    throw Error(ErrorCode::EmptyCore, "giant component is a tree");

  std::vector<Vertex> to_local(g.order(), kNoVertex);
  out.to_global = out.core_vertices;
  out.to_global.insert(out.to_global.end(), rest.begin(), rest.end());
  for (Vertex i = 0; i < out.to_global.size(); ++i) to_local[out.to_global[i]] = i;

  for (EdgeId id = 0; id < g.size(); ++id) {
    const Edge& e = g.edge(id);
    if (core[e.u] && core[e.v]) out.core_edges.push_back(id);
  }

  RootedForest& f = out.forest;
  f.m = out.to_global.size();
  f.t = out.core_vertices.size();
  f.parent.assign(f.m, kNoVertex);
  out.parent_edge.assign(f.m, kNoEdge);

  const Adjacency adj(g);
  std::vector<char> reached(g.order(), 0);
  std::vector<Vertex> queue(out.core_vertices.begin(), out.core_vertices.end());
  for (Vertex v : queue) reached[v] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (const auto& [w, id] : adj[v]) {
      if (!in_lu[w] || reached[w] || core[w]) continue;
      reached[w] = 1;
      f.parent[to_local[w]] = to_local[v];
      out.parent_edge[to_local[w]] = id;
      queue.push_back(w);
    }
  }
  if (queue.size() != f.m)
    throw Error(ErrorCode::InvalidGraph, "a giant/unicyclic vertex is not attached to the core");
  return out;
}

}  // namespace rainbow
