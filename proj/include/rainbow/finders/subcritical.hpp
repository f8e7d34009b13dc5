#pragma once

#include <vector>

#include "rainbow/components.hpp"
#include "rainbow/finders/common.hpp"

namespace rainbow {

/// Rainbow tree inside the largest component T: every edge of T whose colour
/// occurs more than once in T is deleted, and a spanning tree of the largest
/// surviving piece is returned (the piece itself when T is a tree).
inline RainbowTree subcritical_rainbow_tree(const ColouredGraph& g) {
  RainbowTree out;
  if (g.order() == 0) return out;
  const VertexPartition parts = connected_components(g);
  const Vertex giant = parts.largest();
  auto inside = [&](const Edge& e) { return parts.component[e.u] == giant; };

  std::vector<std::uint32_t> multiplicity(std::size_t{g.colours()} + 1, 0);
  for (const Edge& e : g.edges())
    if (inside(e)) ++multiplicity[e.colour];
  std::vector<char> keep(g.size(), 0);
  for (EdgeId id = 0; id < g.size(); ++id) {
    const Edge& e = g.edge(id);
    keep[id] = inside(e) && e.u != e.v && multiplicity[e.colour] == 1;
  }

  auto in_giant = [&](Vertex v) { return parts.component[v] == giant; };
  auto kept = [&](EdgeId id) { return keep[id] != 0; };
  const VertexPartition survivors = detail::label_components(g, in_giant, kept);
  out.edges = bfs_spanning_tree(Adjacency(g), survivors.largest(), in_giant, kept);
  out.order = out.edges.size() + 1;
  detail::require_rainbow_tree(g, out.edges, "subcritical_rainbow_tree");
  return out;
}

}  // namespace rainbow
