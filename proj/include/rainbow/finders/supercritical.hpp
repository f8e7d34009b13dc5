#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "rainbow/core_decomposition.hpp"
#include "rainbow/finders/common.hpp"

namespace rainbow {

/// Per-stage accounting of the core/forest deletion pipeline. Vertex losses
/// x1..x4 count vertices newly removed by each forest step, so
/// final_tree_order == lu_order - (x1 + x2 + x3 + x4).
struct PipelineReport {
  std::size_t giant_order = 0;
  std::size_t lu_order = 0;            // |L ∪ U|
  std::size_t core_order = 0;          // |V(C)|
  std::size_t core_size = 0;           // e(C)
  std::size_t non_unique_core_edges = 0;
  std::size_t hat_core_order = 0;      // |V(Ĉ)|
  std::size_t colour_set_size = 0;     // |Z|
  std::size_t forest_edges = 0;
  std::size_t x1 = 0;
  std::size_t x2 = 0;
  std::size_t x3 = 0;
  std::size_t x4 = 0;
  std::size_t final_tree_order = 0;
  /// Step (3) decisions as (bridge number deleted, bridge number kept).
  std::vector<std::pair<std::size_t, std::size_t>> double_colour_bridges;
};

struct SupercriticalResult {
  RainbowTree tree;
  PipelineReport report;
};

/// Rainbow tree covering most of the giant component, built from its 2-core C
/// and the forest F rooted at V(C):
///   - delete every core edge whose colour is not unique in C, keep the
///     largest remaining core piece Ĉ with colour set Z;
///   1. delete the branch of every forest edge coloured in Z;
///   2. delete the branches of all edges of colours seen at least 3 times in F;
///   3. for colours seen exactly twice in F, delete the branch with the smaller
///      bridge number (ties: smaller edge id);
///   4. delete the trees whose roots are not in Ĉ.
/// Throws EmptyCore when the giant component has no 2-core.
inline SupercriticalResult supercritical_rainbow_tree(const ColouredGraph& g) {
  const VertexPartition parts = connected_components(g);
  const Vertex giant_id = parts.largest();
  std::vector<Vertex> giant;
  std::vector<Vertex> unicyclic;
  if (giant_id != kNoVertex) {
    giant = parts.members(giant_id);
    for (Vertex v : unicyclic_vertices(g, parts))
      if (parts.component[v] != giant_id) unicyclic.push_back(v);
  }
  if (giant.empty()) throw Error(ErrorCode::EmptyCore, "empty graph");
  const CoreDecomposition dec = core_forest_decomposition(g, giant, unicyclic);

  SupercriticalResult result;
  PipelineReport& report = result.report;
  report.giant_order = giant.size();
  report.lu_order = dec.forest.m;
  report.core_order = dec.core_vertices.size();
  report.core_size = dec.core_edges.size();

  // Core: drop colours that repeat inside C.
  std::vector<std::uint32_t> core_multiplicity(std::size_t{g.colours()} + 1, 0);
  for (EdgeId id : dec.core_edges) ++core_multiplicity[g.edge(id).colour];
  std::vector<char> core_kept(g.size(), 0);
  for (EdgeId id : dec.core_edges) {
    if (core_multiplicity[g.edge(id).colour] == 1) core_kept[id] = 1;
    else ++report.non_unique_core_edges;
  }
  std::vector<char> in_core(g.order(), 0);
  for (Vertex v : dec.core_vertices) in_core[v] = 1;
  auto core_vertex = [&](Vertex v) { return in_core[v] != 0; };
  auto core_edge = [&](EdgeId id) { return core_kept[id] != 0; };
  const VertexPartition pieces = detail::label_components(g, core_vertex, core_edge);
  const Vertex hat_id = pieces.largest();
  report.hat_core_order = pieces.largest_size();

  std::vector<char> in_z(std::size_t{g.colours()} + 1, 0);
  for (EdgeId id : dec.core_edges) {
    const Edge& e = g.edge(id);
    if (core_kept[id] && pieces.component[e.u] == hat_id) {
      in_z[e.colour] = 1;
      ++report.colour_set_size;
    }
  }

  // Forest steps, on local labels; vertex w stands for the edge (parent[w], w).
  const RootedForest& f = dec.forest;
  report.forest_edges = f.edge_count();
  const std::vector<std::size_t> bridge = subtree_sizes(f);
  const std::vector<Vertex> order = top_down_order(f);
  auto colour_of = [&](Vertex w) { return g.edge(dec.parent_edge[w]).colour; };

  std::vector<std::uint32_t> forest_multiplicity(std::size_t{g.colours()} + 1, 0);
  for (auto w = static_cast<Vertex>(f.t); w < f.m; ++w) ++forest_multiplicity[colour_of(w)];

  std::vector<char> cut(f.m, 0);
  std::vector<char> removed(f.m, 0);
  auto apply_cuts = [&]() {
    std::size_t newly = 0;
    for (Vertex v : order) {
      const bool gone = cut[v] || (!f.is_root(v) && removed[f.parent[v]]);
      if (gone && !removed[v]) {
        removed[v] = 1;
        ++newly;
      }
    }
    return newly;
  };

  for (auto w = static_cast<Vertex>(f.t); w < f.m; ++w)
    if (in_z[colour_of(w)]) cut[w] = 1;
  report.x1 = apply_cuts();

  for (auto w = static_cast<Vertex>(f.t); w < f.m; ++w)
    if (forest_multiplicity[colour_of(w)] >= 3) cut[w] = 1;
  report.x2 = apply_cuts();

  std::vector<Vertex> first_with_colour(std::size_t{g.colours()} + 1, kNoVertex);
  for (auto w = static_cast<Vertex>(f.t); w < f.m; ++w) {
    const Colour col = colour_of(w);
    if (forest_multiplicity[col] != 2) continue;
    if (first_with_colour[col] == kNoVertex) {
      first_with_colour[col] = w;
      continue;
    }
    const Vertex a = first_with_colour[col];
    const auto key = [&](Vertex x) { return std::pair{bridge[x], dec.parent_edge[x]}; };
    const Vertex lose = key(a) < key(w) ? a : w;
    const Vertex keep = lose == a ? w : a;
    cut[lose] = 1;
    report.double_colour_bridges.emplace_back(bridge[lose], bridge[keep]);
  }
  report.x3 = apply_cuts();

  for (Vertex r = 0; r < f.t; ++r)
    if (pieces.component[dec.to_global[r]] != hat_id) cut[r] = 1;
  report.x4 = apply_cuts();

  // Output: spanning tree of Ĉ plus the surviving forest edges.
  const Adjacency adj(g);
  std::vector<EdgeId>& edges = result.tree.edges;
  edges = bfs_spanning_tree(adj, hat_id, core_vertex, core_edge);
  for (auto w = static_cast<Vertex>(f.t); w < f.m; ++w)
    if (!removed[w]) edges.push_back(dec.parent_edge[w]);
  result.tree.order = edges.size() + 1;
  report.final_tree_order = result.tree.order;
  detail::require_rainbow_tree(g, edges, "supercritical_rainbow_tree");
  return result;
}

}  // namespace rainbow
