#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/errors.hpp"

namespace rainbow {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
/// Colours are 1-based in [c]; 0 marks an uncoloured edge.
using Colour = std::uint32_t;

inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);
inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Colour colour = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class GraphKind { Simple, Multigraph };

/// Undirected (multi)graph on vertices 0..n-1 with a colour per edge.
///
/// Edge ids are positions in `edges()`. Loops and parallel edges are only
/// accepted when the graph is flagged as a multigraph.
class ColouredGraph {
 public:
  ColouredGraph() = default;

  ColouredGraph(Vertex n, Colour colours, std::vector<Edge> edges, GraphKind kind = GraphKind::Simple)
      : n_(n), colours_(colours), kind_(kind), edges_(std::move(edges)) {
    validate();
  }

  /// Skips validation; for samplers that construct valid graphs by design.
  static ColouredGraph unchecked(Vertex n, Colour colours, std::vector<Edge> edges,
                                 GraphKind kind = GraphKind::Simple) {
    ColouredGraph g;
    g.n_ = n;
    g.colours_ = colours;
    g.kind_ = kind;
    g.edges_ = std::move(edges);
    return g;
  }

  Vertex order() const { return n_; }
  Colour colours() const { return colours_; }
  GraphKind kind() const { return kind_; }
  bool is_multigraph() const { return kind_ == GraphKind::Multigraph; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[id]; }

  /// Copy of this graph with colours replaced (`colours.size() == size()`).
  ColouredGraph recoloured(Colour c, std::span<const Colour> colours) const {
    if (colours.size() != edges_.size()) throw Error(ErrorCode::InvalidGraph, "colour vector length mismatch");
    std::vector<Edge> edges = edges_;
    for (std::size_t i = 0; i < edges.size(); ++i) edges[i].colour = colours[i];
    return ColouredGraph(n_, c, std::move(edges), kind_);
  }

  friend bool operator==(const ColouredGraph&, const ColouredGraph&) = default;

 private:
  void validate() const {
    for (const Edge& e : edges_) {
      if (e.u >= n_ || e.v >= n_) throw Error(ErrorCode::InvalidGraph, "edge endpoint out of range");
      if (colours_ == 0 ? e.colour != 0 : (e.colour < 1 || e.colour > colours_))
        throw Error(ErrorCode::InvalidGraph, "colour " + std::to_string(e.colour) + " outside [c]");
    }
    if (kind_ == GraphKind::Multigraph) return;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    pairs.reserve(edges_.size());
    for (const Edge& e : edges_) {
      if (e.u == e.v) throw Error(ErrorCode::InvalidGraph, "loop in simple graph");
      pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end())
      throw Error(ErrorCode::InvalidGraph, "parallel edge in simple graph");
  }

  Vertex n_ = 0;
  Colour colours_ = 0;
  GraphKind kind_ = GraphKind::Simple;
  std::vector<Edge> edges_;
};

/// Compressed adjacency lists; each list is sorted by (neighbour, edge id).
/// A loop appears twice in its vertex's list.
class Adjacency {
 public:
  struct Entry {
    Vertex neighbour;
    EdgeId edge;
  };

  Adjacency() = default;

  explicit Adjacency(const ColouredGraph& g) : offsets_(std::size_t{g.order()} + 1, 0) {
    for (const Edge& e : g.edges()) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    entries_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // Filling in edge-id order and then sorting by neighbour keeps ties in id order.
    for (EdgeId id = 0; id < g.size(); ++id) {
      const Edge& e = g.edge(id);
      entries_[fill[e.u]++] = {e.v, id};
      entries_[fill[e.v]++] = {e.u, id};
    }
    for (Vertex v = 0; v < g.order(); ++v) {
      std::stable_sort(entries_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                       entries_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
                       [](const Entry& a, const Entry& b) { return a.neighbour < b.neighbour; });
    }
  }

  std::span<const Entry> operator[](Vertex v) const {
    return {entries_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  Vertex order() const { return static_cast<Vertex>(offsets_.size() - 1); }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

/// True iff the colours of the given edges are pairwise distinct.
inline bool is_rainbow(std::span<const Edge> edges) {
  std::vector<Colour> colours;
  colours.reserve(edges.size());
  for (const Edge& e : edges) colours.push_back(e.colour);
  std::sort(colours.begin(), colours.end());
  return std::adjacent_find(colours.begin(), colours.end()) == colours.end();
}

inline bool is_rainbow(const ColouredGraph& g, std::span<const EdgeId> subset) {
  std::vector<Edge> edges;
  edges.reserve(subset.size());
  for (EdgeId id : subset) edges.push_back(g.edge(id));
  return is_rainbow(edges);
}

/// True iff the edges form a single tree on the vertices they touch
/// (an empty edge set counts as the one-vertex tree).
inline bool is_tree(std::span<const Edge> edges) {
  if (edges.empty()) return true;
  std::vector<Vertex> vertices;
  for (const Edge& e : edges) {
    vertices.push_back(e.u);
    vertices.push_back(e.v);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices.size() != edges.size() + 1) return false;
  std::vector<Vertex> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index = [&](Vertex v) {
    return static_cast<Vertex>(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin());
  };
  for (const Edge& e : edges) {
    const Vertex a = find(index(e.u));
    const Vertex b = find(index(e.v));
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

inline bool is_tree(const ColouredGraph& g, std::span<const EdgeId> subset) {
  std::vector<Edge> edges;
  edges.reserve(subset.size());
  for (EdgeId id : subset) edges.push_back(g.edge(id));
  return is_tree(edges);
}

}  // namespace rainbow
