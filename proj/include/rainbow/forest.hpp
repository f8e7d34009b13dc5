#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "rainbow/errors.hpp"
#include "rainbow/graph.hpp"

namespace rainbow {

/// Forest on vertices 0..m-1 with t trees whose roots are 0..t-1.
///
/// Every non-root w has a parent; the forest edge (parent[w], w) is oriented
/// away from the root, so it is identified by its lower endpoint w.
struct RootedForest {
  std::size_t m = 0;
  std::size_t t = 0;
  std::vector<Vertex> parent;  // kNoVertex for roots

  std::size_t edge_count() const { return m - t; }
  bool is_root(Vertex v) const { return v < t; }

  friend bool operator==(const RootedForest&, const RootedForest&) = default;
};

/// Vertices ordered so that every parent precedes its children (roots first).
/// Throws InvalidRootCount if the parent array is not a valid rooted forest.
inline std::vector<Vertex> top_down_order(const RootedForest& f) {
  if (f.t == 0 || f.t > f.m || f.parent.size() != f.m)
    throw Error(ErrorCode::InvalidRootCount, "need 1 <= t <= m and one parent entry per vertex");
  std::vector<std::size_t> offset(f.m + 1, 0);
  for (Vertex w = 0; w < f.m; ++w) {
    if (f.is_root(w)) {
      if (f.parent[w] != kNoVertex) throw Error(ErrorCode::InvalidRootCount, "root with a parent");
      continue;
    }
    if (f.parent[w] >= f.m || f.parent[w] == w) throw Error(ErrorCode::InvalidRootCount, "bad parent entry");
    ++offset[f.parent[w] + 1];
  }
  for (std::size_t i = 0; i < f.m; ++i) offset[i + 1] += offset[i];
  std::vector<Vertex> children(offset.back());
  std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
  for (Vertex w = static_cast<Vertex>(f.t); w < f.m; ++w) children[fill[f.parent[w]]++] = w;

  std::vector<Vertex> order;
  order.reserve(f.m);
  for (Vertex r = 0; r < f.t; ++r) order.push_back(r);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex v = order[head];
    for (std::size_t i = offset[v]; i < offset[v + 1]; ++i) order.push_back(children[i]);
  }
  if (order.size() != f.m) throw Error(ErrorCode::InvalidRootCount, "parent array contains a cycle");
  return order;
}

/// Checks the forest invariants: acyclic, exactly t trees, one root each.
inline bool is_valid(const RootedForest& f) {
  try {
    top_down_order(f);
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// subtree[w] = number of vertices in the subtree hanging below w, i.e. the
/// bridge number of the edge (parent[w], w). Roots get the order of their tree.
inline std::vector<std::size_t> subtree_sizes(const RootedForest& f) {
  const std::vector<Vertex> order = top_down_order(f);
  std::vector<std::size_t> size(f.m, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (!f.is_root(*it)) size[f.parent[*it]] += size[*it];
  return size;
}

/// Root of each vertex's tree.
inline std::vector<Vertex> roots_of(const RootedForest& f) {
  const std::vector<Vertex> order = top_down_order(f);
  std::vector<Vertex> root(f.m);
  for (Vertex v : order) root[v] = f.is_root(v) ? v : root[f.parent[v]];
  return root;
}

/// Order of each tree, indexed by root. One memoised walk up the parent
/// pointers per vertex; cheaper than subtree_sizes when only trees matter.
inline std::vector<std::size_t> tree_orders(const RootedForest& f) {
  if (f.t == 0 || f.t > f.m || f.parent.size() != f.m)
    throw Error(ErrorCode::InvalidRootCount, "need 1 <= t <= m and one parent entry per vertex");
  constexpr Vertex kPending = kNoVertex - 1;
  std::vector<Vertex> root(f.m, kNoVertex);
  for (Vertex r = 0; r < f.t; ++r) root[r] = r;
  std::vector<Vertex> walk;
  for (Vertex w = static_cast<Vertex>(f.t); w < f.m; ++w) {
    Vertex u = w;
    while (root[u] == kNoVertex) {
      root[u] = kPending;
      walk.push_back(u);
      u = f.parent[u];
      if (u >= f.m) throw Error(ErrorCode::InvalidRootCount, "bad parent entry");
    }
    if (root[u] == kPending) throw Error(ErrorCode::InvalidRootCount, "parent pointers contain a cycle");
    for (Vertex x : walk) root[x] = root[u];
    walk.clear();
  }
  std::vector<std::size_t> order(f.t, 0);
  for (Vertex r : root) ++order[r];
  return order;
}

/// Bridge number of the forest edge vw, where v is the endpoint nearer the root.
inline std::size_t bridge_number(const RootedForest& f, Vertex v, Vertex w) {
  if (w >= f.m || f.is_root(w) || f.parent[w] != v)
    throw Error(ErrorCode::EdgeNotInForest, std::to_string(v) + "-" + std::to_string(w));
  return subtree_sizes(f)[w];
}

/// Text form `m t p_t ... p_{m-1}`: the parents of the non-root vertices.
inline std::string to_text(const RootedForest& f) {
  std::ostringstream out;
  out << f.m << ' ' << f.t;
  for (std::size_t w = f.t; w < f.m; ++w) out << ' ' << f.parent[w];
  return out.str();
}

inline RootedForest forest_from_text(const std::string& line) {
  std::istringstream in(line);
  RootedForest f;
  if (!(in >> f.m >> f.t)) throw Error(ErrorCode::ParseError, "forest header");
  f.parent.assign(f.m, kNoVertex);
  for (std::size_t w = f.t; w < f.m; ++w)
    if (!(in >> f.parent[w])) throw Error(ErrorCode::ParseError, "forest parent list too short");
  std::string extra;
  if (in >> extra) throw Error(ErrorCode::ParseError, "trailing data after forest");
  if (!is_valid(f)) throw Error(ErrorCode::InvalidRootCount, "forest invariants violated");
  return f;
}

}  // namespace rainbow
