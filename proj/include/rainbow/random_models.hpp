#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "rainbow/errors.hpp"
#include "rainbow/forest.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

/// Binomial random graph G(n, p), uncoloured (c = 0).
///
/// Pairs are visited in the order (0,1), (0,2), (1,2), (0,3), ... and skipped
/// geometrically, so the expected running time is O(n + p n^2).
inline ColouredGraph sample_gnp(Vertex n, double p, RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidProbability, "p = " + std::to_string(p));
  std::vector<Edge> edges;
  if (n < 2 || p == 0.0) return ColouredGraph::unchecked(n, 0, std::move(edges));
  if (p == 1.0) {
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (Vertex v = 1; v < n; ++v)
      for (Vertex u = 0; u < v; ++u) edges.push_back({u, v, 0});
    return ColouredGraph::unchecked(n, 0, std::move(edges));
  }
  const double expected = p * static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  edges.reserve(static_cast<std::size_t>(expected + 4.0 * std::sqrt(expected) + 16.0));
  const double log_q = std::log1p(-p);
  std::uint64_t v = 1;
  std::uint64_t w = 0;
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t skip = rng.geometric_skip(log_q);
  for (;;) {
    if (skip >= pairs) break;
    // Advance `skip` pairs past (w, v) within the lower triangle.
    std::uint64_t target = w + skip;
    while (v < n && target >= v) {
      target -= v;
      ++v;
    }
    if (v >= n) break;
    w = target;
    edges.push_back({static_cast<Vertex>(w), static_cast<Vertex>(v), 0});
    skip = rng.geometric_skip(log_q);
    if (skip < pairs) ++skip;
  }
  return ColouredGraph::unchecked(n, 0, std::move(edges));
}

/// Colours every edge independently and uniformly from [c]; edge order is kept.
inline ColouredGraph colour_uniform(const ColouredGraph& g, Colour c, RngStream& rng) {
  if (c < 1) throw Error(ErrorCode::InvalidConfig, "need at least one colour");
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e.colour = static_cast<Colour>(rng.below(c)) + 1;
  return ColouredGraph::unchecked(g.order(), c, std::move(edges), g.kind());
}

/// G_c(n, p): the graph and its colouring come from separate child streams.
inline ColouredGraph sample_coloured_gnp(Vertex n, double p, Colour c, RngStream& rng) {
  RngStream graph_rng = rng.child(0);
  RngStream colour_rng = rng.child(1);
  return colour_uniform(sample_gnp(n, p, graph_rng), c, colour_rng);
}

struct DegreeSequence {
  std::vector<std::size_t> degrees;

  std::size_t total() const { return std::accumulate(degrees.begin(), degrees.end(), std::size_t{0}); }
};

/// Configuration-model multigraph: a uniform perfect matching of half-edges.
///
/// Pairing is sequential: the last unmatched half-edge is matched with a
/// uniformly chosen other unmatched half-edge. Loops add two to a degree.
inline ColouredGraph sample_configuration(const DegreeSequence& d, RngStream& rng) {
  if (d.total() % 2 != 0) throw Error(ErrorCode::OddDegreeSum, "sum of degrees is " + std::to_string(d.total()));
  std::vector<Vertex> half_edges;
  half_edges.reserve(d.total());
  for (Vertex v = 0; v < d.degrees.size(); ++v) half_edges.insert(half_edges.end(), d.degrees[v], v);
  std::vector<Edge> edges;
  edges.reserve(half_edges.size() / 2);
  while (!half_edges.empty()) {
    const Vertex a = half_edges.back();
    half_edges.pop_back();
    const std::size_t j = rng.below(half_edges.size());
    const Vertex b = half_edges[j];
    half_edges[j] = half_edges.back();
    half_edges.pop_back();
    edges.push_back({std::min(a, b), std::max(a, b), 0});
  }
  return ColouredGraph::unchecked(static_cast<Vertex>(d.degrees.size()), 0, std::move(edges), GraphKind::Multigraph);
}

/// Degree of every vertex of a (multi)graph, loops counted twice.
inline DegreeSequence degree_sequence(const ColouredGraph& g) {
  DegreeSequence d{std::vector<std::size_t>(g.order(), 0)};
  for (const Edge& e : g.edges()) {
    ++d.degrees[e.u];
    ++d.degrees[e.v];
  }
  return d;
}

/// Uniform forest from F(m, t): t trees on m labelled vertices with roots
/// 0..t-1 in distinct trees.
///
/// Wilson's algorithm on the complete graph with the root set absorbing: each
/// non-root starts a random walk that moves to a uniform other vertex until
/// it hits the current forest, and the loop-erased walk is attached.
inline RootedForest sample_uniform_forest(std::size_t m, std::size_t t, RngStream& rng) {
  if (t < 1 || t > m) throw Error(ErrorCode::InvalidRootCount, "need 1 <= t <= m");
  RootedForest f{m, t, std::vector<Vertex>(m, kNoVertex)};
  std::vector<char> in_forest(m, 0);
  std::fill(in_forest.begin(), in_forest.begin() + static_cast<std::ptrdiff_t>(t), 1);
  std::vector<Vertex> next(m, kNoVertex);
  for (Vertex start = static_cast<Vertex>(t); start < m; ++start) {
    for (Vertex u = start; !in_forest[u];) {
      auto step = static_cast<Vertex>(rng.below(m - 1));
      if (step >= u) ++step;
      next[u] = step;
      u = step;
    }
    for (Vertex u = start; !in_forest[u]; u = next[u]) {
      in_forest[u] = 1;
      f.parent[u] = next[u];
    }
  }
  return f;
}

/// Survival probability of a Poisson(d) branching process: the root in (0, 1)
/// of 1 - γ = e^{-γd} for d > 1, and 0 for d <= 1.
inline double survival_probability(double d) {
  if (!(d > 1.0)) return 0.0;
  // Residual written as -γ - expm1(-γd) to avoid cancellation near γ = 0.
  auto residual = [d](double g) { return -g - std::expm1(-g * d); };
  double lo = 1e-12;
  double hi = 1.0 - 1e-12;
  for (int i = 0; i < 200 && hi - lo > 1e-6; ++i) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }
  double g = 0.5 * (lo + hi);
  for (int i = 0; i < 50; ++i) {
    const double slope = -1.0 + d * std::exp(-g * d);
    const double next = g - residual(g) / slope;
    if (!(next > lo && next < hi)) break;
    if (std::abs(next - g) < 1e-15) {
      g = next;
      break;
    }
    g = next;
  }
  return g;
}

/// Approximate probability that a given colour of [αn] appears in the giant
/// component of G(n, d/n): 1 - (1-γ)^{(1-γ/2)/α}.
inline double expected_colour_fraction(double alpha, double d) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidConfig, "alpha must be positive");
  const double g = survival_probability(d);
  return 1.0 - std::pow(1.0 - g, (1.0 - g / 2.0) / alpha);
}

}  // namespace rainbow
