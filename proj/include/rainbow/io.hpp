#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rainbow/errors.hpp"
#include "rainbow/graph.hpp"

namespace rainbow {

/// Edge-list text: a header line `n c`, then one `u v colour` line per edge.
inline void write_edge_list(std::ostream& out, const ColouredGraph& g) {
  out << g.order() << ' ' << g.colours() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.colour << '\n';
}

/// Reads the edge-list format; a file containing loops or parallel edges is
/// read as a multigraph.
inline ColouredGraph read_edge_list(std::istream& in) {
  std::string line;
  auto next_line = [&]() {
    while (std::getline(in, line))
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    return false;
  };
  if (!next_line()) throw Error(ErrorCode::ParseError, "missing header line");
  std::uint64_t n = 0;
  std::uint64_t c = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> c) || (header >> extra)) throw Error(ErrorCode::ParseError, "bad header: " + line);
  }
  std::vector<Edge> edges;
  bool multi = false;
  std::size_t line_no = 1;
  while (next_line()) {
    ++line_no;
    std::istringstream row(line);
    std::uint64_t u = 0, v = 0, colour = 0;
    std::string extra;
    if (!(row >> u >> v >> colour) || (row >> extra))
      throw Error(ErrorCode::ParseError, "bad edge line " + std::to_string(line_no) + ": " + line);
    if (u >= n || v >= n) throw Error(ErrorCode::InvalidGraph, "vertex out of range on line " + std::to_string(line_no));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Colour>(colour)});
    multi = multi || u == v;
  }
  if (!multi) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (const Edge& e : edges) pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    std::sort(pairs.begin(), pairs.end());
    multi = std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end();
  }
  return ColouredGraph(static_cast<Vertex>(n), static_cast<Colour>(c), std::move(edges),
                       multi ? GraphKind::Multigraph : GraphKind::Simple);
}

inline ColouredGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_edge_list(in);
}

}  // namespace rainbow
