#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kst/graph.hpp"

namespace kst {

namespace detail {

// Splits a line into integer tokens; false on anything that is not a plain non-negative integer.
inline bool parse_ints(const std::string& line, std::vector<long long>& out) {
  out.clear();
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok.empty() || tok.size() > 18 || tok.find_first_not_of("0123456789") != std::string::npos)
      return false;
    out.push_back(std::stoll(tok));
  }
  return true;
}

} // namespace detail

/// Reads the edge-list format: `n m`, then m lines `u v` with 0 ≤ u < v < n.
/// Blank lines are skipped. Errors carry the 1-based line number.
inline Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<long long> tok;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        return true;
    }
    return false;
  };

  if (!next_line())
    throw parse_error(lineno + 1, "missing header `n m`");
  if (!detail::parse_ints(line, tok) || tok.size() != 2)
    throw parse_error(lineno, "header must be `n m`");
  const long long n = tok[0], m = tok[1];
  if (n > 1'000'000)
    throw parse_error(lineno, "vertex count too large");
  if (m > n * (n - 1) / 2)
    throw parse_error(lineno, "more edges than a simple graph allows");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::vector<std::vector<Vertex>> seen(static_cast<std::size_t>(n));
  for (long long i = 0; i < m; ++i) {
    if (!next_line())
      throw parse_error(lineno + 1, "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    if (!detail::parse_ints(line, tok) || tok.size() != 2)
      throw parse_error(lineno, "edge line must be `u v`");
    const long long u = tok[0], v = tok[1];
    if (u == v)
      throw parse_error(lineno, "self-loop " + std::to_string(u));
    if (u > v)
      throw parse_error(lineno, "edge endpoints must satisfy u < v");
    if (v >= n)
      throw parse_error(lineno, "vertex " + std::to_string(v) + " out of range");
    auto& row = seen[static_cast<std::size_t>(u)];
    if (std::find(row.begin(), row.end(), static_cast<Vertex>(v)) != row.end())
      throw parse_error(lineno, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    row.push_back(static_cast<Vertex>(v));
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (next_line())
    throw parse_error(lineno, "trailing content after " + std::to_string(m) + " edges");
  return Graph(static_cast<int>(n), edges);
}

inline Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw input_error("cannot open " + path);
  return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.edge_count() << '\n';
  for (auto [a, b] : g.edges())
    out << a << ' ' << b << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

/// FNV-1a over the canonical edge-list text.
inline std::uint64_t graph_digest(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : to_edge_list(g)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Graphviz export. Edges in `highlight` are drawn bold.
inline void write_dot(std::ostream& out, const Graph& g, const std::vector<Edge>& highlight = {}) {
  std::vector<Edge> marked;
  for (auto [a, b] : highlight)
    marked.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(marked.begin(), marked.end());
  out << "graph G {\n";
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) == 0)
      out << "  " << v << ";\n";
  for (auto e : g.edges()) {
    out << "  " << e.first << " -- " << e.second;
    if (std::binary_search(marked.begin(), marked.end(), e))
      out << " [penwidth=3]";
    out << ";\n";
  }
  out << "}\n";
}

} // namespace kst
