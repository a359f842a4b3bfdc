#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "kst/families.hpp"
#include "kst/graph.hpp"

namespace fixtures {

using kst::Edge;
using kst::Graph;
using kst::Vertex;

inline Graph complete(int n) {
  std::vector<Edge> e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      e.emplace_back(a, b);
  return Graph(n, e);
}

inline Graph path(int n) {
  std::vector<Edge> e;
  for (Vertex a = 0; a + 1 < n; ++a)
    e.emplace_back(a, a + 1);
  return Graph(n, e);
}

inline Graph cycle(int n) {
  std::vector<Edge> e;
  for (Vertex a = 0; a + 1 < n; ++a)
    e.emplace_back(a, a + 1);
  e.emplace_back(0, n - 1);
  return Graph(n, e);
}

inline Graph edgeless(int n) { return Graph(n, std::vector<Edge>{}); }

/// Center 0 joined to 1..leaves.
inline Graph star(int leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v)
    e.emplace_back(0, v);
  return Graph(leaves + 1, e);
}

/// Hub 0 joined to the cycle 1..rim.
inline Graph wheel(int rim) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= rim; ++v) {
    e.emplace_back(0, v);
    e.emplace_back(v, v == rim ? 1 : v + 1);
  }
  return Graph(rim + 1, e);
}

/// K_n without the edges (2i, 2i+1).
inline Graph complete_minus_matching(int n) {
  std::vector<Edge> e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (!(a % 2 == 0 && b == a + 1))
        e.emplace_back(a, b);
  return Graph(n, e);
}

/// Connected G(n, p) samples from consecutive seeds.
inline Graph random_connected(int n, double p, std::uint64_t& seed) {
  for (;;) {
    auto g = kst::random_graph(n, p, seed++);
    if (kst::is_connected(g))
      return g;
  }
}

/// NC and σ straight from their definitions.
struct PairMinima {
  bool complete = true;
  int nc = 0;
  int sigma = 0;
};

inline PairMinima brute_pair_minima(const Graph& g) {
  PairMinima out;
  for (Vertex a = 0; a < g.order(); ++a)
    for (Vertex b = a + 1; b < g.order(); ++b) {
      if (g.adjacent(a, b))
        continue;
      std::set<Vertex> un;
      for (Vertex x = 0; x < g.order(); ++x)
        if (g.adjacent(a, x) || g.adjacent(b, x))
          un.insert(x);
      const int nc = static_cast<int>(un.size());
      const int sigma = g.degree(a) + g.degree(b);
      if (out.complete) {
        out = {false, nc, sigma};
      } else {
        out.nc = std::min(out.nc, nc);
        out.sigma = std::min(out.sigma, sigma);
      }
    }
  return out;
}

} // namespace fixtures
