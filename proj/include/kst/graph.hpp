#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kst/errors.hpp"

namespace kst {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free set of vertex ids.
class VertexSet {
public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> ids) : members_(ids) { normalize(); }
  explicit VertexSet(std::vector<Vertex> ids) : members_(std::move(ids)) { normalize(); }

  static VertexSet range(Vertex first, Vertex last) {
    std::vector<Vertex> ids(static_cast<std::size_t>(std::max(0, last - first)));
    std::iota(ids.begin(), ids.end(), first);
    return VertexSet(std::move(ids));
  }

  bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  Vertex front() const { return members_.front(); }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  std::span<const Vertex> span() const { return members_; }
  const std::vector<Vertex>& ids() const { return members_; }

  void insert(Vertex v) {
    auto it = std::lower_bound(members_.begin(), members_.end(), v);
    if (it == members_.end() || *it != v)
      members_.insert(it, v);
  }

  void erase(Vertex v) {
    auto it = std::lower_bound(members_.begin(), members_.end(), v);
    if (it != members_.end() && *it == v)
      members_.erase(it);
  }

  friend VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.members_));
    return out;
  }

  friend VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.members_));
    return out;
  }

  friend VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.members_));
    return out;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  std::vector<Vertex> members_;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Neighbor lists are kept sorted; an adjacency bit matrix answers
/// `adjacent()` in O(1) and lets neighborhood unions be counted word-wise.
class Graph {
public:
  Graph() = default;

  /// Throws input_error on loops, duplicate edges or out-of-range endpoints.
  Graph(int n, std::span<const Edge> edges) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64) {
    if (n < 0)
      throw input_error("negative vertex count");
    adj_.assign(static_cast<std::size_t>(n), {});
    bits_.assign(static_cast<std::size_t>(n) * words_, 0);
    for (auto [a, b] : edges) {
      if (a < 0 || b < 0 || a >= n || b >= n)
        throw input_error("edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
      if (a == b)
        throw input_error("self-loop at vertex " + std::to_string(a));
      if (adjacent(a, b))
        throw input_error("duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
      set_bit(a, b);
      set_bit(b, a);
      adj_[a].push_back(b);
      adj_[b].push_back(a);
      ++m_;
    }
    for (auto& row : adj_)
      std::sort(row.begin(), row.end());
  }

  Graph(int n, std::initializer_list<Edge> edges) : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}
  Graph(int n, const std::vector<Edge>& edges) : Graph(n, std::span<const Edge>(edges)) {}

  int order() const { return n_; }
  std::size_t edge_count() const { return m_; }

  bool adjacent(Vertex a, Vertex b) const {
    return (bits_[row_offset(a) + static_cast<std::size_t>(b) / 64] >> (b % 64)) & 1u;
  }

  std::span<const Vertex> neighbors(Vertex v) const {
    check_vertex(v);
    return adj_[v];
  }

  int degree(Vertex v) const {
    check_vertex(v);
    return static_cast<int>(adj_[v].size());
  }

  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_)
      throw input_error("vertex " + std::to_string(v) + " out of range 0.." + std::to_string(n_ - 1));
  }

  /// |N(a) ∪ N(b)| via the bit matrix.
  int union_size(Vertex a, Vertex b) const {
    int count = 0;
    const auto* ra = &bits_[row_offset(a)];
    const auto* rb = &bits_[row_offset(b)];
    for (std::size_t w = 0; w < words_; ++w)
      count += std::popcount(ra[w] | rb[w]);
    return count;
  }

  /// Edges with a < b, sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex a = 0; a < n_; ++a)
      for (Vertex b : adj_[a])
        if (a < b)
          out.emplace_back(a, b);
    return out;
  }

private:
  std::size_t row_offset(Vertex v) const { return static_cast<std::size_t>(v) * words_; }
  void set_bit(Vertex a, Vertex b) { bits_[row_offset(a) + static_cast<std::size_t>(b) / 64] |= std::uint64_t{1} << (b % 64); }

  int n_ = 0;
  std::size_t m_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> bits_;
};

inline int degree(const Graph& g, Vertex v) { return g.degree(v); }

inline int min_degree(const Graph& g) {
  int best = std::numeric_limits<int>::max();
  for (Vertex v = 0; v < g.order(); ++v)
    best = std::min(best, g.degree(v));
  return g.order() == 0 ? 0 : best;
}

inline VertexSet all_vertices(const Graph& g) { return VertexSet::range(0, g.order()); }

/// N(u) ∪ N(v). May contain u or v when they are adjacent.
inline VertexSet neighborhood_union(const Graph& g, Vertex u, Vertex v) {
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v)
    throw input_error("neighborhood_union needs two distinct vertices");
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

inline VertexSet closed_neighborhood(const Graph& g, Vertex v) {
  auto nb = g.neighbors(v);
  VertexSet out(std::vector<Vertex>(nb.begin(), nb.end()));
  out.insert(v);
  return out;
}

inline VertexSet neighbors_in(const Graph& g, Vertex v, const VertexSet& within) {
  std::vector<Vertex> out;
  for (Vertex w : g.neighbors(v))
    if (within.contains(w))
      out.push_back(w);
  return VertexSet(std::move(out));
}

inline int degree_in(const Graph& g, Vertex v, const VertexSet& within) {
  int d = 0;
  for (Vertex w : g.neighbors(v))
    d += within.contains(w) ? 1 : 0;
  return d;
}

/// Minimum over nonadjacent pairs; `complete` when no such pair exists.
struct PairMinimum {
  bool complete = true;
  int value = 0;

  friend bool operator==(const PairMinimum&, const PairMinimum&) = default;
};

namespace detail {
template <class F>
PairMinimum min_over_nonadjacent(const Graph& g, F&& measure) {
  PairMinimum out;
  for (Vertex a = 0; a < g.order(); ++a)
    for (Vertex b = a + 1; b < g.order(); ++b) {
      if (g.adjacent(a, b))
        continue;
      int value = measure(a, b);
      if (out.complete || value < out.value)
        out = {false, value};
    }
  return out;
}
} // namespace detail

/// NC(G): min |N(u) ∪ N(v)| over nonadjacent u ≠ v.
inline PairMinimum nc_value(const Graph& g) {
  return detail::min_over_nonadjacent(g, [&](Vertex a, Vertex b) { return g.union_size(a, b); });
}

/// σ(G): min d(u) + d(v) over nonadjacent u ≠ v.
inline PairMinimum sigma_value(const Graph& g) {
  return detail::min_over_nonadjacent(g, [&](Vertex a, Vertex b) { return g.degree(a) + g.degree(b); });
}

/// Connected components of G[within], each sorted, ordered by smallest member.
inline std::vector<VertexSet> components(const Graph& g, const VertexSet& within) {
  std::vector<char> inside(static_cast<std::size_t>(g.order()), 0), seen(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v : within) {
    g.check_vertex(v);
    inside[v] = 1;
  }
  std::vector<VertexSet> out;
  std::vector<Vertex> stack;
  for (Vertex root : within) {
    if (seen[root])
      continue;
    std::vector<Vertex> part;
    seen[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      part.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (inside[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    out.emplace_back(std::move(part));
  }
  return out;
}

inline bool is_connected(const Graph& g, const VertexSet& within) { return components(g, within).size() <= 1; }
inline bool is_connected(const Graph& g) { return is_connected(g, all_vertices(g)); }

inline bool is_clique(const Graph& g, const VertexSet& s) {
  for (auto a = s.begin(); a != s.end(); ++a)
    for (auto b = std::next(a); b != s.end(); ++b)
      if (!g.adjacent(*a, *b))
        return false;
  return true;
}

/// Minimum degree of G[s]; 0 for |s| ≤ 1.
inline int min_degree_in(const Graph& g, const VertexSet& s) {
  if (s.size() <= 1)
    return 0;
  int best = std::numeric_limits<int>::max();
  for (Vertex v : s)
    best = std::min(best, degree_in(g, v, s));
  return best;
}

/// G[s] relabelled to 0..|s|-1, keeping the map back to host ids.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_host;
};

inline InducedSubgraph induced(const Graph& g, const VertexSet& s) {
  std::vector<int> local(static_cast<std::size_t>(g.order()), -1);
  int next = 0;
  for (Vertex v : s) {
    g.check_vertex(v);
    local[v] = next++;
  }
  std::vector<Edge> edges;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (v < w && local[w] >= 0)
        edges.emplace_back(local[v], local[w]);
  return {Graph(next, edges), s.ids()};
}

} // namespace kst
