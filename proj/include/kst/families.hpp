#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kst/constructive.hpp"
#include "kst/graph.hpp"
#include "kst/thresholds.hpp"

namespace kst {

namespace detail {

// Dense symmetric edge table for assembling fixtures.
class EdgeTable {
public:
  explicit EdgeTable(int n) : n_(n), cell_(static_cast<std::size_t>(n) * n, 0) {}

  void add(Vertex a, Vertex b) {
    if (a == b)
      return;
    cell_[idx(a, b)] = cell_[idx(b, a)] = 1;
  }
  void remove(Vertex a, Vertex b) { cell_[idx(a, b)] = cell_[idx(b, a)] = 0; }
  void clique(Vertex first, Vertex last) {
    for (Vertex a = first; a < last; ++a)
      for (Vertex b = a + 1; b < last; ++b)
        add(a, b);
  }
  void join(Vertex a_first, Vertex a_last, Vertex b_first, Vertex b_last) {
    for (Vertex a = a_first; a < a_last; ++a)
      for (Vertex b = b_first; b < b_last; ++b)
        add(a, b);
  }
  Graph build() const {
    std::vector<Edge> edges;
    for (Vertex a = 0; a < n_; ++a)
      for (Vertex b = a + 1; b < n_; ++b)
        if (cell_[idx(a, b)])
          edges.emplace_back(a, b);
    return Graph(n_, edges);
  }

private:
  std::size_t idx(Vertex a, Vertex b) const { return static_cast<std::size_t>(a) * n_ + b; }
  int n_;
  std::vector<char> cell_;
};

} // namespace detail

/// Parameters of the extremal graph H: cliques A = K_{2k−1}, B = K_{⌈(n+1)/2⌉−k}
/// and C = K_{⌊(n+1)/2⌋−k}, joined by uv and u_i w_i.
struct ExtremalParams {
  int k = 2;
  int n = 0;

  int size_a() const { return 2 * k - 1; }
  int size_b() const { return (n + 2) / 2 - k; }
  int size_c() const { return (n + 1) / 2 - k; }

  /// All three parts are nonempty.
  bool buildable() const { return k >= 2 && n > 0 && size_b() >= 1 && size_c() >= 1; }
  /// B and C are large enough that the minimum degree is attained on A.
  bool in_regime() const { return buildable() && (n + 1) / 2 >= 3 * k; }
};

/// H(k, n): A occupies 0..2k−2 with u = 0; B follows, starting with v;
/// C comes last. u_i = i for i = 1..2k−2, with w_i distinct and smallest
/// first when |C| ≥ 2k−2, round-robin over C otherwise.
inline Graph build_h(const ExtremalParams& p) {
  if (p.k < 2)
    throw input_error("build_h: k must be at least 2");
  if (!p.buildable())
    throw input_error("build_h: n = " + std::to_string(p.n) + " leaves a clique of H empty for k = " + std::to_string(p.k));
  const int a = p.size_a(), b = p.size_b(), c = p.size_c();
  const Vertex v = a, c0 = a + b;
  detail::EdgeTable t(p.n);
  t.clique(0, a);
  t.clique(a, a + b);
  t.clique(c0, p.n);
  t.add(0, v);
  for (int i = 1; i <= 2 * p.k - 2; ++i)
    t.add(i, c0 + (i - 1) % c);
  return t.build();
}

/// A graph with n ≥ n1(k) satisfying the main theorem's hypotheses whose
/// construction follows the case path `label` (one of case_labels()).
///
/// Common layout: u = 0 has degree 2k with N(u) = 1..2k a clique, and
/// W = V \ N[u] starts at b = 2k+1. Vertex 1 plays u1 and vertex 2 plays u2.
///   dense:             K_n minus a perfect matching.
///   W-connected:       W is a clique or splits as C1, Z, C2 with Z a clique
///                      separator joined to both cliques C1 and C2.
///     Case1:           W a clique, u1 adjacent to all of W.
///     Subcase2.1:      u1 adjacent to one vertex x1 of W only.
///     Subcase2.2:      u1 adjacent to k vertices of W starting at x1 = b.
///     Extend-Case1:    W a clique.
///     Extend-Case2.*:  Z = S' (size k−1 resp. 2k−2) and x1 ∈ C1. In
///                      Extend-Case2.2 the first vertex of Z misses the last
///                      vertex of C2.
///   W-disconnected:    W = C1 ∪ C2, two cliques of near-equal size.
///     overlap/Case1:   u1 sees k vertices of C1 and 2 of C2.
///     overlap/Case2:   u1 sees one vertex of each (needs k ≥ 3).
///     disjoint/Case1:  u1 sees k of C1, u2 sees k of C2.
///     disjoint/Case2:  u1 and u2 see one vertex each.
///     disjoint/Case3:  u1 sees k of C1, u2 sees one of C2.
inline Graph case_family(const std::string& label, int k, int n) {
  const auto labels = case_labels();
  if (std::find(labels.begin(), labels.end(), label) == labels.end())
    throw input_error("case_family: unknown label `" + label + "`");
  if (k < 2)
    throw input_error("case_family: k must be at least 2");
  const auto th = thresholds(k);
  if (n < th.n1)
    throw input_error("case_family: n = " + std::to_string(n) + " is below n1(" + std::to_string(k) + ") = " + std::to_string(th.n1));
  if (label == "W-disconnected/overlap/Case2" && k < 3)
    throw input_error("case_family: " + label + " needs k >= 3");

  detail::EdgeTable t(n);
  const int delta = 2 * k;
  const Vertex b = delta + 1;
  if (label == "dense") {
    t.clique(0, n);
    for (Vertex x = 0; x + 1 < n; x += 2)
      t.remove(x, x + 1);
  } else {
    t.clique(0, delta + 1);
    auto starts_with = [&](const std::string& prefix) { return label.rfind(prefix, 0) == 0; };

    if (label == "W-connected/Case1") {
      t.clique(b, n);
      t.join(1, 2, b, n);
    } else if (starts_with("W-connected/Case2")) {
      const bool sub21 = starts_with("W-connected/Case2/Subcase2.1");
      const bool split = label.find("Extend-Case2") != std::string::npos;
      if (!split) {
        t.clique(b, n);
        t.join(1, 2, b, b + (sub21 ? 1 : k));
      } else if (sub21) {
        const Vertex z0 = b, z1 = b + k - 1; // Z = [z0, z1), x1 = z1
        const Vertex c2 = z1 + (n - z1 + 1) / 2;
        t.clique(z0, z1);
        t.clique(z1, c2);
        t.clique(c2, n);
        t.join(z0, z1, z1, n);
        t.add(1, z1);
        if (label.ends_with("Extend-Case2.2"))
          t.remove(z0, n - 1);
      } else {
        const Vertex z0 = b + 1, z1 = b + 2 * k - 1; // x1 = b, Z = [z0, z1)
        const Vertex c2 = z1 + (n - z1 - 1) / 2;
        t.clique(b, z1);
        t.clique(z1, c2);
        t.join(b, b + 1, z1, c2);
        t.clique(c2, n);
        t.join(z0, z1, z1, n);
        t.join(1, 2, b, b + k);
        if (label.ends_with("Extend-Case2.2"))
          t.remove(z0, n - 1);
      }
    } else {
      const int w = n - b;
      const Vertex c1 = b, c2 = b + (w + 1) / 2;
      t.clique(c1, c2);
      t.clique(c2, n);
      auto link = [&](Vertex from, Vertex first, int count) { t.join(from, from + 1, first, first + count); };
      if (label == "W-disconnected/overlap/Case1") {
        link(1, c1, k);
        link(1, c2, 2);
      } else if (label == "W-disconnected/overlap/Case2") {
        link(1, c1, 1);
        link(1, c2, 1);
      } else if (label == "W-disconnected/disjoint/Case1") {
        link(1, c1, k);
        link(2, c2, k);
      } else if (label == "W-disconnected/disjoint/Case2") {
        link(1, c1, 1);
        link(2, c2, 1);
      } else {
        link(1, c1, k);
        link(2, c2, 1);
      }
    }
  }
  auto g = t.build();
  const auto got = construct_2k_st(g, k).trace.label();
  if (got != label)
    throw contract_error("case_family: fixture for `" + label + "` routed to `" + got + "`");
  return g;
}

/// G(n, p) sample: each pair (a, b), a < b in lexicographic order, is an
/// edge when the next 53-bit uniform draw of mt19937_64(seed) is below p.
inline Graph random_graph(int n, double p, std::uint64_t seed) {
  if (n < 0)
    throw input_error("random_graph: n must be nonnegative");
  if (!(p >= 0.0 && p <= 1.0))
    throw input_error("random_graph: edge probability must lie in [0,1]");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) {
      const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (r < p)
        edges.emplace_back(a, b);
    }
  return Graph(n, edges);
}

} // namespace kst
