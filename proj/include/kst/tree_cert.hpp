#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kst/graph.hpp"

namespace kst {

/// An edge set claimed to be a tree on `vertices`. Nothing about it is
/// trusted until classify() has looked at it against a host graph.
struct TreeCertificate {
  VertexSet vertices;
  std::vector<Edge> edges; // each stored as (min, max)
  int k = 2;

  friend bool operator==(const TreeCertificate&, const TreeCertificate&) = default;
};

inline Edge normalized(Edge e) { return e.first < e.second ? e : Edge{e.second, e.first}; }

inline TreeCertificate make_certificate(VertexSet vertices, std::vector<Edge> edges, int k) {
  for (auto& e : edges)
    e = normalized(e);
  return {std::move(vertices), std::move(edges), k};
}

/// Star with `center` joined to every member of `leaves`.
inline TreeCertificate star_certificate(Vertex center, const VertexSet& leaves, int k) {
  std::vector<Edge> edges;
  for (Vertex v : leaves)
    edges.emplace_back(center, v);
  auto vs = leaves;
  vs.insert(center);
  return make_certificate(std::move(vs), std::move(edges), k);
}

inline std::map<Vertex, int> tree_degrees(const TreeCertificate& t) {
  std::map<Vertex, int> deg;
  for (Vertex v : t.vertices)
    deg[v] = 0;
  for (auto [a, b] : t.edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

enum class TreeClass { full_2k_st, semi, quasi, invalid };

/// Classification of a certificate.
///
/// `semi` with no witnesses is a clean subtree: no degree in [2,k] but not
/// spanning its scope. `semi` with witnesses has every bad vertex at degree
/// exactly k and does not span its scope; a spanning tree with bad vertices
/// is reported as `quasi`. `bad_all_at_k` records the semi shape regardless.
struct TreeKind {
  TreeClass kind = TreeClass::invalid;
  std::vector<Vertex> witnesses;
  bool spanning = false;
  bool bad_all_at_k = false;
  std::string reason;

  std::size_t count() const { return witnesses.size(); }
  bool is_full() const { return kind == TreeClass::full_2k_st; }
  bool is_valid_tree() const { return kind != TreeClass::invalid; }
};

inline std::string to_string(TreeClass c) {
  switch (c) {
  case TreeClass::full_2k_st:
    return "full_2k_ST";
  case TreeClass::semi:
    return "semi";
  case TreeClass::quasi:
    return "quasi";
  case TreeClass::invalid:
    return "invalid";
  }
  return "?";
}

inline std::string describe(const TreeKind& kind) {
  std::ostringstream out;
  out << to_string(kind.kind);
  if (kind.kind == TreeClass::invalid) {
    out << " (" << kind.reason << ")";
  } else if (kind.kind != TreeClass::full_2k_st) {
    out << "(" << kind.count() << ", {";
    for (std::size_t i = 0; i < kind.witnesses.size(); ++i)
      out << (i ? "," : "") << kind.witnesses[i];
    out << "})";
  }
  return out.str();
}

/// Validates `t` as a tree of `g` and classifies it by its degree multiset.
/// `scope` is the vertex set the tree should span; all of V(g) by default.
inline TreeKind classify(const Graph& g, const TreeCertificate& t, int k, std::optional<VertexSet> scope = std::nullopt) {
  if (k < 2)
    throw input_error("class bound k must be at least 2");
  auto invalid = [](std::string why) {
    TreeKind out;
    out.reason = std::move(why);
    return out;
  };
  if (t.vertices.empty())
    return invalid("empty vertex set");
  for (Vertex v : t.vertices)
    if (v < 0 || v >= g.order())
      return invalid("vertex " + std::to_string(v) + " not in host graph");

  std::vector<int> local(static_cast<std::size_t>(g.order()), -1);
  int idx = 0;
  for (Vertex v : t.vertices)
    local[v] = idx++;
  std::vector<int> parent(t.vertices.size());
  for (std::size_t i = 0; i < parent.size(); ++i)
    parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };

  std::vector<Edge> sorted;
  for (auto e : t.edges) {
    auto [a, b] = normalized(e);
    auto label = std::to_string(a) + "-" + std::to_string(b);
    if (a == b)
      return invalid("self-loop " + label);
    if (a < 0 || b >= g.order() || local[a] < 0 || local[b] < 0)
      return invalid("edge " + label + " has an endpoint outside the vertex set");
    if (!g.adjacent(a, b))
      return invalid("edge " + label + " not in host graph");
    sorted.emplace_back(a, b);
  }
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return invalid("duplicate edge");
  if (t.edges.size() + 1 != t.vertices.size())
    return invalid("edge count " + std::to_string(t.edges.size()) + " is not |V|-1 = " + std::to_string(t.vertices.size() - 1));
  for (auto [a, b] : sorted) {
    int ra = find(local[a]), rb = find(local[b]);
    if (ra == rb)
      return invalid("cycle through edge " + std::to_string(a) + "-" + std::to_string(b));
    parent[ra] = rb;
  }

  TreeKind out;
  out.spanning = scope ? t.vertices == *scope : static_cast<int>(t.vertices.size()) == g.order();
  std::vector<Vertex> bad;
  bool all_at_k = true;
  for (auto [v, d] : tree_degrees(t))
    if (d >= 2 && d <= k) {
      bad.push_back(v);
      all_at_k = all_at_k && d == k;
    }
  out.bad_all_at_k = all_at_k;
  out.witnesses = bad;
  if (bad.empty())
    out.kind = out.spanning ? TreeClass::full_2k_st : TreeClass::semi;
  else
    out.kind = (all_at_k && !out.spanning) ? TreeClass::semi : TreeClass::quasi;
  return out;
}

/// A part handed to glue(): a vertex set S_j and a [2,k]-ST of G[S_j].
struct GluePart {
  VertexSet set;
  TreeCertificate tree;
};

/// Extends an i-semi tree by hanging a [2,k]-ST on each of its degree-k
/// vertices. Every degree-k vertex v_j of `t` must be covered by exactly one
/// part with S_j ∩ V(t) = {v_j}; parts are pairwise disjoint.
inline TreeCertificate glue(const Graph& g, const TreeCertificate& t, const std::vector<GluePart>& parts, int k) {
  const auto kt = classify(g, t, k, t.vertices);
  if (!kt.is_valid_tree())
    throw contract_error("glue: base is not a tree: " + kt.reason);
  if (!kt.bad_all_at_k)
    throw contract_error("glue: base has a vertex with degree in [2,k-1]");
  const auto deg = tree_degrees(t);

  TreeCertificate out = t;
  VertexSet covered;
  VertexSet used;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    const auto& part = parts[j];
    const auto tag = "glue: part " + std::to_string(j) + ": ";
    auto meet = set_intersection(part.set, t.vertices);
    if (meet.size() != 1)
      throw contract_error(tag + "S_j must meet the base tree in exactly one vertex, got " + std::to_string(meet.size()));
    const Vertex v = meet.front();
    if (deg.at(v) != k)
      throw contract_error(tag + "attachment vertex " + std::to_string(v) + " has degree " + std::to_string(deg.at(v)) + ", not k");
    if (part.set.size() < 2)
      throw contract_error(tag + "S_j needs at least two vertices");
    if (!(part.tree.vertices == part.set))
      throw contract_error(tag + "part tree does not span S_j");
    if (!set_intersection(used, part.set).empty())
      throw contract_error(tag + "S_j overlaps an earlier part");
    const auto pk = classify(g, part.tree, k, part.set);
    if (!pk.is_full())
      throw contract_error(tag + "part tree is not a [2,k]-ST of G[S_j]: " + describe(pk));
    used = set_union(used, part.set);
    covered.insert(v);
    out.vertices = set_union(out.vertices, part.set);
    out.edges.insert(out.edges.end(), part.tree.edges.begin(), part.tree.edges.end());
  }
  if (!(covered == VertexSet(kt.witnesses)))
    throw contract_error("glue: parts must cover exactly the degree-k vertices of the base tree");
  out.k = k;
  return out;
}

/// Lexicographically smallest (x, y) with x ∈ N(z) ∩ X, y ∈ X, xy ∈ E, zy ∉ E:
/// the induced path z–x–y. Needs G[X] connected, z ∉ X, 1 ≤ |N_X(z)| < |X|.
inline std::pair<Vertex, Vertex> induced_path(const Graph& g, const VertexSet& x_set, Vertex z) {
  g.check_vertex(z);
  if (x_set.contains(z))
    throw contract_error("induced_path: z lies in X");
  const auto nz = neighbors_in(g, z, x_set);
  if (nz.empty())
    throw contract_error("induced_path: z has no neighbor in X");
  if (nz.size() >= x_set.size())
    throw contract_error("induced_path: z is adjacent to all of X");
  if (!is_connected(g, x_set))
    throw contract_error("induced_path: G[X] is not connected");
  for (Vertex x : nz)
    for (Vertex y : g.neighbors(x))
      if (x_set.contains(y) && !g.adjacent(z, y))
        return {x, y};
  throw contract_error("induced_path: no induced path found");
}

// ---- text form --------------------------------------------------------------

inline void write_certificate(std::ostream& out, const TreeCertificate& t) {
  out << "cert k=" << t.k << '\n';
  out << "vertices:";
  for (Vertex v : t.vertices)
    out << ' ' << v;
  out << '\n';
  for (auto [a, b] : t.edges)
    out << "edge " << a << ' ' << b << '\n';
}

inline std::string to_text(const TreeCertificate& t) {
  std::ostringstream out;
  write_certificate(out, t);
  return out.str();
}

inline TreeCertificate read_certificate(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto int_of = [&](const std::string& tok) {
    if (tok.empty() || tok.size() > 9 || tok.find_first_not_of("0123456789") != std::string::npos)
      throw parse_error(lineno, "expected a vertex id, got `" + tok + "`");
    return std::stoi(tok);
  };

  TreeCertificate t;
  bool have_header = false, have_vertices = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos)
      continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (!have_header) {
      std::string kk;
      ls >> kk;
      if (head != "cert" || kk.rfind("k=", 0) != 0)
        throw parse_error(lineno, "expected `cert k=<k>`");
      t.k = int_of(kk.substr(2));
      have_header = true;
    } else if (!have_vertices) {
      if (head != "vertices:")
        throw parse_error(lineno, "expected `vertices:` line");
      std::vector<Vertex> ids;
      for (std::string tok; ls >> tok;)
        ids.push_back(int_of(tok));
      t.vertices = VertexSet(std::move(ids));
      have_vertices = true;
    } else {
      std::string a, b, extra;
      ls >> a >> b;
      if (head != "edge" || b.empty() || (ls >> extra))
        throw parse_error(lineno, "expected `edge u v`");
      t.edges.push_back(normalized({int_of(a), int_of(b)}));
    }
  }
  if (!have_vertices)
    throw parse_error(lineno, "certificate is missing its header or vertex line");
  return t;
}

inline TreeCertificate certificate_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_certificate(in);
}

} // namespace kst
