#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kst/graph.hpp"
#include "kst/thresholds.hpp"
#include "kst/tree_cert.hpp"

namespace kst {

struct SearchBudget {
  std::uint64_t node_limit = 50'000'000;
  std::optional<double> time_limit; // wall seconds
};

enum class SolveStatus { found, none, budget_exhausted };

inline std::string to_string(SolveStatus s) {
  switch (s) {
  case SolveStatus::found:
    return "found";
  case SolveStatus::none:
    return "none";
  case SolveStatus::budget_exhausted:
    return "budget_exhausted";
  }
  return "?";
}

struct SolveStats {
  std::uint64_t nodes = 0;
  int max_depth = 0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::none;
  std::optional<TreeCertificate> certificate;
  SolveStats stats;
  std::string diagnostic;
};

namespace detail {

// Trivial orders and disconnected inputs, shared by both solvers.
inline std::optional<SolveOutcome> trivial_outcome(const Graph& g, int k) {
  if (k < 2)
    throw input_error("class bound k must be at least 2");
  if (g.order() == 0)
    return SolveOutcome{SolveStatus::none, std::nullopt, {}, "empty graph has no spanning tree"};
  if (!is_connected(g))
    return SolveOutcome{SolveStatus::none, std::nullopt, {}, "graph is disconnected"};
  if (g.order() == 1)
    return SolveOutcome{SolveStatus::found, make_certificate({0}, {}, k), {}, ""};
  if (g.order() == 2)
    return SolveOutcome{SolveStatus::found, make_certificate({0, 1}, {{0, 1}}, k), {}, ""};
  return std::nullopt;
}

inline SolveOutcome checked_found(const Graph& g, int k, TreeCertificate cert, SolveStats stats) {
  const auto kind = classify(g, cert, k);
  if (!kind.is_full())
    throw contract_error("solver produced a certificate that is not a [2,k]-ST: " + describe(kind));
  return {SolveStatus::found, std::move(cert), stats, ""};
}

// Branch and bound over leaf/internal roles.
//
// In a [2,k]-ST on n ≥ 3 vertices every vertex is a leaf or has degree ≥ k+1,
// the internal vertices induce a connected dominating set I, and
// |L| ≥ (k−1)|I| + 2. Once every role is fixed, the spanning trees of G[I]
// are enumerated and each is completed by assigning leaves so that every
// internal vertex reaches k+1 (a bipartite matching on the deficits).
class RoleSearch {
public:
  RoleSearch(const Graph& g, int k, const SearchBudget& budget)
      : g_(g), k_(k), n_(g.order()), budget_(budget), role_(static_cast<std::size_t>(n_), undecided),
        start_(std::chrono::steady_clock::now()) {}

  SolveOutcome run() {
    SolveOutcome out;
    bool found = false;
    try {
      found = search(0);
    } catch (const exhausted&) {
      out.status = SolveStatus::budget_exhausted;
      out.stats = stats_;
      out.diagnostic = "search budget exhausted";
      return out;
    }
    if (!found) {
      out.status = SolveStatus::none;
      out.stats = stats_;
      out.diagnostic = "exhaustive search found no [2,k]-ST";
      return out;
    }
    return checked_found(g_, k_, std::move(*result_), stats_);
  }

private:
  enum Role : char { undecided, leaf, internal };
  struct exhausted {};

  void tick(int depth) {
    ++stats_.nodes;
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (stats_.nodes > budget_.node_limit)
      throw exhausted{};
    if (budget_.time_limit && (stats_.nodes & 1023) == 0) {
      std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
      if (spent.count() > *budget_.time_limit)
        throw exhausted{};
    }
  }

  // Applies forced roles until a fixpoint; false on contradiction.
  bool propagate() {
    for (bool changed = true; changed;) {
      changed = false;
      for (Vertex v = 0; v < n_; ++v)
        if (role_[v] == undecided && g_.degree(v) <= k_) {
          role_[v] = leaf;
          changed = true;
        }
      for (Vertex v = 0; v < n_; ++v) {
        if (role_[v] != leaf)
          continue;
        int inner = 0, open = 0;
        Vertex last_open = -1;
        for (Vertex w : g_.neighbors(v)) {
          if (role_[w] == internal)
            ++inner;
          else if (role_[w] == undecided) {
            ++open;
            last_open = w;
          }
        }
        if (inner == 0 && open == 0)
          return false;
        if (inner == 0 && open == 1) {
          role_[last_open] = internal;
          changed = true;
        }
      }
      int n_int = 0, n_rest = 0;
      for (Vertex v = 0; v < n_; ++v)
        (role_[v] == internal ? n_int : n_rest) += 1;
      if (n_rest < (k_ - 1) * n_int + 2)
        return false;

      // Every internal vertex must share one component of G[I ∪ U];
      // undecided vertices outside that component can only be leaves.
      std::vector<int> comp(static_cast<std::size_t>(n_), -1);
      int label = 0, home = -1;
      for (Vertex s = 0; s < n_; ++s) {
        if (role_[s] == leaf || comp[s] >= 0)
          continue;
        std::vector<Vertex> stack{s};
        comp[s] = label;
        bool has_internal = false;
        while (!stack.empty()) {
          Vertex v = stack.back();
          stack.pop_back();
          has_internal = has_internal || role_[v] == internal;
          for (Vertex w : g_.neighbors(v))
            if (role_[w] != leaf && comp[w] < 0) {
              comp[w] = label;
              stack.push_back(w);
            }
        }
        if (has_internal) {
          if (home >= 0)
            return false;
          home = label;
        }
        ++label;
      }
      if (home >= 0)
        for (Vertex v = 0; v < n_; ++v)
          if (role_[v] == undecided && comp[v] != home) {
            role_[v] = leaf;
            changed = true;
          }
    }
    return true;
  }

  // Fail-first: undecided vertex adjacent to I with the fewest open
  // neighbors; without any internal vertex yet, the highest degree.
  Vertex pick() const {
    Vertex best = -1;
    long best_key = 0;
    bool have_internal = std::find(role_.begin(), role_.end(), internal) != role_.end();
    for (Vertex v = 0; v < n_; ++v) {
      if (role_[v] != undecided)
        continue;
      bool touches = false;
      int open = 0;
      for (Vertex w : g_.neighbors(v)) {
        touches = touches || role_[w] == internal;
        open += role_[w] == undecided ? 1 : 0;
      }
      long key = have_internal ? (touches ? 0L : 1L << 20) + open : -static_cast<long>(g_.degree(v));
      if (best < 0 || key < best_key) {
        best = v;
        best_key = key;
      }
    }
    return best;
  }

  bool search(int depth) {
    tick(depth);
    const auto saved = role_;
    if (!propagate()) {
      role_ = saved;
      return false;
    }
    const Vertex v = pick();
    if (v < 0) {
      if (complete_tree(depth))
        return true;
      role_ = saved;
      return false;
    }
    for (Role r : {leaf, internal}) {
      const auto before = role_;
      role_[v] = r;
      if (search(depth + 1))
        return true;
      role_ = before;
    }
    role_ = saved;
    return false;
  }

  // Roles fixed: look for a spanning tree of G[I] whose deficits the leaves can fill.
  bool complete_tree(int depth) {
    inner_.clear();
    std::vector<int> local(static_cast<std::size_t>(n_), -1);
    for (Vertex v = 0; v < n_; ++v)
      if (role_[v] == internal) {
        local[v] = static_cast<int>(inner_.size());
        inner_.push_back(v);
      }
    if (inner_.empty())
      return false;
    inner_edges_.clear();
    for (Vertex a : inner_)
      for (Vertex b : g_.neighbors(a))
        if (a < b && role_[b] == internal)
          inner_edges_.emplace_back(local[a], local[b]);
    leaf_cap_.assign(inner_.size(), 0);
    for (std::size_t i = 0; i < inner_.size(); ++i)
      for (Vertex w : g_.neighbors(inner_[i]))
        leaf_cap_[i] += role_[w] == leaf ? 1 : 0;
    for (int cap : leaf_cap_)
      if (cap + static_cast<int>(inner_.size()) - 1 < k_ + 1)
        return false;
    tree_deg_.assign(inner_.size(), 0);
    open_deg_.assign(inner_.size(), 0);
    for (auto [a, b] : inner_edges_) {
      ++open_deg_[a];
      ++open_deg_[b];
    }
    chosen_.clear();
    uf_.assign(inner_.size(), 0);
    for (std::size_t i = 0; i < uf_.size(); ++i)
      uf_[i] = static_cast<int>(i);
    return enumerate_inner(0, depth + 1);
  }

  int find(int x) const {
    while (uf_[x] != x)
      x = uf_[x];
    return x;
  }

  bool enumerate_inner(std::size_t next, int depth) {
    tick(depth);
    for (std::size_t i = 0; i < inner_.size(); ++i)
      if (tree_deg_[i] + open_deg_[i] + leaf_cap_[i] < k_ + 1)
        return false;
    if (chosen_.size() + 1 == inner_.size())
      return assign_leaves();
    if (next >= inner_edges_.size() || inner_edges_.size() - next < inner_.size() - 1 - chosen_.size())
      return false;
    auto [a, b] = inner_edges_[next];
    --open_deg_[a];
    --open_deg_[b];
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      uf_[ra] = rb;
      ++tree_deg_[a];
      ++tree_deg_[b];
      chosen_.push_back(next);
      if (enumerate_inner(next + 1, depth + 1))
        return true;
      chosen_.pop_back();
      --tree_deg_[a];
      --tree_deg_[b];
      uf_[ra] = ra;
    }
    // Excluding the edge must leave G[I] spannable by chosen + remaining edges.
    bool ok = spannable(next + 1) && enumerate_inner(next + 1, depth + 1);
    ++open_deg_[a];
    ++open_deg_[b];
    return ok;
  }

  bool spannable(std::size_t from) const {
    std::vector<int> p(inner_.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = static_cast<int>(i);
    auto f = [&](int x) {
      while (p[x] != x)
        x = p[x] = p[p[x]];
      return x;
    };
    std::size_t parts = p.size();
    auto join = [&](int a, int b) {
      int ra = f(a), rb = f(b);
      if (ra != rb) {
        p[ra] = rb;
        --parts;
      }
    };
    for (auto idx : chosen_)
      join(inner_edges_[idx].first, inner_edges_[idx].second);
    for (std::size_t i = from; i < inner_edges_.size(); ++i)
      join(inner_edges_[i].first, inner_edges_[i].second);
    return parts == 1;
  }

  // Kuhn matching of deficit slots to leaves; unmatched leaves go to their
  // smallest internal neighbor.
  bool assign_leaves() {
    std::vector<int> slot_owner;
    for (std::size_t i = 0; i < inner_.size(); ++i)
      for (int d = tree_deg_[i]; d < k_ + 1; ++d)
        slot_owner.push_back(static_cast<int>(i));
    std::vector<Vertex> leaves;
    for (Vertex v = 0; v < n_; ++v)
      if (role_[v] == leaf)
        leaves.push_back(v);
    if (slot_owner.size() > leaves.size())
      return false;
    std::vector<int> leaf_of_slot(slot_owner.size(), -1), slot_of_leaf(leaves.size(), -1);
    std::vector<char> visited;
    std::function<bool(int)> augment = [&](int s) -> bool {
      const Vertex owner = inner_[slot_owner[s]];
      for (std::size_t l = 0; l < leaves.size(); ++l) {
        if (visited[l] || !g_.adjacent(owner, leaves[l]))
          continue;
        visited[l] = 1;
        if (slot_of_leaf[l] < 0 || augment(slot_of_leaf[l])) {
          slot_of_leaf[l] = s;
          leaf_of_slot[s] = static_cast<int>(l);
          return true;
        }
      }
      return false;
    };
    for (std::size_t s = 0; s < slot_owner.size(); ++s) {
      visited.assign(leaves.size(), 0);
      if (!augment(static_cast<int>(s)))
        return false;
    }
    std::vector<Edge> edges;
    for (auto idx : chosen_)
      edges.emplace_back(inner_[inner_edges_[idx].first], inner_[inner_edges_[idx].second]);
    for (std::size_t l = 0; l < leaves.size(); ++l) {
      Vertex parent = -1;
      if (slot_of_leaf[l] >= 0) {
        parent = inner_[slot_owner[slot_of_leaf[l]]];
      } else {
        for (Vertex w : g_.neighbors(leaves[l]))
          if (role_[w] == internal) {
            parent = w;
            break;
          }
      }
      if (parent < 0)
        return false;
      edges.emplace_back(parent, leaves[l]);
    }
    result_ = make_certificate(all_vertices(g_), std::move(edges), k_);
    return true;
  }

  const Graph& g_;
  int k_;
  int n_;
  SearchBudget budget_;
  std::vector<Role> role_;
  SolveStats stats_;
  std::chrono::steady_clock::time_point start_;
  std::optional<TreeCertificate> result_;

  std::vector<Vertex> inner_;
  std::vector<std::pair<int, int>> inner_edges_;
  std::vector<int> leaf_cap_, tree_deg_, open_deg_, uf_;
  std::vector<std::size_t> chosen_;
};

} // namespace detail

/// Exact decision with witness. Complete unless the budget runs out, which is
/// reported as budget_exhausted and never as none.
inline SolveOutcome solve_exact(const Graph& g, int k, const SearchBudget& budget = {}) {
  if (auto trivial = detail::trivial_outcome(g, k))
    return *trivial;
  return detail::RoleSearch(g, k, budget).run();
}

inline constexpr int default_naive_cap = 10;

/// Enumerates every spanning tree (edge inclusion/exclusion with contraction
/// bookkeeping) and classifies each one. Oracle for small graphs only.
inline SolveOutcome solve_naive(const Graph& g, int k, int cap = default_naive_cap) {
  if (g.order() > cap)
    throw input_error("solve_naive: order " + std::to_string(g.order()) + " exceeds cap " + std::to_string(cap));
  if (auto trivial = detail::trivial_outcome(g, k))
    return *trivial;

  const auto edges = g.edges();
  const int n = g.order();
  SolveStats stats;
  std::vector<Edge> chosen;
  std::optional<TreeCertificate> hit;

  auto root = [](std::vector<int>& p, int x) {
    while (p[x] != x)
      x = p[x];
    return x;
  };
  std::vector<int> uf(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    uf[i] = i;

  auto connected_with_rest = [&](std::size_t from) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      p[i] = i;
    int parts = n;
    auto join = [&](Edge e) {
      int a = root(p, e.first), b = root(p, e.second);
      if (a != b) {
        p[a] = b;
        --parts;
      }
    };
    for (auto e : chosen)
      join(e);
    for (std::size_t i = from; i < edges.size(); ++i)
      join(edges[i]);
    return parts == 1;
  };

  std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int depth) -> bool {
    ++stats.nodes;
    stats.max_depth = std::max(stats.max_depth, depth);
    if (static_cast<int>(chosen.size()) == n - 1) {
      auto cert = make_certificate(all_vertices(g), chosen, k);
      if (classify(g, cert, k).is_full()) {
        hit = std::move(cert);
        return true;
      }
      return false;
    }
    if (i >= edges.size())
      return false;
    const auto e = edges[i];
    int a = root(uf, e.first), b = root(uf, e.second);
    if (a != b) {
      uf[a] = b;
      chosen.push_back(e);
      bool done = rec(i + 1, depth + 1);
      chosen.pop_back();
      uf[a] = a;
      if (done)
        return true;
    }
    return connected_with_rest(i + 1) && rec(i + 1, depth + 1);
  };

  if (rec(0, 0))
    return detail::checked_found(g, k, std::move(*hit), stats);
  return {SolveStatus::none, std::nullopt, stats, "no spanning tree is a [2,k]-ST"};
}

namespace detail {

// Greedy growth from a maximum-degree root. Uncovered vertices next to an
// internal vertex hang off it; otherwise the leaf with the most uncovered
// neighbors is promoted, taking its uncovered neighbors plus, if needed,
// leaves stolen from internal vertices that can spare them.
inline std::optional<TreeCertificate> greedy_dense(const Graph& g, int k) {
  const int n = g.order();
  if (n == 0)
    return std::nullopt;
  std::vector<int> parent(static_cast<std::size_t>(n), -1), tdeg(static_cast<std::size_t>(n), 0);
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0), inner(static_cast<std::size_t>(n), 0);
  int covered = 0;

  Vertex root = 0;
  for (Vertex v = 1; v < n; ++v)
    if (g.degree(v) > g.degree(root))
      root = v;
  auto attach = [&](Vertex child, Vertex p) {
    parent[child] = p;
    in_tree[child] = 1;
    ++tdeg[child];
    ++tdeg[p];
    ++covered;
  };
  in_tree[root] = 1;
  inner[root] = 1;
  ++covered;
  for (Vertex w : g.neighbors(root))
    attach(w, root);

  while (covered < n) {
    bool progress = false;
    for (Vertex w = 0; w < n; ++w) {
      if (in_tree[w])
        continue;
      for (Vertex p : g.neighbors(w))
        if (inner[p]) {
          attach(w, p);
          progress = true;
          break;
        }
    }
    if (covered == n)
      break;

    std::vector<std::pair<int, Vertex>> candidates;
    for (Vertex l = 0; l < n; ++l) {
      if (!in_tree[l] || inner[l])
        continue;
      int fresh = 0;
      for (Vertex w : g.neighbors(l))
        fresh += in_tree[w] ? 0 : 1;
      if (fresh > 0)
        candidates.emplace_back(-fresh, l);
    }
    std::sort(candidates.begin(), candidates.end());
    for (auto [neg_fresh, l] : candidates) {
      std::vector<Vertex> fresh, stolen;
      std::vector<int> spare = tdeg;
      for (Vertex w : g.neighbors(l))
        if (!in_tree[w])
          fresh.push_back(w);
      for (Vertex x : g.neighbors(l)) {
        if (static_cast<int>(fresh.size() + stolen.size()) >= k)
          break;
        if (!in_tree[x] || inner[x] || x == parent[l])
          continue;
        const Vertex p = parent[x];
        if (p >= 0 && spare[p] > k + 1) {
          --spare[p];
          stolen.push_back(x);
        }
      }
      if (static_cast<int>(fresh.size() + stolen.size()) < k)
        continue;
      inner[l] = 1;
      for (Vertex x : stolen) {
        --tdeg[parent[x]];
        parent[x] = l;
        ++tdeg[l];
      }
      for (Vertex w : fresh)
        attach(w, l);
      progress = true;
      break;
    }
    if (!progress)
      return std::nullopt;
  }

  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v)
    if (parent[v] >= 0)
      edges.emplace_back(parent[v], v);
  auto cert = make_certificate(all_vertices(g), std::move(edges), k);
  if (!classify(g, cert, k).is_full())
    return std::nullopt;
  return cert;
}

} // namespace detail

/// Budget of the exact fallback inside solve_dense.
inline constexpr std::uint64_t dense_fallback_nodes = 20'000'000;

/// Realizes "δ ≥ c_k√n ⇒ a [2,k]-ST exists" constructively: greedy growth,
/// falling back to solve_exact. Deterministic for a given graph.
inline TreeCertificate solve_dense(const Graph& g, int k) {
  if (k < 2)
    throw input_error("class bound k must be at least 2");
  if (g.order() == 0)
    throw input_error("solve_dense: empty graph");
  const int delta = min_degree(g);
  if (!meets_density_bound(delta, g.order(), k))
    throw input_error("solve_dense: min degree " + std::to_string(delta) + " below c_k*sqrt(n)");
  if (!is_connected(g))
    throw input_error("solve_dense: graph is disconnected");
  if (auto cert = detail::greedy_dense(g, k))
    return *cert;
  auto outcome = solve_exact(g, k, SearchBudget{dense_fallback_nodes, std::nullopt});
  if (outcome.status == SolveStatus::found)
    return *outcome.certificate;
  throw contract_error("dense oracle contract violated: no [2,k]-ST produced (" + outcome.diagnostic + ")");
}

} // namespace kst
