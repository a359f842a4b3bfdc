#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "kst/constructive.hpp"
#include "kst/exact_solver.hpp"
#include "kst/graph_io.hpp"
#include "kst/hypothesis.hpp"
#include "kst/thresholds.hpp"
#include "kst/tree_cert.hpp"

namespace kst {

using json = nlohmann::ordered_json;

inline json pair_minimum_json(const PairMinimum& p) {
  if (p.complete)
    return "complete";
  return p.value;
}

inline std::string hex_digest(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json to_json(const Graph& g) {
  return {{"n", g.order()}, {"m", g.edge_count()}, {"digest", hex_digest(graph_digest(g))}};
}

inline json to_json(const Thresholds& t) { return {{"k", t.k}, {"c_k", static_cast<double>(t.c_k)}, {"n0", t.n0}, {"n1", t.n1}}; }

inline json to_json(const HypothesisReport& r) {
  return {{"n", r.n},
          {"k", r.k},
          {"delta", r.delta},
          {"sigma", pair_minimum_json(r.sigma)},
          {"nc", pair_minimum_json(r.nc)},
          {"connected", r.connected},
          {"thm1_1", r.thm1_1},
          {"thm1_2", r.thm1_2},
          {"thm1_4", r.thm1_4},
          {"thm1_5_condition", r.thm1_5_condition},
          {"thm1_6", r.thm1_6},
          {"thm1_6_failures", r.thm1_6_failures}};
}

inline json to_json(const TreeCertificate& t) {
  json edges = json::array();
  for (auto [a, b] : t.edges)
    edges.push_back({a, b});
  return {{"k", t.k}, {"vertices", t.vertices.ids()}, {"edges", edges}};
}

inline json to_json(const TreeKind& kind) {
  json out = {{"class", to_string(kind.kind)}, {"witnesses", kind.witnesses}, {"spanning", kind.spanning}};
  if (!kind.is_valid_tree())
    out["reason"] = kind.reason;
  return out;
}

inline json to_json(const SolveOutcome& o) {
  json out = {{"status", to_string(o.status)}, {"nodes", o.stats.nodes}, {"max_depth", o.stats.max_depth}};
  if (!o.diagnostic.empty())
    out["diagnostic"] = o.diagnostic;
  if (o.certificate)
    out["certificate"] = to_json(*o.certificate);
  return out;
}

inline json to_json(const ProofTrace& t) {
  json ledger = json::array();
  for (const auto& r : t.ledger)
    ledger.push_back({{"name", r.name}, {"lhs", static_cast<double>(r.lhs)}, {"op", r.op}, {"rhs", static_cast<double>(r.rhs)}, {"holds", r.holds}});
  json calls = json::array();
  for (const auto& c : t.oracle_calls)
    calls.push_back({{"context", c.context}, {"size", c.size}, {"min_degree", c.min_degree}, {"bound", static_cast<double>(c.bound)}, {"ok", c.ok}});
  return {{"n", t.n},
          {"k", t.k},
          {"delta", t.delta},
          {"u", t.u},
          {"W", t.w.ids()},
          {"case_path", t.case_path},
          {"label", t.label()},
          {"oracle_calls", calls},
          {"ledger", ledger},
          {"notes", t.notes}};
}

} // namespace kst
