#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "kst/graph.hpp"
#include "kst/thresholds.hpp"

namespace kst {

/// Structural quantities of a graph and the numeric conditions of the
/// existence theorems they feed. Flags test the numeric conditions only;
/// connectivity, which every theorem also assumes, is reported in `connected`.
struct HypothesisReport {
  int n = 0;
  int k = 2;
  int delta = 0;
  PairMinimum sigma;
  PairMinimum nc;
  bool connected = false;

  bool thm1_1 = false;           // δ ≥ 4√(2n)
  bool thm1_2 = false;           // n ≥ 8 and σ ≥ n − 1
  bool thm1_4 = false;           // δ ≥ c_k√n
  bool thm1_5_condition = false; // n ≥ n0(k) and σ ≥ n − 2
  bool thm1_6 = false;           // n ≥ n1(k), δ ≥ 2k, NC ≥ (n − 2)/2

  /// Why thm1_6 is false, one entry per failed condition.
  std::vector<std::string> thm1_6_failures;
};

inline HypothesisReport hypothesis_report(const Graph& g, int k) {
  if (k < 2)
    throw input_error("class bound k must be at least 2");
  const auto th = thresholds(k);
  HypothesisReport r;
  r.n = g.order();
  r.k = k;
  r.delta = min_degree(g);
  r.sigma = sigma_value(g);
  r.nc = nc_value(g);
  r.connected = g.order() > 0 && is_connected(g);

  const long long n = r.n;
  r.thm1_1 = static_cast<long double>(r.delta) >= 4 * std::sqrt(2.0L * static_cast<long double>(n));
  r.thm1_2 = n >= 8 && (r.sigma.complete || r.sigma.value >= n - 1);
  r.thm1_4 = meets_density_bound(r.delta, n, k);
  r.thm1_5_condition = n >= th.n0 && (r.sigma.complete || r.sigma.value >= n - 2);

  if (n < th.n1)
    r.thm1_6_failures.push_back("n < n1 (" + std::to_string(n) + " < " + std::to_string(th.n1) + ")");
  if (r.delta < 2 * k)
    r.thm1_6_failures.push_back("delta " + std::to_string(r.delta) + " < " + std::to_string(2 * k));
  if (!r.nc.complete && 2LL * r.nc.value < n - 2)
    r.thm1_6_failures.push_back("2*NC " + std::to_string(2 * r.nc.value) + " < n-2 " + std::to_string(n - 2));
  r.thm1_6 = r.thm1_6_failures.empty();
  return r;
}

} // namespace kst
