#pragma once

#include <cmath>
#include <string>

#include "kst/errors.hpp"

namespace kst {

/// Order thresholds for a class bound k.
///
/// c_k = (√k + √2)·√(k(k−1)) is the minimum-degree constant; n1 is the least n
/// from which n − 4c_k√n − 12k + 14 ≥ 0 holds for good, n0 likewise for
/// n − 4c_k√n − 2k² − 4k − 4 ≥ 0.
struct Thresholds {
  int k = 2;
  long double c_k = 0;
  long long n0 = 0;
  long long n1 = 0;
};

inline long double density_constant(int k) {
  if (k < 2)
    throw input_error("class bound k must be at least 2");
  const long double kk = k;
  return (std::sqrt(kk) + std::sqrt(2.0L)) * std::sqrt(kk * (kk - 1));
}

namespace detail {

// Least positive integer n with n − 4c√n − shift ≥ 0 for every n' ≥ n (shift > 0).
// In s = √n the left side is s² − 4cs − shift, negative up to its positive root
// and increasing after it, so the answer is ⌈root²⌉ up to rounding, which the
// local scan settles by direct evaluation.
inline long long order_threshold(long double c, long double shift) {
  auto holds = [&](long long n) {
    const long double nn = static_cast<long double>(n);
    return nn - 4 * c * std::sqrt(nn) - shift >= 0;
  };
  const long double root = 2 * c + std::sqrt(4 * c * c + shift);
  long long n = static_cast<long long>(std::ceil(root * root));
  while (n > 1 && holds(n - 1))
    --n;
  while (!holds(n))
    ++n;
  return n;
}

} // namespace detail

inline Thresholds thresholds(int k) {
  Thresholds t;
  t.k = k;
  t.c_k = density_constant(k);
  const long double kk = k;
  t.n1 = detail::order_threshold(t.c_k, 12 * kk - 14);
  t.n0 = detail::order_threshold(t.c_k, 2 * kk * kk + 4 * kk + 4);
  return t;
}

/// δ ≥ c_k·√n, the minimum-degree condition of the dense oracle.
inline bool meets_density_bound(long long delta, long long n, int k) {
  return static_cast<long double>(delta) >= density_constant(k) * std::sqrt(static_cast<long double>(n));
}

} // namespace kst
