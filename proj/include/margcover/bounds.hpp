#pragma once

// Isoperimetric bounds on how many k-dimensional subcubes q points of a
// d^n cube can fully contain, and the replication-rate lower bound that
// follows from them.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "margcover/combinatorics.hpp"
#include "margcover/cover_core.hpp"
#include "margcover/errors.hpp"

namespace margcover {

/// Generalized binomial x(x-1)...(x-y+1)/y! for real x >= 0 and integer
/// y >= 0. Agrees with Gamma(x+1)/(Gamma(y+1)Gamma(x-y+1)) wherever that is
/// finite.
inline double gamma_binom(double x, int y) {
  if (y < 0) throw DomainError("gamma_binom needs y >= 0, got " + std::to_string(y));
  double r = 1.0;
  for (int i = 0; i < y; ++i) r *= (x - i) / (i + 1);
  return r;
}

/// The same quantity through three log-gamma evaluations; only defined for
/// x > y - 1. Kept as an independent route for cross-checking.
inline double gamma_binom_lgamma(double x, int y) {
  if (y < 0) throw DomainError("gamma_binom needs y >= 0");
  if (!(x > y - 1.0)) throw DomainError("log-gamma route needs x > y - 1");
  return std::exp(std::lgamma(x + 1.0) - std::lgamma(y + 1.0) - std::lgamma(x - y + 1.0));
}

/// m if q == d^m exactly.
inline std::optional<int> exact_log(std::uint64_t q, std::uint64_t d) {
  if (d < 2 || q < 1) return std::nullopt;
  int m = 0;
  while (q % d == 0) {
    q /= d;
    ++m;
  }
  return q == 1 ? std::optional<int>(m) : std::nullopt;
}

/// log_d q, exact when q is a power of d.
inline double log_base(std::uint64_t q, std::uint64_t d) {
  if (auto m = exact_log(q, d)) return *m;
  return std::log(static_cast<double>(q)) / std::log(static_cast<double>(d));
}

inline double int_pow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

/// Upper bound (q/d^k) * binom(log_d q, k) on the number of k-dimensional
/// subcubes a set of q points can wholly contain. Independent of n.
inline double subcube_coverage_bound(std::uint64_t q, std::uint64_t d, int k) {
  if (q < 1) throw DomainError("subcube bound needs q >= 1");
  if (d < 2) throw DomainError("subcube bound needs d >= 2");
  if (k < 0) throw DomainError("subcube bound needs k >= 0");
  return static_cast<double>(q) / int_pow(static_cast<double>(d), k) * gamma_binom(log_base(q, d), k);
}

/// r >= binom(n,k) / binom(log_d q, k) for any single-round schema with
/// reducer size q.
inline double replication_lower_bound(int n, std::uint64_t d, int k, std::uint64_t q) {
  if (!(0 <= k && k <= n)) throw DomainError("replication bound needs 0 <= k <= n");
  if (d < 2) throw DomainError("replication bound needs d >= 2");
  if (static_cast<double>(q) < int_pow(static_cast<double>(d), k)) {
    throw InfeasibleError("reducer size q=" + std::to_string(q) + " is below d^k = " + std::to_string(d) + "^" +
                          std::to_string(k) + "; a k-th order marginal needs q >= d^k inputs");
  }
  return to_double(binom_exact(n, k)) / gamma_binom(log_base(q, d), k);
}

/// Exact maximum, over all q-point subsets of the d^n cube, of the number of
/// k-dimensional subcubes (k free dimensions, the rest fixed) contained in
/// the subset. Exhaustive, so only for tiny cubes.
inline std::uint64_t max_covered_kcubes_bruteforce(int n, int d, int k, int q) {
  if (n < 1 || d < 2 || k < 0 || k > n || q < 0) throw DomainError("brute force needs n >= 1, d >= 2, 0 <= k <= n, q >= 0");
  std::uint64_t points = 1;
  for (int i = 0; i < n; ++i) points *= static_cast<std::uint64_t>(d);
  if (points > 20) throw BudgetError("brute force needs d^n <= 20, got " + std::to_string(points));
  if (q > static_cast<int>(points)) throw DomainError("q exceeds the number of cube points");
  if (binom_small(static_cast<int>(points), q) > 10'000'000) throw BudgetError("brute force needs binom(d^n, q) <= 10^7");

  // Point p has coordinate (p / d^i) % d in dimension i.
  std::vector<std::uint64_t> stride(n);
  stride[0] = 1;
  for (int i = 1; i < n; ++i) stride[i] = stride[i - 1] * static_cast<std::uint64_t>(d);

  std::vector<std::uint32_t> subcubes;  // point masks
  for_each_combination(n, k, [&](const std::vector<int>& free) {
    // Subcubes sharing the fixed coordinates collapse onto the same anchor
    // (free coordinates zeroed).
    std::vector<std::uint32_t> cube_mask(points, 0);
    for (std::uint64_t p = 0; p < points; ++p) {
      std::uint64_t anchor = p;
      for (int i : free) anchor -= ((p / stride[i]) % d) * stride[i];
      cube_mask[anchor] |= std::uint32_t{1} << p;
    }
    for (std::uint64_t a = 0; a < points; ++a)
      if (cube_mask[a] != 0) subcubes.push_back(cube_mask[a]);
  });

  std::uint64_t best = 0;
  for_each_combination(static_cast<int>(points), q, [&](const std::vector<int>& chosen) {
    std::uint32_t set = 0;
    for (int p : chosen) set |= std::uint32_t{1} << p;
    std::uint64_t count = 0;
    for (auto c : subcubes) count += (c & set) == c;
    best = std::max(best, count);
  });
  return best;
}

struct BoundsReport {
  int n = 0;
  int k = 0;
  std::uint64_t d = 0;
  std::uint64_t q = 0;
  double f_bound = 0;             // max k-subcubes coverable by q points
  double r_lower = 0;             // replication-rate lower bound
  std::optional<BigInt> c_lower;  // covering lower bound, when q = d^m with k <= m <= n
  BigInt naive_r;                 // binom(n, k)
};

inline BoundsReport bounds_report(int n, std::uint64_t d, int k, std::uint64_t q) {
  BoundsReport r;
  r.n = n;
  r.k = k;
  r.d = d;
  r.q = q;
  r.f_bound = subcube_coverage_bound(q, d, k);
  r.r_lower = replication_lower_bound(n, d, k, q);
  r.naive_r = binom_exact(n, k);
  if (auto m = exact_log(q, d); m && k >= 1 && *m >= k && *m <= n) r.c_lower = covering_lower_bound(n, *m, k);
  return r;
}

}  // namespace margcover
