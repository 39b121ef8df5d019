#pragma once

// Explicit handle constructions. Every recursion places its groups on
// contiguous slices of the dimension list it is given; sub-results are built
// directly on those dimensions. Duplicate handles are dropped afterwards
// (first occurrence wins).

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "margcover/combinatorics.hpp"
#include "margcover/cover_core.hpp"
#include "margcover/errors.hpp"
#include "margcover/exact_search.hpp"

namespace margcover {

enum class ConstructionMethod {
  naive,
  first_order,
  triple32,
  slow32,
  hybrid32,
  block2m,
  doubling2m,
  general,
  quad43,
  greedy,
  random,
  exact_small,
  automatic,
};

inline std::string_view to_string(ConstructionMethod m) {
  switch (m) {
    case ConstructionMethod::naive: return "naive";
    case ConstructionMethod::first_order: return "first_order";
    case ConstructionMethod::triple32: return "triple32";
    case ConstructionMethod::slow32: return "slow32";
    case ConstructionMethod::hybrid32: return "hybrid32";
    case ConstructionMethod::block2m: return "block2m";
    case ConstructionMethod::doubling2m: return "doubling2m";
    case ConstructionMethod::general: return "general";
    case ConstructionMethod::quad43: return "quad43";
    case ConstructionMethod::greedy: return "greedy";
    case ConstructionMethod::random: return "random";
    case ConstructionMethod::exact_small: return "exact";
    case ConstructionMethod::automatic: return "auto";
  }
  return "?";
}

inline ConstructionMethod method_from_string(std::string_view s) {
  for (auto m : {ConstructionMethod::naive, ConstructionMethod::first_order, ConstructionMethod::triple32,
                 ConstructionMethod::slow32, ConstructionMethod::hybrid32, ConstructionMethod::block2m,
                 ConstructionMethod::doubling2m, ConstructionMethod::general, ConstructionMethod::quad43,
                 ConstructionMethod::greedy, ConstructionMethod::random, ConstructionMethod::exact_small,
                 ConstructionMethod::automatic}) {
    if (to_string(m) == s) return m;
  }
  if (s == "exact_small") return ConstructionMethod::exact_small;
  throw ValidationError("unknown construction method '" + std::string(s) + "'");
}

namespace detail {

using Dims = std::vector<int>;
using Masks = std::vector<DimMask>;

inline DimMask mask_of(const Dims& dims, std::size_t from = 0, std::size_t to = SIZE_MAX) {
  DimMask m = 0;
  to = std::min(to, dims.size());
  for (std::size_t i = from; i < to; ++i) m |= DimMask{1} << dims[i];
  return m;
}

inline Dims iota_dims(int n) {
  Dims d(n);
  for (int i = 0; i < n; ++i) d[i] = i;
  return d;
}

inline Dims slice(const Dims& dims, std::size_t from, std::size_t count) {
  return Dims(dims.begin() + static_cast<std::ptrdiff_t>(from),
              dims.begin() + static_cast<std::ptrdiff_t>(from + count));
}

/// Fills `mask` up to `size` dimensions with the lowest indices of [0, n) it
/// does not already hold.
inline DimMask pad_to(DimMask mask, int size, int n) {
  for (int i = 0; i < n && std::popcount(mask) < size; ++i) mask |= DimMask{1} << i;
  return mask;
}

inline CoverDesign finish(int n, std::optional<int> m, int k, const Masks& masks) {
  std::vector<DimSet> handles;
  handles.reserve(masks.size());
  for (auto mk : masks) handles.push_back(DimSet::from_mask(mk));
  return CoverDesign::deduplicated(n, m, k, std::move(handles));
}

/// Places a design built on [0, dims.size()) onto `dims`.
inline void append_relabeled(Masks& out, const CoverDesign& d, const Dims& dims) {
  for (const auto& h : d.handles()) {
    DimMask mk = 0;
    for (int i : h) mk |= DimMask{1} << dims[i];
    out.push_back(mk);
  }
}

inline bool is_power_of(int n, int base) {
  if (n < 1) return false;
  while (n % base == 0) n /= base;
  return n == 1;
}

/// Cheap attempt at a minimum cover for a recursion's sub-problem.
inline std::optional<CoverDesign> try_exact(int n, int m, int k) {
  if (!(k < m && m < n) || binom_small(n, m) > 10'000) return std::nullopt;
  try {
    return exact_small_cover(n, m, k, {.node_budget = 1'000'000});
  } catch (const BudgetError&) {
    return std::nullopt;
  }
}

// Handles {A_i, B_j, C_l} with i + j + l == 0 mod |A|, over every (j, l).
// Requires |A| <= |B| <= |C|: each row j and column l then meets every
// residue of A, so all cross-group pairs are covered with |B||C| handles.
inline void three_group_cross(Masks& out, const Dims& a, const Dims& b, const Dims& c) {
  const std::size_t s = a.size();
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (std::size_t l = 0; l < c.size(); ++l) {
      const std::size_t i = (s - (j + l) % s) % s;
      out.push_back((DimMask{1} << a[i]) | (DimMask{1} << b[j]) | (DimMask{1} << c[l]));
    }
  }
}

inline void triple32_rec(Masks& out, const Dims& dims) {
  if (dims.size() == 3) {
    out.push_back(mask_of(dims));
    return;
  }
  const std::size_t s = dims.size() / 3;
  const Dims a = slice(dims, 0, s), b = slice(dims, s, s), c = slice(dims, 2 * s, s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      const std::size_t l = (2 * s - i - j) % s;
      out.push_back((DimMask{1} << a[i]) | (DimMask{1} << b[j]) | (DimMask{1} << c[l]));
    }
  }
  triple32_rec(out, a);
  triple32_rec(out, b);
  triple32_rec(out, c);
}

inline void slow32_rec(Masks& out, const Dims& dims, bool six_base) {
  const std::size_t n = dims.size();
  if (n == 3) {
    out.push_back(mask_of(dims));
    return;
  }
  if (n == 4 || (n == 6 && six_base)) {
    append_relabeled(out, exact_small_cover(static_cast<int>(n), 3, 2), dims);
    return;
  }
  const DimMask pair = (DimMask{1} << dims[0]) | (DimMask{1} << dims[1]);
  for (std::size_t i = 2; i < n; ++i) out.push_back(pair | (DimMask{1} << dims[i]));
  slow32_rec(out, slice(dims, 2, n - 2), six_base);
}

}  // namespace detail

/// C(n, m, 1) = ceil(n/m): consecutive blocks, the last one shifted left so
/// it still has m dimensions.
inline CoverDesign cover_first_order(int n, int m) {
  if (!(1 <= m && m <= n && n <= kMaxDims)) throw DomainError("first-order cover needs 1 <= m <= n <= 64");
  detail::Masks out;
  for (int start = 0; start < n; start += m) {
    const int lo = std::min(start, n - m);
    out.push_back(full_mask(lo + m) & ~full_mask(lo));
  }
  return detail::finish(n, m, 1, out);
}

/// Three groups of n/3; cross handles with zero index sum mod n/3, then each
/// group recursively. Exactly n^2/6 - n/6 handles.
inline CoverDesign cover_32_triple(int n) {
  if (n < 3 || n > kMaxDims || !detail::is_power_of(n, 3)) {
    throw DomainError("triple32 needs n a power of 3 with 3 <= n <= 64, got " + std::to_string(n));
  }
  detail::Masks out;
  detail::triple32_rec(out, detail::iota_dims(n));
  return detail::finish(n, 3, 2, out);
}

/// Pairs dimensions {0,1} with each other dimension, then recurses on the
/// rest. Bottoms out at C(3) = 1, and for even n at the exact C(6) = 6 (or
/// C(4) = 3 when `six_base` is false).
inline CoverDesign cover_32_slow(int n, bool six_base = true) {
  if (n < 3 || n > kMaxDims) throw DomainError("slow32 needs 3 <= n <= 64, got " + std::to_string(n));
  detail::Masks out;
  detail::slow32_rec(out, detail::iota_dims(n), six_base);
  return detail::finish(n, 3, 2, out);
}

namespace detail {

enum class HybridStep { base, exact, split, add_two, add_one };

struct HybridPlan {
  std::uint64_t count = 0;
  HybridStep step = HybridStep::base;
  int a = 0, b = 0, c = 0;  // group sizes for split
};

inline constexpr int kHybridExactMax = 13;

// Cheapest composition for C(n,3,2) among: exact small covers, the
// three-group cross step with groups a <= b <= c (b*c cross handles), the
// +2 step (n-2 handles) and a +1 step (ceil((n-1)/2) handles).
inline const std::vector<HybridPlan>& hybrid_plans() {
  static const std::vector<HybridPlan> plans = [] {
    std::vector<HybridPlan> p(kMaxDims + 1);
    p[1] = {0, HybridStep::base};
    p[2] = {1, HybridStep::base};
    p[3] = {1, HybridStep::base};
    for (int n = 4; n <= kMaxDims; ++n) {
      HybridPlan best{UINT64_MAX};
      auto consider = [&](HybridPlan cand) {
        if (cand.count < best.count) best = cand;
      };
      if (n <= kHybridExactMax) {
        consider({exact_small_cover(n, 3, 2).handle_count(), HybridStep::exact});
      }
      for (int a = 1; 3 * a <= n; ++a) {
        for (int b = a; a + 2 * b <= n; ++b) {
          const int c = n - a - b;
          consider({static_cast<std::uint64_t>(b) * c + p[a].count + p[b].count + p[c].count, HybridStep::split,
                    a, b, c});
        }
      }
      consider({static_cast<std::uint64_t>(n - 2) + p[n - 2].count, HybridStep::add_two});
      consider({static_cast<std::uint64_t>(n / 2) + p[n - 1].count, HybridStep::add_one});
      p[n] = best;
    }
    return p;
  }();
  return plans;
}

inline void hybrid_rec(Masks& out, const Dims& dims, int n_total) {
  const int n = static_cast<int>(dims.size());
  const HybridPlan& plan = hybrid_plans()[n];
  switch (plan.step) {
    case HybridStep::base:
      if (n >= 2) {
        DimMask mk = mask_of(dims);
        for (int i = 0; i < n_total && std::popcount(mk) < 3; ++i) mk |= DimMask{1} << i;
        out.push_back(mk);
      }
      return;
    case HybridStep::exact:
      append_relabeled(out, exact_small_cover(n, 3, 2), dims);
      return;
    case HybridStep::split: {
      const Dims a = slice(dims, 0, plan.a), b = slice(dims, plan.a, plan.b),
                 c = slice(dims, plan.a + plan.b, plan.c);
      three_group_cross(out, a, b, c);
      hybrid_rec(out, a, n_total);
      hybrid_rec(out, b, n_total);
      hybrid_rec(out, c, n_total);
      return;
    }
    case HybridStep::add_two: {
      const DimMask pair = (DimMask{1} << dims[0]) | (DimMask{1} << dims[1]);
      for (int i = 2; i < n; ++i) out.push_back(pair | (DimMask{1} << dims[i]));
      hybrid_rec(out, slice(dims, 2, n - 2), n_total);
      return;
    }
    case HybridStep::add_one: {
      // dims[0] is new; pair it with consecutive couples of the rest.
      const Dims rest = slice(dims, 1, n - 1);
      const DimMask fresh = DimMask{1} << dims[0];
      for (std::size_t i = 0; i < rest.size(); i += 2) {
        const int partner = i + 1 < rest.size() ? rest[i + 1] : rest[0];
        out.push_back(fresh | (DimMask{1} << rest[i]) | (DimMask{1} << partner));
      }
      hybrid_rec(out, rest, n_total);
      return;
    }
  }
}

}  // namespace detail

/// C(n,3,2) for any n >= 3 by composing exact small covers with the
/// three-group and slower recursions; picks the cheapest composition.
inline CoverDesign cover_32_hybrid(int n) {
  if (n < 3 || n > kMaxDims) throw DomainError("hybrid32 needs 3 <= n <= 64, got " + std::to_string(n));
  detail::Masks out;
  detail::hybrid_rec(out, detail::iota_dims(n), n);
  return detail::finish(n, 3, 2, out);
}

/// Number of handles cover_32_hybrid(n) plans before deduplication.
inline std::uint64_t hybrid32_planned_count(int n) {
  if (n < 1 || n > kMaxDims) throw DomainError("hybrid32 plan needs 1 <= n <= 64");
  return detail::hybrid_plans()[n].count;
}

namespace detail {

inline Masks block2m_rec(const Dims& dims, int m, int n_total, bool top) {
  const int n = static_cast<int>(dims.size());
  Masks out;
  if (n <= m) {
    if (n >= 2) out.push_back(pad_to(mask_of(dims), m, n_total));
    return out;
  }
  const DimMask group = mask_of(dims, 0, m - 1);
  for (int i = m - 1; i < n; ++i) out.push_back(group | (DimMask{1} << dims[i]));
  const Masks rest = block2m_rec(slice(dims, m - 1, n - (m - 1)), m, n_total, false);
  out.insert(out.end(), rest.begin(), rest.end());
  if (!top) {
    if (auto exact = try_exact(n, m, 2); exact && exact->handle_count() < out.size()) {
      out.clear();
      append_relabeled(out, *exact, dims);
    }
  }
  return out;
}

}  // namespace detail

/// C(n,m,2) <= n-(m-1) + C(n-(m-1),m,2): the first m-1 dimensions joined with
/// each other dimension, then a cover of the remainder (the smaller of the
/// recursion and an exact small cover when one is cheap to find).
inline CoverDesign cover_2m_block(int n, int m) {
  if (m < 3) throw DomainError("block2m needs m >= 3 (use slow32 for pairs by triples)");
  if (n < m || n > kMaxDims) throw DomainError("block2m needs m <= n <= 64");
  return detail::finish(n, m, 2, detail::block2m_rec(detail::iota_dims(n), m, n, true));
}

namespace detail {

inline void doubling_rec(Masks& out, const Dims& dims, int m) {
  const std::size_t n = dims.size();
  if (static_cast<int>(n) == m) {
    out.push_back(mask_of(dims));
    return;
  }
  const std::size_t half = n / 2, block = static_cast<std::size_t>(m) / 2;
  for (std::size_t i = 0; i < half; i += block) {
    const DimMask left = mask_of(dims, i, i + block);
    for (std::size_t j = half; j < n; j += block) out.push_back(left | mask_of(dims, j, j + block));
  }
  doubling_rec(out, slice(dims, 0, half), m);
  doubling_rec(out, slice(dims, half, half), m);
}

}  // namespace detail

/// Recursive doubling for n = m * 2^t, m even: blocks of m/2 in each half
/// paired in all ways, then both halves recursively.
inline CoverDesign cover_2m_doubling(int n, int m) {
  if (m < 2 || m % 2 != 0) throw DomainError("doubling2m needs an even m >= 2");
  if (n < m || n > kMaxDims || n % m != 0 || !detail::is_power_of(n / m, 2)) {
    throw DomainError("doubling2m needs n = m * 2^t, got n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
  detail::Masks out;
  detail::doubling_rec(out, detail::iota_dims(n), m);
  return detail::finish(n, m, 2, out);
}

namespace detail {

inline void general_rec(Masks& out, const Dims& dims, int m, int k, int n_total) {
  const int n = static_cast<int>(dims.size());
  if (n <= m) {
    if (n >= k) out.push_back(pad_to(mask_of(dims), m, n_total));
    return;
  }
  const int g = m - k + 1;
  const DimMask group = mask_of(dims, 0, g);
  const Dims rest = slice(dims, g, n - g);
  for_each_combination(static_cast<int>(rest.size()), k - 1, [&](const std::vector<int>& c) {
    DimMask mk = group;
    for (int i : c) mk |= DimMask{1} << rest[i];
    out.push_back(mk);
  });
  general_rec(out, rest, m, k, n_total);
}

}  // namespace detail

/// Any 1 <= k < m <= n: the first m-k+1 dimensions joined with every
/// (k-1)-subset of the rest, then the rest recursively.
inline CoverDesign cover_general(int n, int m, int k) {
  if (!(1 <= k && k < m && m <= n && n <= kMaxDims)) throw DomainError("general cover needs 1 <= k < m <= n <= 64");
  detail::Masks out;
  detail::general_rec(out, detail::iota_dims(n), m, k, n);
  return detail::finish(n, m, k, out);
}

namespace detail {

inline void quad43_rec(Masks& out, const Dims& dims) {
  const std::size_t n = dims.size();
  if (n == 4) {
    out.push_back(mask_of(dims));
    return;
  }
  const std::size_t s = n / 4;
  Dims g[4];
  for (std::size_t t = 0; t < 4; ++t) g[t] = slice(dims, t * s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t l = 0; l < s; ++l) {
        const std::size_t p = (3 * s - i - j - l) % s;
        out.push_back((DimMask{1} << g[0][i]) | (DimMask{1} << g[1][j]) | (DimMask{1} << g[2][l]) |
                      (DimMask{1} << g[3][p]));
      }
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = x + 1; y < 4; ++y) {
      Dims both = g[x];
      both.insert(both.end(), g[y].begin(), g[y].end());
      quad43_rec(out, both);
    }
}

}  // namespace detail

/// C(4s,4,3) <= s^3 + 6 C(2s,4,3) for n a power of two, n >= 4.
inline CoverDesign cover_43_quad(int n) {
  if (n < 4 || n > kMaxDims || !detail::is_power_of(n, 2)) {
    throw DomainError("quad43 needs n a power of 2 with 4 <= n <= 64, got " + std::to_string(n));
  }
  detail::Masks out;
  detail::quad43_rec(out, detail::iota_dims(n));
  return detail::finish(n, 4, 3, out);
}

/// Classic greedy set cover over all m-subsets: repeatedly take the handle
/// covering the most uncovered k-subsets, ties to the lexicographically
/// smallest handle.
inline CoverDesign cover_greedy(int n, int m, int k) {
  if (!(1 <= k && k <= m && m <= n && n <= kMaxDims)) throw DomainError("greedy cover needs 1 <= k <= m <= n <= 64");
  if (binom_small(n, m) > kCandidateHandleBudget) {
    throw BudgetError("greedy: binom(" + std::to_string(n) + "," + std::to_string(m) + ") candidates exceed 10^6");
  }
  if (binom_small(n, k) > kMarginalEnumerationBudget) throw BudgetError("greedy: too many marginals");

  std::vector<DimMask> candidates;
  for_each_combination(n, m, [&](const std::vector<int>& c) {
    DimMask mk = 0;
    for (int i : c) mk |= DimMask{1} << i;
    candidates.push_back(mk);
  });
  std::vector<bool> covered(binom_small(n, k), false);
  std::uint64_t uncovered = covered.size();

  // Lazy evaluation: stored gains only ever overestimate, so a popped entry
  // whose recomputed gain matches its stored gain is the true maximum, and
  // among equal gains the smallest candidate index (lexicographic) pops first.
  using Entry = std::pair<std::uint64_t, std::uint32_t>;  // gain, index
  auto worse = [](const Entry& a, const Entry& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  const std::uint64_t full = binom_small(m, k);
  for (std::uint32_t i = 0; i < candidates.size(); ++i) heap.emplace(full, i);

  detail::Masks out;
  while (uncovered > 0) {
    auto [gain, idx] = heap.top();
    heap.pop();
    std::uint64_t actual = 0;
    for_each_submask(candidates[idx], k, [&](DimMask s) { actual += !covered[colex_rank(s)]; });
    if (actual != gain) {
      if (actual > 0) heap.emplace(actual, idx);
      continue;
    }
    out.push_back(candidates[idx]);
    for_each_submask(candidates[idx], k, [&](DimMask s) {
      const auto r = colex_rank(s);
      if (!covered[r]) {
        covered[r] = true;
        --uncovered;
      }
    });
  }
  return detail::finish(n, m, k, out);
}

namespace detail {

// Unbiased draw from [0, bound] using only the engine's raw output, so the
// result does not depend on the standard library's distributions.
inline std::uint64_t uniform_upto(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == UINT64_MAX) return rng();
  const std::uint64_t range = bound + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % range;
}

}  // namespace detail

inline constexpr std::uint64_t kDefaultSeed = 20150601;

/// ceil(2 ln binom(n,k) * binom(n,k)/binom(m,k)) uniform m-subsets, then one
/// patch handle per still-uncovered k-subset (the subset plus the lowest
/// other dimensions). Reproducible for a given seed.
inline CoverDesign cover_random(int n, int m, int k, std::uint64_t seed = kDefaultSeed) {
  if (!(1 <= k && k < m && m <= n && n <= kMaxDims)) throw DomainError("random cover needs 1 <= k < m <= n <= 64");
  if (binom_small(n, m) > kCandidateHandleBudget) {
    throw BudgetError("random: binom(" + std::to_string(n) + "," + std::to_string(m) + ") candidates exceed 10^6");
  }
  const auto samples = static_cast<std::uint64_t>(std::ceil(prob_upper_bound(n, m, k)));
  std::mt19937_64 rng(seed);
  detail::Masks out;
  std::vector<bool> covered(binom_small(n, k), false);
  auto take = [&](DimMask h) {
    out.push_back(h);
    for_each_submask(h, k, [&](DimMask s) { covered[colex_rank(s)] = true; });
  };
  for (std::uint64_t s = 0; s < samples; ++s) {
    // Floyd's sampling of an m-subset of [0, n).
    DimMask h = 0;
    for (int j = n - m; j < n; ++j) {
      const auto t = static_cast<int>(detail::uniform_upto(rng, static_cast<std::uint64_t>(j)));
      h |= (h >> t & 1) ? (DimMask{1} << j) : (DimMask{1} << t);
    }
    take(h);
  }
  for_each_combination(n, k, [&](const std::vector<int>& c) {
    if (covered[colex_rank(c)]) return;
    DimMask h = 0;
    for (int i : c) h |= DimMask{1} << i;
    take(detail::pad_to(h, m, n));
  });
  return detail::finish(n, m, k, out);
}

struct BestCover {
  CoverDesign design;
  ConstructionMethod method;
};

/// Runs every construction applicable to (n, m, k) and keeps the smallest;
/// on ties the earlier one in the order below wins.
inline BestCover best_cover(int n, int m, int k) {
  if (!(1 <= k && k < m && m <= n && n <= kMaxDims)) throw DomainError("best cover needs 1 <= k < m <= n <= 64");
  std::optional<BestCover> best;
  auto consider = [&](ConstructionMethod method, auto&& build) {
    try {
      CoverDesign d = build();
      if (!best || d.handle_count() < best->design.handle_count()) best = BestCover{std::move(d), method};
    } catch (const BudgetError&) {
    }
  };
  using M = ConstructionMethod;
  if (k == 1) consider(M::first_order, [&] { return cover_first_order(n, m); });
  if (m == 3 && k == 2 && detail::is_power_of(n, 3)) consider(M::triple32, [&] { return cover_32_triple(n); });
  if (k == 2 && m % 2 == 0 && n % m == 0 && detail::is_power_of(n / m, 2)) {
    consider(M::doubling2m, [&] { return cover_2m_doubling(n, m); });
  }
  if (k == 2 && m >= 3) consider(M::block2m, [&] { return cover_2m_block(n, m); });
  if (m == 4 && k == 3 && n >= 4 && detail::is_power_of(n, 2)) consider(M::quad43, [&] { return cover_43_quad(n); });
  consider(M::general, [&] { return cover_general(n, m, k); });
  if (binom_small(n, m) <= 10'000) {
    consider(M::exact_small, [&] { return exact_small_cover(n, m, k, {.node_budget = 2'000'000}); });
  }
  if (m == 3 && k == 2) consider(M::hybrid32, [&] { return cover_32_hybrid(n); });
  consider(M::greedy, [&] { return cover_greedy(n, m, k); });
  return std::move(*best);
}

/// Builds a design with a named method; `automatic` defers to best_cover.
inline BestCover construct(ConstructionMethod method, int n, int m, int k, std::uint64_t seed = kDefaultSeed) {
  using M = ConstructionMethod;
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string(to_string(method)) + ": " + what);
  };
  switch (method) {
    case M::naive:
      need(m == k || m == 0, "naive cover uses m = k");
      return {naive_cover(n, k), method};
    case M::first_order:
      need(k == 1, "first_order is for k = 1");
      return {cover_first_order(n, m), method};
    case M::triple32:
      need(m == 3 && k == 2, "triple32 is for m = 3, k = 2");
      return {cover_32_triple(n), method};
    case M::slow32:
      need(m == 3 && k == 2, "slow32 is for m = 3, k = 2");
      return {cover_32_slow(n), method};
    case M::hybrid32:
      need(m == 3 && k == 2, "hybrid32 is for m = 3, k = 2");
      return {cover_32_hybrid(n), method};
    case M::block2m:
      need(k == 2, "block2m is for k = 2");
      return {cover_2m_block(n, m), method};
    case M::doubling2m:
      need(k == 2, "doubling2m is for k = 2");
      return {cover_2m_doubling(n, m), method};
    case M::general: return {cover_general(n, m, k), method};
    case M::quad43:
      need(m == 4 && k == 3, "quad43 is for m = 4, k = 3");
      return {cover_43_quad(n), method};
    case M::greedy: return {cover_greedy(n, m, k), method};
    case M::random: return {cover_random(n, m, k, seed), method};
    case M::exact_small: return {exact_small_cover(n, m, k), method};
    case M::automatic:
      if (m == k) return {naive_cover(n, k), M::naive};
      return best_cover(n, m, k);
  }
  throw DomainError("unknown method");
}

}  // namespace margcover
