#pragma once

// Dimensions with different extents. Dimension i weighs w_i = log2(d_i); a
// handle is usable iff its weights sum to at most log2(q).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "margcover/combinatorics.hpp"
#include "margcover/constructions.hpp"
#include "margcover/cover_core.hpp"
#include "margcover/errors.hpp"

namespace margcover {

inline constexpr double kWeightSlack = 1e-9;
inline constexpr std::size_t kWeightedCandidateCap = 100'000;

struct WeightedSpec {
  std::vector<double> weights;
  double log_q = 0;

  [[nodiscard]] int n() const { return static_cast<int>(weights.size()); }

  void validate() const {
    if (weights.empty() || n() > kMaxDims) throw ValidationError("weighted spec needs 1..64 weights");
    for (double w : weights)
      if (!(w > 0) || !std::isfinite(w)) throw ValidationError("weights must be finite and > 0");
    if (!std::isfinite(log_q)) throw ValidationError("log_q must be finite");
  }

  /// Weights from extents, w_i = log2(d_i); an extent of 1 contributes no
  /// weight and is rejected.
  static WeightedSpec from_extents(const std::vector<std::uint64_t>& extents, std::uint64_t q) {
    WeightedSpec s;
    for (auto d : extents) s.weights.push_back(std::log2(static_cast<double>(d)));
    s.log_q = std::log2(static_cast<double>(q));
    s.validate();
    return s;
  }
};

namespace detail {

inline double mask_weight(DimMask mask, const WeightedSpec& spec) {
  double w = 0;
  for (; mask != 0; mask &= mask - 1) w += spec.weights[std::countr_zero(mask)];
  return w;
}

inline bool mask_feasible(DimMask mask, const WeightedSpec& spec) {
  return mask_weight(mask, spec) <= spec.log_q + kWeightSlack;
}

inline bool lex_less(DimMask a, DimMask b) {
  // Compare sorted index sequences.
  while (a != 0 && b != 0) {
    const int x = std::countr_zero(a), y = std::countr_zero(b);
    if (x != y) return x < y;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

// All maximal feasible dimension sets with at least k members, or false if
// there are more than the cap (or the search tree is too large).
inline bool enumerate_maximal(const WeightedSpec& spec, int k, std::vector<DimMask>& out) {
  const int n = spec.n();
  std::uint64_t nodes = 0;
  bool overflow = false;
  auto rec = [&](auto&& self, int i, DimMask chosen, double weight) -> void {
    if (overflow) return;
    if (++nodes > 4'000'000) {
      overflow = true;
      return;
    }
    if (i == n) {
      if (std::popcount(chosen) < k) return;
      for (int j = 0; j < n; ++j) {
        if (!(chosen >> j & 1) && weight + spec.weights[j] <= spec.log_q + kWeightSlack) return;
      }
      out.push_back(chosen);
      if (out.size() > kWeightedCandidateCap) overflow = true;
      return;
    }
    if (weight + spec.weights[i] <= spec.log_q + kWeightSlack) {
      self(self, i + 1, chosen | (DimMask{1} << i), weight + spec.weights[i]);
    }
    self(self, i + 1, chosen, weight);
  };
  rec(rec, 0, 0, 0.0);
  if (overflow) return false;
  std::sort(out.begin(), out.end(), lex_less);
  return true;
}

}  // namespace detail

/// Sum of the handle's weights <= log_q (within 1e-9).
inline bool handle_feasible(const DimSet& handle, const WeightedSpec& spec) {
  if (handle.size() == 0 || handle.max() >= spec.n()) {
    throw ValidationError("handle " + handle.str() + " does not fit a spec with " + std::to_string(spec.n()) +
                          " dimensions");
  }
  return detail::mask_feasible(handle.mask(), spec);
}

/// Greedy weighted cover: repeatedly take the maximal feasible handle that
/// covers the most uncovered k-subsets (ties: lexicographically smallest).
/// Candidates are all maximal feasible sets when there are at most 10^5 of
/// them; otherwise each round extends up to 10^5 uncovered k-subsets
/// lightest-dimension-first.
inline CoverDesign greedy_weighted_cover(const WeightedSpec& spec, int k) {
  spec.validate();
  const int n = spec.n();
  if (k < 1 || k > n) throw DomainError("weighted greedy needs 1 <= k <= n");
  if (binom_small(n, k) > kMarginalEnumerationBudget) throw BudgetError("weighted greedy: too many marginals");

  std::vector<std::string> infeasible;
  for_each_combination(n, k, [&](const std::vector<int>& c) {
    DimMask m = 0;
    for (int i : c) m |= DimMask{1} << i;
    if (!detail::mask_feasible(m, spec) && infeasible.size() < 8) infeasible.push_back(DimSet(c).str());
  });
  if (!infeasible.empty()) {
    std::string list;
    for (const auto& s : infeasible) list += (list.empty() ? "" : " ") + s;
    throw InfeasibleError("marginals exceed log_q on their own: " + list);
  }

  std::vector<bool> covered(binom_small(n, k), false);
  std::uint64_t uncovered = covered.size();
  auto gain_of = [&](DimMask h) {
    std::uint64_t g = 0;
    for_each_submask(h, k, [&](DimMask s) { g += !covered[colex_rank(s)]; });
    return g;
  };
  auto take = [&](DimMask h, std::vector<DimSet>& out) {
    out.push_back(DimSet::from_mask(h));
    for_each_submask(h, k, [&](DimMask s) {
      const auto r = colex_rank(s);
      if (!covered[r]) {
        covered[r] = true;
        --uncovered;
      }
    });
  };

  std::vector<DimSet> handles;
  std::vector<DimMask> maximal;
  if (detail::enumerate_maximal(spec, k, maximal)) {
    using Entry = std::pair<std::uint64_t, std::uint32_t>;
    auto worse = [](const Entry& a, const Entry& b) {
      return a.first != b.first ? a.first < b.first : a.second > b.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
    for (std::uint32_t i = 0; i < maximal.size(); ++i) heap.emplace(binom_small(std::popcount(maximal[i]), k), i);
    while (uncovered > 0) {
      auto [gain, idx] = heap.top();
      heap.pop();
      const auto actual = gain_of(maximal[idx]);
      if (actual != gain) {
        if (actual > 0) heap.emplace(actual, idx);
        continue;
      }
      take(maximal[idx], handles);
    }
  } else {
    std::vector<int> by_weight(n);
    std::iota(by_weight.begin(), by_weight.end(), 0);
    std::stable_sort(by_weight.begin(), by_weight.end(),
                     [&](int a, int b) { return spec.weights[a] < spec.weights[b]; });
    while (uncovered > 0) {
      std::set<DimMask, decltype(&detail::lex_less)> candidates(&detail::lex_less);
      for_each_combination(n, k, [&](const std::vector<int>& c) {
        if (candidates.size() >= kWeightedCandidateCap || covered[colex_rank(c)]) return;
        DimMask h = 0;
        for (int i : c) h |= DimMask{1} << i;
        double w = detail::mask_weight(h, spec);
        for (int d : by_weight) {
          if (h >> d & 1) continue;
          if (w + spec.weights[d] > spec.log_q + kWeightSlack) break;
          h |= DimMask{1} << d;
          w += spec.weights[d];
        }
        candidates.insert(h);
      });
      DimMask best = 0;
      std::uint64_t best_gain = 0;
      for (DimMask h : candidates) {
        if (const auto g = gain_of(h); g > best_gain) {
          best_gain = g;
          best = h;
        }
      }
      take(best, handles);
    }
  }
  return CoverDesign(n, std::nullopt, k, std::move(handles));
}

/// Pairs covered through three weight-sorted groups of n/3: cross handles
/// with one member per group (zero index sum mod n/3), then each group by the
/// largest handles its heaviest member allows.
inline CoverDesign grouped_cover_k2(const WeightedSpec& spec) {
  spec.validate();
  const int n = spec.n();
  if (n % 3 != 0) throw DomainError("grouped cover needs n divisible by 3, got " + std::to_string(n));
  const int s = n / 3;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return spec.weights[a] < spec.weights[b]; });
  std::vector<int> groups[3];
  double group_weight[3] = {0, 0, 0};
  for (int g = 0; g < 3; ++g) {
    groups[g].assign(order.begin() + g * s, order.begin() + (g + 1) * s);
    for (int d : groups[g]) group_weight[g] = std::max(group_weight[g], spec.weights[d]);
  }
  const double total = group_weight[0] + group_weight[1] + group_weight[2];
  if (total > spec.log_q + kWeightSlack) {
    throw InfeasibleError("group weights sum to " + std::to_string(total) + " > log_q=" + std::to_string(spec.log_q));
  }

  detail::Masks out;
  detail::three_group_cross(out, groups[0], groups[1], groups[2]);
  for (int g = 0; g < 3; ++g) {
    if (s < 2) continue;
    const int m_g = static_cast<int>(std::floor((spec.log_q + kWeightSlack) / group_weight[g]));
    if (m_g < 2) {
      throw InfeasibleError("group " + std::to_string(g) + " (weight " + std::to_string(group_weight[g]) +
                            ") cannot hold a pair within log_q");
    }
    if (m_g >= s) {
      out.push_back(detail::mask_of(groups[g]));
    } else if (m_g == 2) {
      detail::append_relabeled(out, naive_cover(s, 2), groups[g]);
    } else {
      detail::append_relabeled(out, best_cover(s, m_g, 2).design, groups[g]);
    }
  }
  return detail::finish(n, std::nullopt, 2, out);
}

}  // namespace margcover
