#pragma once

// Minimum cover designs by iterative-deepening branch and bound. This is a
// desk-scale oracle for small (n, m, k), not a scalable algorithm.
//
// Search state: which k-subsets are covered, and for every (k-1)-subset S the
// number of uncovered k-subsets containing S. A handle contains binom(m,k-1)
// such S and covers at most m-k+1 of the uncovered k-subsets through each,
// so the remaining handle count is at least
//   ceil( sum_S ceil(udeg(S)/(m-k+1)) / binom(m,k-1) ),
// alongside the plain ceil(uncovered / binom(m,k)).

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "margcover/combinatorics.hpp"
#include "margcover/cover_core.hpp"
#include "margcover/errors.hpp"

namespace margcover {

inline constexpr std::uint64_t kCandidateHandleBudget = 1'000'000;

struct ExactSearchOptions {
  std::uint64_t node_budget = 200'000'000;
};

namespace detail {

class ExactCoverSearch {
 public:
  ExactCoverSearch(int n, int m, int k, std::uint64_t node_budget)
      : n_(n), m_(m), k_(k), node_budget_(node_budget) {
    const std::uint64_t kcount = binom_small(n, k);
    const std::uint64_t per_handle = binom_small(m, k);
    if (binom_small(n, m) * per_handle > 50'000'000) {
      throw BudgetError("exact search tables for (" + std::to_string(n) + "," + std::to_string(m) +
                        "," + std::to_string(k) + ") exceed the memory budget");
    }
    kset_mask_.resize(kcount);
    for_each_combination(n, k, [&](const std::vector<int>& c) {
      const auto r = colex_rank(c);
      lex_order_.push_back(static_cast<std::uint32_t>(r));
      DimMask mk = 0;
      for (int i : c) mk |= DimMask{1} << i;
      kset_mask_[r] = mk;
    });

    containing_.resize(kcount);
    for_each_combination(n, m, [&](const std::vector<int>& c) {
      DimMask mh = 0;
      for (int i : c) mh |= DimMask{1} << i;
      const auto idx = static_cast<std::uint32_t>(handle_mask_.size());
      handle_mask_.push_back(mh);
      std::vector<std::uint32_t> covers;
      covers.reserve(per_handle);
      for_each_submask(mh, k, [&](DimMask s) {
        const auto r = static_cast<std::uint32_t>(colex_rank(s));
        covers.push_back(r);
        containing_[r].push_back(idx);
      });
      handle_covers_.push_back(std::move(covers));
    });

    sub_ranks_.resize(kcount);
    for (std::uint64_t r = 0; r < kcount; ++r) {
      for_each_submask(kset_mask_[r], k - 1,
                       [&](DimMask s) { sub_ranks_[r].push_back(static_cast<std::uint32_t>(colex_rank(s))); });
    }
    per_sub_capacity_ = m - k + 1;
    subs_per_handle_ = binom_small(m, k - 1);
    per_handle_ = per_handle;
  }

  std::optional<std::vector<DimMask>> search(std::uint64_t target) {
    reset();
    target_ = target;
    chosen_.clear();
    // Any cover contains a handle holding {0..k-1}; all such handles are
    // equivalent under relabeling, so the lexicographically first is forced.
    apply(0);
    chosen_.push_back(0);
    if (dfs(1, 0)) {
      std::vector<DimMask> out;
      for (auto h : chosen_) out.push_back(handle_mask_[h]);
      return out;
    }
    return std::nullopt;
  }

  [[nodiscard]] std::uint64_t initial_bound() {
    reset();
    return lower_bound();
  }

 private:
  void reset() {
    count_.assign(kset_mask_.size(), 0);
    udeg_.assign(binom_small(n_, k_ - 1), 0);
    for (const auto& subs : sub_ranks_)
      for (auto s : subs) ++udeg_[s];
    term_sum_ = 0;
    for (auto d : udeg_) term_sum_ += (d + per_sub_capacity_ - 1) / per_sub_capacity_;
    uncovered_ = kset_mask_.size();
  }

  [[nodiscard]] std::uint64_t lower_bound() const {
    const std::uint64_t a = (uncovered_ + per_handle_ - 1) / per_handle_;
    const std::uint64_t b = (term_sum_ + subs_per_handle_ - 1) / subs_per_handle_;
    return std::max(a, b);
  }

  void change_udeg(std::uint32_t s, int delta) {
    const std::uint64_t before = (udeg_[s] + per_sub_capacity_ - 1) / per_sub_capacity_;
    udeg_[s] += delta;
    const std::uint64_t after = (udeg_[s] + per_sub_capacity_ - 1) / per_sub_capacity_;
    term_sum_ = term_sum_ - before + after;
  }

  void apply(std::uint32_t h) {
    for (auto r : handle_covers_[h]) {
      if (count_[r]++ == 0) {
        --uncovered_;
        for (auto s : sub_ranks_[r]) change_udeg(s, -1);
      }
    }
  }

  void undo(std::uint32_t h) {
    for (auto r : handle_covers_[h]) {
      if (--count_[r] == 0) {
        ++uncovered_;
        for (auto s : sub_ranks_[r]) change_udeg(s, +1);
      }
    }
  }

  bool dfs(std::uint64_t depth, std::size_t first) {
    if (++nodes_ > node_budget_) {
      throw BudgetError("exact search for C(" + std::to_string(n_) + "," + std::to_string(m_) + "," +
                        std::to_string(k_) + ") exceeded " + std::to_string(node_budget_) + " nodes");
    }
    if (uncovered_ == 0) return true;
    if (depth + lower_bound() > target_) return false;
    while (count_[lex_order_[first]] != 0) ++first;
    for (auto h : containing_[lex_order_[first]]) {
      apply(h);
      chosen_.push_back(h);
      if (dfs(depth + 1, first)) return true;
      chosen_.pop_back();
      undo(h);
    }
    return false;
  }

  int n_, m_, k_;
  std::uint64_t node_budget_;
  std::uint64_t nodes_ = 0;
  std::uint64_t target_ = 0;

  std::vector<DimMask> kset_mask_;
  std::vector<std::uint32_t> lex_order_;
  std::vector<DimMask> handle_mask_;
  std::vector<std::vector<std::uint32_t>> handle_covers_;
  std::vector<std::vector<std::uint32_t>> containing_;
  std::vector<std::vector<std::uint32_t>> sub_ranks_;

  std::vector<std::uint32_t> count_;
  std::vector<std::uint64_t> udeg_;
  std::uint64_t term_sum_ = 0;
  std::uint64_t uncovered_ = 0;
  std::uint64_t per_sub_capacity_ = 1;
  std::uint64_t subs_per_handle_ = 1;
  std::uint64_t per_handle_ = 1;
  std::vector<std::uint32_t> chosen_;
};

inline CoverDesign exact_small_cover_uncached(int n, int m, int k, const ExactSearchOptions& opt) {
  if (m == n) return CoverDesign(n, m, k, {DimSet::from_mask(full_mask(n))});
  ExactCoverSearch search(n, m, k, opt.node_budget);
  const std::uint64_t naive = binom_small(n, k);
  for (std::uint64_t target = std::max<std::uint64_t>(1, search.initial_bound()); target <= naive; ++target) {
    if (auto found = search.search(target)) {
      std::vector<DimSet> handles;
      for (auto mask : *found) handles.push_back(DimSet::from_mask(mask));
      return CoverDesign(n, m, k, std::move(handles));
    }
  }
  throw BudgetError("exact search found no cover within binom(n,k) handles");  // unreachable
}

}  // namespace detail

/// A minimum-size cover design for (n, m, k), found by exhaustive search.
/// Deterministic: candidates are explored in lexicographic order. Results
/// (and budget failures) are memoized per process.
inline CoverDesign exact_small_cover(int n, int m, int k, const ExactSearchOptions& opt = {}) {
  if (!(1 <= k && k < m && m <= n && n <= kMaxDims)) {
    throw DomainError("exact cover needs 1 <= k < m <= n <= 64");
  }
  if (binom_small(n, m) > kCandidateHandleBudget) {
    throw BudgetError("binom(" + std::to_string(n) + "," + std::to_string(m) +
                      ") candidate handles exceed the budget of 10^6");
  }

  using Key = std::tuple<int, int, int>;
  static std::mutex mu;
  static std::map<Key, CoverDesign> solved;
  static std::map<Key, std::uint64_t> failed_budget;  // largest budget known to fail
  const Key key{n, m, k};
  {
    std::lock_guard lock(mu);
    if (auto it = solved.find(key); it != solved.end()) return it->second;
    if (auto it = failed_budget.find(key); it != failed_budget.end() && opt.node_budget <= it->second) {
      throw BudgetError("exact search for C(" + std::to_string(n) + "," + std::to_string(m) + "," +
                        std::to_string(k) + ") exceeded " + std::to_string(opt.node_budget) + " nodes");
    }
  }
  try {
    auto design = detail::exact_small_cover_uncached(n, m, k, opt);
    std::lock_guard lock(mu);
    solved.emplace(key, design);
    return design;
  } catch (const BudgetError&) {
    std::lock_guard lock(mu);
    auto& b = failed_budget[key];
    b = std::max(b, opt.node_budget);
    throw;
  }
}

}  // namespace margcover
