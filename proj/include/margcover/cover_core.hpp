#pragma once

// Marginals as k-subsets of the dimensions, handles as larger subsets, and
// cover designs: collections of handles such that every k-subset sits inside
// at least one handle. Dimension i corresponds to the letter 'A' + i when
// reading the classic lettered examples.

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "margcover/combinatorics.hpp"
#include "margcover/errors.hpp"

namespace margcover {

/// Limit on binom(n, k) for anything that enumerates every marginal.
inline constexpr std::uint64_t kMarginalEnumerationBudget = 100'000'000;

/// A witness for an upper bound on the covering number C(n, m, k).
///
/// `m` is empty for designs whose handles have varying sizes (produced by the
/// weighted methods); otherwise every handle has exactly m dimensions. The
/// degenerate m == k is accepted so the one-reducer-per-marginal baseline is
/// representable.
class CoverDesign {
 public:
  CoverDesign(int n, std::optional<int> m, int k, std::vector<DimSet> handles)
      : n_(n), m_(m), k_(k), handles_(std::move(handles)) {
    validate();
  }

  /// Drops repeated handles (first occurrence wins) before validating.
  static CoverDesign deduplicated(int n, std::optional<int> m, int k, std::vector<DimSet> handles) {
    std::set<DimSet> seen;
    std::vector<DimSet> unique;
    unique.reserve(handles.size());
    for (auto& h : handles) {
      if (seen.insert(h).second) unique.push_back(std::move(h));
    }
    return CoverDesign(n, m, k, std::move(unique));
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] std::optional<int> m() const { return m_; }
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] const std::vector<DimSet>& handles() const { return handles_; }
  [[nodiscard]] std::size_t handle_count() const { return handles_.size(); }

  friend bool operator==(const CoverDesign&, const CoverDesign&) = default;

 private:
  void validate() const {
    if (n_ < 1 || n_ > kMaxDims) {
      throw ValidationError("n must lie in [1," + std::to_string(kMaxDims) + "], got " +
                            std::to_string(n_));
    }
    if (k_ < 1 || k_ > n_) throw ValidationError("k must lie in [1,n], got " + std::to_string(k_));
    if (m_ && (*m_ < k_ || *m_ > n_)) {
      throw ValidationError("need k <= m <= n, got n=" + std::to_string(n_) + " m=" +
                            std::to_string(*m_) + " k=" + std::to_string(k_));
    }
    std::set<DimSet> seen;
    for (const auto& h : handles_) {
      if (h.size() == 0) throw ValidationError("empty handle");
      if (m_ && static_cast<int>(h.size()) != *m_) {
        throw ValidationError("handle " + h.str() + " has " + std::to_string(h.size()) +
                              " dimensions, expected " + std::to_string(*m_));
      }
      if (h.max() >= n_) {
        throw ValidationError("handle " + h.str() + " uses a dimension >= n=" + std::to_string(n_));
      }
      if (!seen.insert(h).second) throw ValidationError("duplicate handle " + h.str());
    }
  }

  int n_;
  std::optional<int> m_;
  int k_;
  std::vector<DimSet> handles_;
};

struct CoverReport {
  bool valid = false;
  std::vector<DimSet> uncovered;  // lexicographic order
  std::size_t handle_count = 0;
};

namespace detail {

// covered[colex_rank(s)] is true iff k-subset s lies inside some handle.
inline std::vector<bool> coverage_marks(const CoverDesign& design) {
  const std::uint64_t total = binom_small(design.n(), design.k());
  if (total > kMarginalEnumerationBudget) {
    throw BudgetError("binom(" + std::to_string(design.n()) + "," + std::to_string(design.k()) +
                      ") marginals exceed the enumeration budget");
  }
  std::vector<bool> covered(total, false);
  for (const auto& h : design.handles()) {
    for_each_submask(h.mask(), design.k(), [&](DimMask s) { covered[colex_rank(s)] = true; });
  }
  return covered;
}

}  // namespace detail

/// Exhaustively checks that every k-subset of [0, n) lies inside a handle.
inline CoverReport verify_cover(const CoverDesign& design) {
  const auto covered = detail::coverage_marks(design);
  CoverReport report;
  report.handle_count = design.handle_count();
  for_each_combination(design.n(), design.k(), [&](const std::vector<int>& c) {
    if (!covered[colex_rank(c)]) report.uncovered.emplace_back(c);
  });
  report.valid = report.uncovered.empty();
  return report;
}

/// One handle per marginal: all binom(n, k) k-subsets, m = k.
inline CoverDesign naive_cover(int n, int k) {
  if (n < 1 || n > kMaxDims) throw DomainError("naive cover needs 1 <= n <= 64");
  if (k < 1 || k > n) throw DomainError("naive cover needs 1 <= k <= n");
  if (binom_small(n, k) > kMarginalEnumerationBudget) throw BudgetError("naive cover too large");
  std::vector<DimSet> handles;
  for_each_combination(n, k, [&](const std::vector<int>& c) { handles.emplace_back(c); });
  return CoverDesign(n, k, k, std::move(handles));
}

/// ceil(binom(n,k) / binom(m,k)), exactly.
inline BigInt covering_lower_bound(int n, int m, int k) {
  if (!(1 <= k && k <= m && m <= n)) throw DomainError("covering bound needs 1 <= k <= m <= n");
  return ceil_div(binom_exact(n, k), binom_exact(m, k));
}

/// Probabilistic-method upper bound 2 ln(binom(n,k)) * binom(n,k)/binom(m,k).
inline double prob_upper_bound(int n, int m, int k) {
  if (!(1 <= k && k < m && m <= n)) throw DomainError("probabilistic bound needs 1 <= k < m <= n");
  const double total = to_double(binom_exact(n, k));
  return 2.0 * std::log(total) * total / to_double(binom_exact(m, k));
}

/// Known optimal C(n, 3, 2) for 3 <= n <= 13.
inline int exact_C32(int n) {
  static constexpr int kTable[] = {1, 3, 4, 6, 7, 11, 12, 17, 19, 24, 26};
  if (n < 3 || n > 13) throw DomainError("exact C(n,3,2) table covers 3 <= n <= 13");
  return kTable[n - 3];
}

}  // namespace margcover
