#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "margcover/errors.hpp"

namespace margcover {

using BigInt = boost::multiprecision::cpp_int;

/// Dimensions are addressed through 64-bit masks internally.
inline constexpr int kMaxDims = 64;

using DimMask = std::uint64_t;

/// Exact binomial coefficient. Zero when k < 0 or k > n.
inline BigInt binom_exact(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

inline std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw ArithmeticError("integer " + v.str() + " does not fit in 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (q * b != a) ++q;
  return q;
}

namespace detail {

// Pascal table for n <= 64; every entry fits in 64 bits.
inline const std::array<std::array<std::uint64_t, kMaxDims + 1>, kMaxDims + 1>& pascal() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kMaxDims + 1>, kMaxDims + 1> t{};
    for (int n = 0; n <= kMaxDims; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

}  // namespace detail

/// binom(n, k) for 0 <= n <= 64.
inline std::uint64_t binom_small(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  return detail::pascal()[n][k];
}

/// Sorted, duplicate-free, nonempty list of 0-based dimension indices.
/// Stands for both a marginal's aggregated dimensions and a handle.
class DimSet {
 public:
  DimSet() = default;

  explicit DimSet(std::vector<int> indices) : indices_(std::move(indices)) { validate(); }
  DimSet(std::initializer_list<int> indices) : indices_(indices) { validate(); }

  static DimSet from_mask(DimMask mask) {
    std::vector<int> idx;
    idx.reserve(std::popcount(mask));
    while (mask != 0) {
      idx.push_back(std::countr_zero(mask));
      mask &= mask - 1;
    }
    return DimSet(std::move(idx));
  }

  [[nodiscard]] std::span<const int> indices() const { return indices_; }
  [[nodiscard]] std::size_t size() const { return indices_.size(); }
  [[nodiscard]] int operator[](std::size_t i) const { return indices_[i]; }
  [[nodiscard]] int max() const { return indices_.back(); }
  [[nodiscard]] auto begin() const { return indices_.begin(); }
  [[nodiscard]] auto end() const { return indices_.end(); }

  [[nodiscard]] DimMask mask() const {
    DimMask m = 0;
    for (int i : indices_) m |= DimMask{1} << i;
    return m;
  }

  [[nodiscard]] bool contains(const DimSet& other) const {
    return std::includes(indices_.begin(), indices_.end(), other.indices_.begin(),
                         other.indices_.end());
  }

  [[nodiscard]] std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(indices_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const DimSet&, const DimSet&) = default;
  friend auto operator<=>(const DimSet& a, const DimSet& b) { return a.indices_ <=> b.indices_; }

 private:
  void validate() const {
    if (indices_.empty()) throw ValidationError("dimension set must be nonempty");
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      if (indices_[i] < 0 || indices_[i] >= kMaxDims) {
        throw ValidationError("dimension index " + std::to_string(indices_[i]) +
                              " outside [0," + std::to_string(kMaxDims) + ")");
      }
      if (i > 0 && indices_[i] <= indices_[i - 1]) {
        throw ValidationError("dimension indices must be strictly increasing");
      }
    }
  }

  std::vector<int> indices_;
};

/// Colex rank of a sorted k-subset: sum of binom(s_i, i+1).
inline std::uint64_t colex_rank(std::span<const int> sorted) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) r += binom_small(sorted[i], static_cast<int>(i) + 1);
  return r;
}

inline std::uint64_t colex_rank(DimMask mask) {
  std::uint64_t r = 0;
  int i = 0;
  while (mask != 0) {
    r += binom_small(std::countr_zero(mask), ++i);
    mask &= mask - 1;
  }
  return r;
}

/// Advances `c` (strictly increasing, values < n) to the next combination in
/// lexicographic order. Returns false after the last one.
inline bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

/// Calls f(const std::vector<int>&) for every k-subset of [0, n) in
/// lexicographic order. k == 0 yields the empty set once.
template <typename F>
void for_each_combination(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  do {
    f(static_cast<const std::vector<int>&>(c));
  } while (k > 0 && next_combination(c, n));
}

/// Calls f(DimMask) for every k-element submask of `mask`, in lexicographic
/// order of the submask's sorted indices.
template <typename F>
void for_each_submask(DimMask mask, int k, F&& f) {
  std::array<DimMask, kMaxDims> bits{};
  int size = 0;
  for (DimMask m = mask; m != 0; m &= m - 1) bits[size++] = m & (~m + 1);
  if (k < 0 || k > size) return;
  std::array<int, kMaxDims + 1> c{};
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    DimMask sub = 0;
    for (int i = 0; i < k; ++i) sub |= bits[c[i]];
    f(sub);
    int i = k - 1;
    while (i >= 0 && c[i] == size - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

inline DimMask full_mask(int n) { return n >= 64 ? ~DimMask{0} : ((DimMask{1} << n) - 1); }

}  // namespace margcover
