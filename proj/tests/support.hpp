#pragma once

// Shared test helpers: an independent coverage oracle and seeded generators.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "margcover/margcover.hpp"

namespace testsupport {

// Coverage check that shares no code with verify_cover: every k-subset,
// built by recursive enumeration, must be a subset of some handle.
inline bool oracle_covers(const margcover::CoverDesign& d) {
  std::vector<std::set<int>> handles;
  for (const auto& h : d.handles()) handles.emplace_back(h.begin(), h.end());
  std::vector<int> cur;
  bool ok = true;
  auto rec = [&](auto&& self, int start) -> void {
    if (!ok) return;
    if (static_cast<int>(cur.size()) == d.k()) {
      bool found = false;
      for (const auto& h : handles) {
        bool all = true;
        for (int x : cur) all = all && h.count(x) > 0;
        if (all) {
          found = true;
          break;
        }
      }
      ok = found;
      return;
    }
    for (int i = start; i < d.n(); ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return ok;
}

// Plain Pascal-recursion binomial for cross-checks.
inline std::uint64_t pascal_binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::uint64_t> row(n + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

// Uniform integer in [lo, hi] from a seeded engine.
inline int draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(margcover::detail::uniform_upto(rng, static_cast<std::uint64_t>(hi - lo)));
}

// Every produced design must be valid (two independent checks) and at least
// the covering lower bound.
inline void expect_sound(const margcover::CoverDesign& d) {
  const auto report = margcover::verify_cover(d);
  EXPECT_TRUE(report.valid) << "first uncovered: " << (report.uncovered.empty() ? "" : report.uncovered[0].str());
  if (d.n() <= 16) {
    EXPECT_TRUE(oracle_covers(d));
  }
  if (d.m() && *d.m() >= d.k()) {
    EXPECT_GE(margcover::BigInt(d.handle_count()), margcover::covering_lower_bound(d.n(), *d.m(), d.k()));
  }
}

// The seven handles ABC, ADE, AFG, BDF, BEG, CDG, CEF with A..G as 0..6.
inline std::vector<margcover::DimSet> fano_handles() {
  return {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
}

}  // namespace testsupport
