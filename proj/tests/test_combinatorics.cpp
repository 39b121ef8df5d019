#include <set>

#include "support.hpp"

using namespace margcover;
using testsupport::pascal_binom;

TEST(Binomial, ExactMatchesPascalTable) {
  for (int n = 0; n <= 62; ++n)
    for (int k = 0; k <= n; ++k) {
      ASSERT_EQ(to_u64(binom_exact(n, k)), pascal_binom(n, k)) << n << " " << k;
      ASSERT_EQ(binom_small(n, k), pascal_binom(n, k));
    }
}

TEST(Binomial, OutOfRangeIsZero) {
  EXPECT_EQ(binom_exact(5, 6), 0);
  EXPECT_EQ(binom_exact(5, -1), 0);
  EXPECT_EQ(binom_small(3, 4), 0u);
}

TEST(Binomial, LargeValuesStayExact) {
  // binom(100, 50) = 100891344545564193334812497256
  EXPECT_EQ(binom_exact(100, 50).str(), "100891344545564193334812497256");
  EXPECT_THROW(to_u64(binom_exact(100, 50)), ArithmeticError);
}

TEST(Binomial, CeilDivision) {
  EXPECT_EQ(ceil_div(BigInt(21), BigInt(3)), 7);
  EXPECT_EQ(ceil_div(BigInt(22), BigInt(3)), 8);
  EXPECT_EQ(ceil_div(BigInt(0), BigInt(3)), 0);
}

TEST(DimSetTest, ValidatesIndices) {
  EXPECT_THROW(DimSet(std::vector<int>{}), ValidationError);
  EXPECT_THROW(DimSet({2, 1}), ValidationError);
  EXPECT_THROW(DimSet({1, 1}), ValidationError);
  EXPECT_THROW(DimSet({-1}), ValidationError);
  EXPECT_THROW(DimSet({64}), ValidationError);
  EXPECT_NO_THROW(DimSet({0, 63}));
}

TEST(DimSetTest, MaskRoundTripAndContainment) {
  const DimSet a{0, 2, 5};
  EXPECT_EQ(a.mask(), 0b100101u);
  EXPECT_EQ(DimSet::from_mask(a.mask()), a);
  EXPECT_TRUE(a.contains(DimSet{2, 5}));
  EXPECT_FALSE(a.contains(DimSet{1}));
  EXPECT_EQ(a.str(), "{0,2,5}");
  EXPECT_LT(DimSet({0, 1}), DimSet({0, 2}));
}

TEST(Combinations, LexOrderAndCount) {
  std::vector<std::vector<int>> seen;
  for_each_combination(5, 3, [&](const std::vector<int>& c) { seen.push_back(c); });
  ASSERT_EQ(seen.size(), 10u);
  EXPECT_EQ(seen.front(), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(seen.back(), (std::vector<int>{2, 3, 4}));
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
}

TEST(Combinations, ColexRankIsABijection) {
  for (int n = 1; n <= 12; ++n)
    for (int k = 1; k <= n; ++k) {
      std::set<std::uint64_t> ranks;
      for_each_combination(n, k, [&](const std::vector<int>& c) {
        const auto r = colex_rank(c);
        EXPECT_LT(r, binom_small(n, k));
        DimMask m = 0;
        for (int i : c) m |= DimMask{1} << i;
        EXPECT_EQ(colex_rank(m), r);
        ranks.insert(r);
      });
      EXPECT_EQ(ranks.size(), binom_small(n, k));
    }
}

TEST(Combinations, SubmasksMatchFilteredEnumeration) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const DimMask mask = rng() & full_mask(testsupport::draw(rng, 1, 20));
    const int k = testsupport::draw(rng, 0, 6);
    std::vector<DimMask> got;
    for_each_submask(mask, k, [&](DimMask s) { got.push_back(s); });
    std::vector<DimMask> expected;
    for (DimMask s = mask;; s = (s - 1) & mask) {
      if (std::popcount(s) == k) expected.push_back(s);
      if (s == 0) break;
    }
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(got, expected);
  }
}
