#include "support.hpp"

using namespace margcover;
using testsupport::expect_sound;

namespace {
std::vector<DimSet> sets(std::initializer_list<std::initializer_list<int>> xs) {
  std::vector<DimSet> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}
}  // namespace

TEST(FirstOrder, Examples) {
  const auto d = cover_first_order(7, 2);
  EXPECT_EQ(d.handles(), sets({{0, 1}, {2, 3}, {4, 5}, {5, 6}}));
  EXPECT_EQ(cover_first_order(4, 4).handle_count(), 1u);
  EXPECT_EQ(cover_first_order(9, 3).handle_count(), 3u);
  for (int n = 1; n <= 20; ++n)
    for (int m = 1; m <= n; ++m) {
      const auto c = cover_first_order(n, m);
      EXPECT_EQ(static_cast<int>(c.handle_count()), (n + m - 1) / m);
      expect_sound(c);
    }
}

TEST(Triple32, SizesAreExactForPowersOfThree) {
  for (int n : {3, 9, 27}) {
    const auto d = cover_32_triple(n);
    EXPECT_EQ(static_cast<int>(d.handle_count()), (n * n - n) / 6) << n;
    expect_sound(d);
  }
  EXPECT_EQ(cover_32_triple(27).handle_count(), 117u);
  EXPECT_THROW(cover_32_triple(10), DomainError);
}

TEST(Triple32, NineHasNineCrossHandlesAndThreeGroupHandles) {
  const auto d = cover_32_triple(9);
  ASSERT_EQ(d.handle_count(), 12u);
  int cross = 0;
  for (const auto& h : d.handles()) {
    std::set<int> groups;
    for (int x : h) groups.insert(x / 3);
    cross += groups.size() == 3;
  }
  EXPECT_EQ(cross, 9);
}

TEST(Slow32, Examples) {
  EXPECT_EQ(cover_32_slow(6, false).handle_count(), 7u);
  EXPECT_EQ(cover_32_slow(3).handle_count(), 1u);
  EXPECT_EQ(cover_32_slow(7).handle_count(), 9u);
  expect_sound(cover_32_slow(6, false));
  EXPECT_THROW(cover_32_slow(2), DomainError);
}

TEST(Slow32, QuadraticBounds) {
  for (int n = 3; n <= 15; n += 2) {
    const auto d = cover_32_slow(n);
    expect_sound(d);
    EXPECT_LE(4 * static_cast<int>(d.handle_count()), n * n - 2 * n + 1) << n;
  }
  for (int n = 6; n <= 16; n += 2) {
    const auto d = cover_32_slow(n);
    expect_sound(d);
    EXPECT_LE(4 * static_cast<int>(d.handle_count()), n * n - 2 * n) << n;
  }
}

TEST(Hybrid32, ChainTargets) {
  const auto d29 = cover_32_hybrid(29);
  const auto d31 = cover_32_hybrid(31);
  EXPECT_LE(d29.handle_count(), 143u);
  EXPECT_LE(d31.handle_count(), 172u);
  expect_sound(d29);
  expect_sound(d31);
  EXPECT_EQ(cover_32_hybrid(9).handle_count(), 12u);
}

TEST(Hybrid32, PlanMatchesOutputAndBeatsSimplerRoutes) {
  for (int n = 3; n <= 40; ++n) {
    const auto d = cover_32_hybrid(n);
    expect_sound(d);
    EXPECT_EQ(d.handle_count(), hybrid32_planned_count(n)) << n;
    EXPECT_LE(d.handle_count(), cover_32_slow(n).handle_count()) << n;
    if (n <= 13) {
      EXPECT_EQ(static_cast<int>(d.handle_count()), exact_C32(n));
    }
  }
}

TEST(Block2m, Examples) {
  const auto d = cover_2m_block(9, 4);
  EXPECT_EQ(d.handle_count(), 9u);
  expect_sound(d);
  EXPECT_EQ(cover_2m_block(4, 4).handle_count(), 1u);
  // Group {0,1,2} with each of 3..6, then one handle for {3,4,5,6}.
  const auto seven = cover_2m_block(7, 4);
  EXPECT_EQ(seven.handle_count(), 5u);
  expect_sound(seven);
  EXPECT_EQ(seven.handle_count(), exact_small_cover(7, 4, 2).handle_count());
  EXPECT_THROW(cover_2m_block(5, 2), DomainError);
}

TEST(Block2m, FirstSixHandlesShareTheLeadingGroup) {
  const auto d = cover_2m_block(9, 4);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(d.handles()[i].contains(DimSet{0, 1, 2})) << i;
}

TEST(Doubling2m, EightFourMatchesTheWorkedDesign) {
  const auto d = cover_2m_doubling(8, 4);
  EXPECT_EQ(d.handles(), sets({{0, 1, 4, 5}, {0, 1, 6, 7}, {2, 3, 4, 5}, {2, 3, 6, 7}, {0, 1, 2, 3}, {4, 5, 6, 7}}));
  expect_sound(d);
}

TEST(Doubling2m, CountsFollowTheRecurrence) {
  // C(2N) = 4(N/m)^2 + 2C(N), C(m) = 1 gives 2N^2/m^2 - N/m, which never
  // exceeds 2N^2/m^2 - 1.
  for (int m : {2, 4, 6, 8}) {
    for (int n = m; n <= 64; n *= 2) {
      const auto d = cover_2m_doubling(n, m);
      expect_sound(d);
      const int r = n / m;
      EXPECT_EQ(static_cast<int>(d.handle_count()), 2 * r * r - r) << n << "," << m;
      EXPECT_LE(static_cast<int>(d.handle_count()), 2 * r * r - 1);
    }
  }
  EXPECT_EQ(cover_2m_doubling(4, 4).handle_count(), 1u);
  EXPECT_EQ(cover_2m_doubling(16, 4).handle_count(), 28u);
  EXPECT_THROW(cover_2m_doubling(12, 4), DomainError);
  EXPECT_THROW(cover_2m_doubling(9, 3), DomainError);
}

TEST(General, Examples) {
  EXPECT_EQ(cover_general(7, 3, 2).handle_count(), 9u);
  EXPECT_EQ(cover_general(5, 4, 3).handle_count(), 4u);
  EXPECT_EQ(exact_small_cover(5, 4, 3).handle_count(), 4u);
  for (int m = 2; m <= 6; ++m)
    for (int k = 1; k < m; ++k) EXPECT_EQ(cover_general(m, m, k).handle_count(), 1u);
  EXPECT_THROW(cover_general(5, 3, 3), DomainError);
}

TEST(General, ValidEverywhereAndBoundedOnProgression) {
  for (int n = 1; n <= 12; ++n)
    for (int m = 2; m <= std::min(5, n); ++m)
      for (int k = 1; k < m; ++k) {
        const auto d = cover_general(n, m, k);
        expect_sound(d);
        if (k >= 2 && (n - 1) % (m - k + 1) == 0) {
          EXPECT_LE(BigInt(d.handle_count()) * (m - k + 1), binom_exact(n, k)) << n << "," << m << "," << k;
        }
      }
}

// With k = 1 and n = 1 + jm, any cover needs ceil(n/m) = j + 1 > n/m
// handles, so binom(n,1)/m is out of reach; the recursion hits the optimum.
TEST(General, SingletonsReachTheOptimum) {
  for (int m = 2; m <= 5; ++m)
    for (int n = m; n <= 30; ++n) {
      const auto d = cover_general(n, m, 1);
      expect_sound(d);
      EXPECT_EQ(static_cast<int>(d.handle_count()), (n + m - 1) / m) << n << "," << m;
      if ((n - 1) % m == 0) {
        EXPECT_GT(d.handle_count() * m, static_cast<std::size_t>(n));
      }
    }
}

TEST(Quad43, SizesAndValidity) {
  EXPECT_EQ(cover_43_quad(4).handle_count(), 1u);
  EXPECT_EQ(cover_43_quad(8).handle_count(), 14u);
  for (int n : {4, 8, 16, 32}) {
    const auto d = cover_43_quad(n);
    expect_sound(d);
    EXPECT_LE(16 * d.handle_count(), static_cast<std::size_t>(n) * n * n) << n;
  }
  EXPECT_THROW(cover_43_quad(12), DomainError);
}

TEST(Greedy, Examples) {
  const auto d = cover_greedy(7, 3, 2);
  expect_sound(d);
  EXPECT_LE(d.handle_count(), 11u);
  EXPECT_EQ(cover_greedy(4, 4, 2).handle_count(), 1u);
  const auto six = cover_greedy(6, 4, 2);
  expect_sound(six);
  EXPECT_GE(six.handle_count(), 3u);
  EXPECT_THROW(cover_greedy(40, 20, 2), BudgetError);
}

TEST(Greedy, WithinHarmonicFactorOfOptimum) {
  for (int n = 5; n <= 9; ++n)
    for (int m = 3; m <= 4; ++m) {
      const auto d = cover_greedy(n, m, 2);
      expect_sound(d);
      double h = 0;
      for (std::uint64_t i = 1; i <= binom_small(m, 2); ++i) h += 1.0 / static_cast<double>(i);
      const auto opt = exact_small_cover(n, m, 2).handle_count();
      EXPECT_LE(static_cast<double>(d.handle_count()), h * static_cast<double>(opt) + 1e-9);
    }
}

TEST(Random, ValidDeterministicAndBounded) {
  const auto a = cover_random(7, 3, 2, 1);
  expect_sound(a);
  EXPECT_LE(a.handle_count(), 43u + 21u);
  EXPECT_EQ(a, cover_random(7, 3, 2, 1));
  const auto tiny = cover_random(3, 3, 2, 99);
  expect_sound(tiny);
  EXPECT_GE(tiny.handle_count(), 1u);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const int n = testsupport::draw(rng, 3, 14);
    const int m = testsupport::draw(rng, 2, std::min(6, n));
    const int k = testsupport::draw(rng, 1, m - 1);
    const std::uint64_t seed = rng();
    const auto d = cover_random(n, m, k, seed);
    expect_sound(d);
    EXPECT_EQ(d, cover_random(n, m, k, seed));
  }
}

TEST(BestCover, PicksTheKnownWinners) {
  auto b = best_cover(9, 3, 2);
  EXPECT_EQ(b.design.handle_count(), 12u);
  EXPECT_TRUE(b.method == ConstructionMethod::triple32 || b.method == ConstructionMethod::exact_small);
  b = best_cover(8, 4, 2);
  EXPECT_EQ(b.design.handle_count(), 6u);
  EXPECT_EQ(b.method, ConstructionMethod::doubling2m);
  b = best_cover(7, 3, 2);
  EXPECT_EQ(b.design.handle_count(), 7u);
  EXPECT_EQ(b.method, ConstructionMethod::exact_small);
}

TEST(BestCover, NeverWorseThanAnyApplicableConstruction) {
  for (int n = 4; n <= 16; ++n)
    for (int m = 3; m <= std::min(5, n); ++m)
      for (int k = 2; k < m; ++k) {
        const auto b = best_cover(n, m, k);
        expect_sound(b.design);
        EXPECT_LE(b.design.handle_count(), cover_general(n, m, k).handle_count());
        EXPECT_LE(b.design.handle_count(), cover_greedy(n, m, k).handle_count());
      }
}

TEST(Construct, DispatchAndErrorsNameTheMethod) {
  EXPECT_EQ(construct(ConstructionMethod::triple32, 9, 3, 2).design.handle_count(), 12u);
  EXPECT_EQ(construct(ConstructionMethod::automatic, 5, 2, 2).method, ConstructionMethod::naive);
  try {
    construct(ConstructionMethod::quad43, 8, 4, 2);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("quad43"), std::string::npos);
  }
  EXPECT_EQ(method_from_string("exact"), ConstructionMethod::exact_small);
  EXPECT_EQ(method_from_string("exact_small"), ConstructionMethod::exact_small);
  EXPECT_EQ(method_from_string("auto"), ConstructionMethod::automatic);
  EXPECT_THROW(method_from_string("bogus"), ValidationError);
}

// Every construction over a seeded grid of parameters it accepts.
TEST(Property, EveryConstructionIsSoundOnRandomGrid) {
  std::mt19937_64 rng(20150601);
  auto pick = [&](std::initializer_list<int> xs) { return *(xs.begin() + testsupport::draw(rng, 0, static_cast<int>(xs.size()) - 1)); };
  for (int t = 0; t < 60; ++t) {
    const int n = testsupport::draw(rng, 3, 30);
    expect_sound(cover_32_slow(n));
    expect_sound(cover_32_hybrid(n));
    const int m = testsupport::draw(rng, 3, std::min(8, n));
    expect_sound(cover_2m_block(n, m));
    expect_sound(cover_first_order(n, m));
    const int k = testsupport::draw(rng, 1, std::min(m - 1, 3));
    expect_sound(cover_general(n, m, k));
    if (binom_small(n, m) <= 200'000 && binom_small(n, k) <= 5'000) {
      expect_sound(cover_greedy(n, m, k));
      expect_sound(cover_random(n, m, k, rng()));
    }
    const int dm = pick({2, 4, 6});
    expect_sound(cover_2m_doubling(dm << testsupport::draw(rng, 0, 3), dm));
    expect_sound(cover_43_quad(pick({4, 8, 16})));
    expect_sound(cover_32_triple(pick({3, 9, 27})));
  }
}
