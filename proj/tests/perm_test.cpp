#include <gtest/gtest.h>

#include <random>

#include <nilcover/perm.hpp>

#include "test_util.hpp"

using namespace nilcover;
using nilcover::testing::cyc;

TEST(Compose, InvolutionSquaredIsIdentity)
{
  auto t = cyc(3, {{0, 1}});
  EXPECT_TRUE((t * t).is_identity());
}

TEST(Compose, ThreeCycleSquared)
{
  auto c = cyc(3, {{0, 1, 2}});
  EXPECT_EQ(c * c, cyc(3, {{0, 2, 1}}));
}

TEST(Compose, ActsLeftToRight)
{
  // 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1
  EXPECT_EQ(cyc(3, {{0, 1}}) * cyc(3, {{1, 2}}), cyc(3, {{0, 2, 1}}));
}

TEST(Compose, DegreeMismatchThrows)
{
  EXPECT_THROW(compose(Permutation(3), Permutation(4)), DegreeMismatch);
}

TEST(Permutation, RejectsNonBijection)
{
  EXPECT_THROW(Permutation::from_images({0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(Permutation::from_images({0, 3, 1}), std::invalid_argument);
  EXPECT_THROW(Permutation(kMaxDegree + 1), DegreeLimitExceeded);
}

TEST(CycleType, Examples)
{
  EXPECT_EQ(cycle_type(Permutation(5)).to_string(), "1^5");
  EXPECT_EQ(cycle_type(cyc(9, {{0, 1, 2, 3}, {4, 5, 6, 7}})).to_string(), "4^2 1^1");
  EXPECT_EQ(cycle_type(cyc(6, {{1, 2}, {3, 4, 5}})).to_string(), "3^1 2^1 1^1");
}

TEST(CycleType, ParseAndCanonicalOrder)
{
  auto r = CycleType::parse("2^2,3^2,4^3,6,8,16");
  EXPECT_EQ(r.total(), 52u);
  EXPECT_EQ(r.to_string(), "16^1 8^1 6^1 4^3 3^2 2^2");
  EXPECT_EQ(CycleType::parse("1 1 1"), CycleType({1, 1, 1}));
  EXPECT_THROW(CycleType::parse("2^0"), std::invalid_argument);
  EXPECT_THROW(CycleType::parse("x"), std::invalid_argument);
  EXPECT_THROW(CycleType::parse(""), std::invalid_argument);
}

TEST(ElementOrder, Examples)
{
  EXPECT_EQ(element_order(cyc(3, {{0, 1, 2}})), 3u);
  EXPECT_EQ(element_order(cyc(9, {{0, 1, 2, 3}, {4, 5, 6, 7}})), 4u);
  EXPECT_EQ(element_order(cyc(6, {{1, 2}, {3, 4, 5}})), 6u);
}

TEST(Orbits, Examples)
{
  std::vector<Permutation> five{cyc(5, {{0, 1, 2, 3, 4}})};
  auto o = orbits(five, 5);
  ASSERT_EQ(o.size(), 1u);
  EXPECT_EQ(o[0].size(), 5u);

  auto trivial = orbits({}, 3);
  EXPECT_EQ(trivial, (std::vector<std::vector<Point>>{{0}, {1}, {2}}));
}

TEST(Rank, RoundTripsAndOrders)
{
  for (std::uint64_t r = 0; r < 120; ++r) EXPECT_EQ(rank(unrank(5, r)), r);
  EXPECT_TRUE(unrank(5, 0).is_identity());
  EXPECT_LT(unrank(5, 3), unrank(5, 4));
}

TEST(Properties, InverseAndConjugationInvariance)
{
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng() % 9;
    auto p = nilcover::testing::random_permutation(n, rng);
    auto h = nilcover::testing::random_permutation(n, rng);
    EXPECT_TRUE((p * p.inverse()).is_identity());
    EXPECT_EQ(cycle_type(conjugate(p, h)), cycle_type(p));
    EXPECT_EQ(conjugate(p, h), h.inverse() * p * h);
    EXPECT_EQ(power(p, static_cast<long long>(element_order(p))), Permutation(n));
    EXPECT_EQ(power(p, -1), p.inverse());
    EXPECT_EQ(cycle_type(p).total(), n);
  }
}
