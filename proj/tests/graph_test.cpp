#include <gtest/gtest.h>

#include <random>

#include <nilcover/graph.hpp>

using namespace nilcover;

namespace {

NilpotencyGraph random_graph(std::size_t n, double p, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  NilpotencyGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

// independence number by trying every subset
std::size_t brute_alpha(const NilpotencyGraph& g)
{
  const std::size_t n = g.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      if (mask >> i & 1)
        for (std::size_t j = i + 1; j < n && ok; ++j)
          if ((mask >> j & 1) && g.adjacent(i, j)) ok = false;
    if (ok) best = std::max<std::size_t>(best, std::popcount(mask));
  }
  return best;
}

NilpotencyGraph petersen()
{
  NilpotencyGraph g(10);
  for (std::size_t i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(i + 5, (i + 2) % 5 + 5);
  }
  return g;
}

} // namespace

TEST(Bitset, Basics)
{
  Bitset a(130);
  a.set(0);
  a.set(64);
  a.set(129);
  EXPECT_EQ(a.count(), 3u);
  EXPECT_TRUE(a.test(129));
  EXPECT_FALSE(a.test(128));
  Bitset b = Bitset::full(130);
  EXPECT_EQ(b.count(), 130u);
  EXPECT_TRUE(a.subset_of(b));
  EXPECT_FALSE(b.subset_of(a));
  EXPECT_EQ(a.count_and(b), 3u);
  b.subtract(a);
  EXPECT_EQ(b.count(), 127u);
  EXPECT_EQ(a.indices(), (std::vector<std::size_t>{0, 64, 129}));
  a.reset(64);
  EXPECT_EQ(a.count(), 2u);
}

TEST(NilpotencyGraph, BuildIsThreadIndependent)
{
  auto edge = [](std::size_t i, std::size_t j) { return (i * 7 + j * 3) % 5 == 0; };
  ResourceLimits one;
  ResourceLimits four;
  four.threads = 4;
  auto a = NilpotencyGraph::build(90, edge, one);
  auto b = NilpotencyGraph::build(90, edge, four);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.neighbours(i), b.neighbours(i));
  EXPECT_TRUE(a.symmetric_and_loopless());
}

TEST(MaxIndependentSet, KnownGraphs)
{
  NilpotencyGraph c5(5);
  for (std::size_t i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
  EXPECT_EQ(max_independent_set(c5).size(), 2u);

  auto p = max_independent_set(petersen());
  EXPECT_EQ(p.size(), 4u);
  EXPECT_TRUE(p.exact);
  EXPECT_TRUE(petersen().is_independent(p.witness));

  NilpotencyGraph empty(6);
  EXPECT_EQ(max_independent_set(empty).size(), 6u);
}

TEST(MaxIndependentSet, MatchesBruteForce)
{
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 6 + seed % 11;
    const double p = 0.15 + 0.1 * static_cast<double>(seed % 6);
    auto g = random_graph(n, p, seed);
    auto r = max_independent_set(g);
    ASSERT_TRUE(r.exact);
    EXPECT_TRUE(g.is_independent(r.witness)) << "seed " << seed;
    EXPECT_EQ(r.size(), brute_alpha(g)) << "seed " << seed;
    EXPECT_EQ(r.upper_bound, r.size());
  }
}

TEST(MaxIndependentSet, NodeBudgetGivesInexactBounds)
{
  auto g = random_graph(60, 0.3, 7);
  ResourceLimits tight;
  tight.max_search_nodes = 5;
  auto r = max_independent_set(g, tight);
  EXPECT_FALSE(r.exact);
  EXPECT_TRUE(g.is_independent(r.witness));
  EXPECT_GE(r.upper_bound, r.size());
  auto full = max_independent_set(g);
  EXPECT_GE(r.upper_bound, full.size());
}

TEST(HeuristicIndependentSet, IndependentAndSeeded)
{
  auto g = random_graph(80, 0.2, 11);
  auto a = heuristic_independent_set(g, 3, 500);
  auto b = heuristic_independent_set(g, 3, 500);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(g.is_independent(a));
  EXPECT_LE(a.size(), max_independent_set(g).size());

  auto small = random_graph(14, 0.3, 5);
  EXPECT_EQ(heuristic_independent_set(small, 0, 2000).size(), brute_alpha(small));
}

TEST(CliquePartitionBound, BoundsIndependenceNumber)
{
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    auto g = random_graph(12, 0.4, seed);
    EXPECT_GE(detail::clique_partition_bound(g, Bitset::full(12)), brute_alpha(g));
  }
}
