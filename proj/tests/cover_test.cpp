#include <gtest/gtest.h>

#include <set>

#include <nilcover/cover.hpp>
#include <nilcover/lemmas.hpp>
#include <nilcover/sigma.hpp>

#include "test_util.hpp"

using namespace nilcover;
using nilcover::testing::cyc;

namespace {

// Maximal members among the nilpotent 2-generated subgroups. For S_4, S_5
// and A_5 every subgroup is 2-generated, so this is an independent route to
// the maximal nilpotent subgroups.
std::set<IdSet> brute_maximal_nilpotent(const AmbientGroup& g)
{
  std::set<IdSet> nilpotent;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i; j < g.size(); ++j) {
      auto k = generate({g.element(i), g.element(j)}, g.ambient().degree);
      if (is_nilpotent_lcs(k)) nilpotent.insert(g.ids_of(k.elements()));
    }
  std::set<IdSet> out;
  for (const auto& h : nilpotent) {
    bool maximal = true;
    for (const auto& k : nilpotent)
      if (k.size() > h.size() && std::includes(k.begin(), k.end(), h.begin(), h.end())) maximal = false;
    if (maximal) out.insert(h);
  }
  return out;
}

std::multiset<std::size_t> orders(const SubgroupFamily& f)
{
  std::multiset<std::size_t> out;
  for (const auto& m : f.members) out.insert(m.size());
  return out;
}

} // namespace

TEST(MaximalNilpotent, SmallPools)
{
  auto s3 = NilpotentStructure::compute(Ambient::sym(3));
  EXPECT_EQ(orders(s3.pool), (std::multiset<std::size_t>{2, 2, 2, 3}));
  auto s4 = NilpotentStructure::compute(Ambient::sym(4));
  EXPECT_EQ(orders(s4.pool), (std::multiset<std::size_t>{3, 3, 3, 3, 8, 8, 8}));
  auto a4 = NilpotentStructure::compute(Ambient::alt(4));
  EXPECT_EQ(orders(a4.pool), (std::multiset<std::size_t>{3, 3, 3, 3, 4}));
  for (const auto* s : {&s3, &s4, &a4}) {
    EXPECT_TRUE(s->pool.is_cover);
    EXPECT_TRUE(s->pool.is_normal);
  }
}

TEST(MaximalNilpotent, MatchesSubgroupBruteForce)
{
  for (auto a : {Ambient::sym(4), Ambient::sym(5), Ambient::alt(5)}) {
    auto s = NilpotentStructure::compute(a);
    std::set<IdSet> pool(s.pool.members.begin(), s.pool.members.end());
    EXPECT_EQ(pool.size(), s.pool.size()) << a.name();
    EXPECT_EQ(pool, brute_maximal_nilpotent(s.group)) << a.name();
  }
}

TEST(MaximalNilpotent, MembersAdmitNoNilpotentExtension)
{
  auto s = NilpotentStructure::compute(Ambient::sym(5));
  for (const auto& m : s.pool.members) {
    auto h = s.group.to_closure(m);
    ASSERT_TRUE(is_nilpotent(h));
    std::vector<Permutation> gens(h.elements().begin(), h.elements().end());
    for (std::size_t z = 0; z < s.group.size(); ++z) {
      if (std::binary_search(m.begin(), m.end(), static_cast<ElementId>(z))) continue;
      gens.push_back(s.group.element(static_cast<ElementId>(z)));
      EXPECT_FALSE(is_nilpotent(generate(gens, 5)));
      gens.pop_back();
    }
  }
}

TEST(MaximalNilpotent, LocalSearchAgreesWithPool)
{
  for (auto a : {Ambient::sym(5), Ambient::alt(6)}) {
    auto s = NilpotentStructure::compute(a);
    for (std::size_t x = 0; x < s.group.size(); x += 7) {
      auto local = maximal_nilpotent_containing(s.group, static_cast<ElementId>(x));
      std::vector<IdSet> global;
      for (auto i : unique_container(static_cast<ElementId>(x), s.pool)) global.push_back(s.pool.members[i]);
      std::sort(global.begin(), global.end());
      EXPECT_EQ(local, global) << a.name() << " element " << x;
    }
  }
}

TEST(UniqueContainer, Examples)
{
  auto s3 = NilpotentStructure::compute(Ambient::sym(3));
  auto c = unique_container(s3.group.id_of(cyc(3, {{0, 1, 2}})), s3.pool);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(s3.pool.members[c[0]], s3.group.ids_of(generate({cyc(3, {{0, 1, 2}})}, 3).elements()));

  auto s4 = NilpotentStructure::compute(Ambient::sym(4));
  auto d = unique_container(s4.group.id_of(cyc(4, {{0, 1, 2, 3}})), s4.pool);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(s4.pool.members[d[0]].size(), 8u);
  // the identity lies in everything
  EXPECT_EQ(unique_container(s4.group.id_of(Permutation(4)), s4.pool).size(), s4.pool.size());
}

TEST(BuildM, SizesClassesAndPool)
{
  for (unsigned n = 3; n <= 6; ++n) {
    auto s = NilpotentStructure::compute(Ambient::sym(n));
    auto m = build_m(s.group);
    EXPECT_EQ(BigInt(m.size()), sigma_sn(n).total) << n;
    EXPECT_EQ(m.conjugacy_class_count, enumerate_dp(n).size()) << n;
    EXPECT_TRUE(m.is_cover);
    EXPECT_TRUE(m.is_normal);
    std::set<IdSet> pool(s.pool.members.begin(), s.pool.members.end());
    for (const auto& member : m.members) EXPECT_TRUE(pool.count(member)) << n;
  }
  AmbientGroup s3(Ambient::sym(3));
  auto m3 = build_m(s3);
  EXPECT_EQ(m3.size(), 4u);
  EXPECT_EQ(m3.conjugacy_class_count, 2u);
  EXPECT_THROW(build_m(AmbientGroup(Ambient::alt(4))), std::invalid_argument);
}

TEST(MinCover, Examples)
{
  auto s3 = NilpotentStructure::compute(Ambient::sym(3));
  auto s4 = NilpotentStructure::compute(Ambient::sym(4));
  auto a4 = NilpotentStructure::compute(Ambient::alt(4));
  EXPECT_EQ(min_cover_exact(s3.group, s3.pool).size, 4u);
  EXPECT_EQ(min_cover_exact(s4.group, s4.pool).size, 7u);
  auto r = min_cover_exact(a4.group, a4.pool);
  EXPECT_EQ(r.size, 5u);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.forced, 5u);
}

TEST(MinCover, BranchAndBoundWithoutForcedMembers)
{
  AmbientGroup g(Ambient::sym(3));
  auto sub = [&](std::initializer_list<Permutation> gens) { return g.ids_of(generate(gens, 3).elements()); };
  SubgroupFamily pool = make_family(g, {sub({cyc(3, {{0, 1}})}), sub({cyc(3, {{0, 2}})}), sub({cyc(3, {{1, 2}})}),
                                         sub({cyc(3, {{0, 1, 2}})}), g.all_ids()});
  auto r = min_cover_exact(g, pool);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.size, 1u);
  EXPECT_EQ(r.forced, 0u);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{4}));

  // without S_3 itself every member is forced
  pool = make_family(g, {pool.members.begin(), pool.members.begin() + 4});
  EXPECT_EQ(min_cover_exact(g, pool).forced, 4u);

  SubgroupFamily partial = make_family(g, {sub({cyc(3, {{0, 1}})})});
  EXPECT_THROW(min_cover_exact(g, partial), std::invalid_argument);
}

TEST(MinCover, NodeBudgetMarksInexact)
{
  AmbientGroup g(Ambient::sym(4));
  std::vector<IdSet> members;
  for (std::size_t i = 0; i < g.size(); ++i)
    members.push_back(g.ids_of(generate({g.element(static_cast<ElementId>(i))}, 4).elements()));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  members.push_back(g.ids_of(alternating_group(4).elements()));
  auto pool = make_family(g, members);
  // transpositions and 4-cycles force 6 + 3 members; the 3-cycles are then
  // best covered by A_4 alone
  auto exact = min_cover_exact(g, pool);
  EXPECT_TRUE(exact.exact);
  EXPECT_EQ(exact.forced, 9u);
  EXPECT_EQ(exact.size, 10u);
  ResourceLimits tight;
  tight.max_search_nodes = 0;
  auto cut = min_cover_exact(g, pool, tight);
  EXPECT_FALSE(cut.exact);
  EXPECT_LE(cut.lower_bound, exact.size);
  EXPECT_GE(cut.size, exact.size);
}

TEST(Oracles, CoverFormulaAndIndependentSetAgree)
{
  for (unsigned n = 3; n <= 6; ++n) {
    auto s = NilpotentStructure::compute(Ambient::sym(n));
    auto mc = min_cover_exact(s.group, s.pool);
    auto mis = max_independent_set(s.graph);
    ASSERT_TRUE(mc.exact && mis.exact);
    EXPECT_EQ(BigInt(mc.size), sigma_sn(n).total);
    EXPECT_EQ(mis.size(), mc.size);
    EXPECT_TRUE(s.graph.is_independent(mis.witness));
  }
  for (unsigned n = 4; n <= 6; ++n) {
    auto s = NilpotentStructure::compute(Ambient::alt(n));
    auto mc = min_cover_exact(s.group, s.pool);
    auto mis = max_independent_set(s.graph);
    EXPECT_EQ(mis.size(), mc.size) << "A" << n;
    EXPECT_GE(mc.size, mis.size());
  }
}

TEST(VerifyTheorem1, SmallDegrees)
{
  const std::size_t sizes[] = {4, 7, 31, 201};
  const std::size_t classes[] = {2, 2, 3, 4};
  for (unsigned n = 3; n <= 6; ++n) {
    auto v = verify_theorem1(NilpotentStructure::compute(Ambient::sym(n)));
    EXPECT_TRUE(v.passed()) << n;
    EXPECT_EQ(v.cover_size, sizes[n - 3]);
    EXPECT_EQ(v.classes, classes[n - 3]);
    EXPECT_TRUE(v.is_cover && v.minimal && v.unique && v.normal && v.class_count);
  }
}

TEST(Lemmas, OrbitPreservationNeedsS7)
{
  auto s = NilpotentStructure::compute(Ambient::sym(5));
  EXPECT_THROW(orbit_preservation_2_2_3(s), std::invalid_argument);
}

TEST(Lemmas, CycleContainmentSmall)
{
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u}) EXPECT_TRUE(sylow_cycle_containment(q).unique()) << q;
  EXPECT_EQ(sylow_cycle_containment(8).sylow_count, 315u);
  EXPECT_THROW(sylow_cycle_containment(6), std::invalid_argument);
}

TEST(Lemmas, DistinctTypeContainmentSmall)
{
  for (unsigned n = 3; n <= 6; ++n) {
    auto d = distinct_type_containment(NilpotentStructure::compute(Ambient::sym(n)));
    EXPECT_TRUE(d.passed()) << n;
    EXPECT_GT(d.elements, 0u);
  }
}

TEST(Lemmas, NilpotencyAgreementOnTwoGenerated)
{
  NilpotencyAgreement a;
  two_generated_agreement(AmbientGroup(Ambient::sym(4)), a);
  EXPECT_EQ(a.mismatches, 0u);
  EXPECT_GT(a.checked, a.nilpotent);  // both kinds were seen
}
