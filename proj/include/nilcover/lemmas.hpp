#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "ambient.hpp"
#include "conjugates.hpp"
#include "cover.hpp"
#include "partitions.hpp"
#include "sylow.hpp"

namespace nilcover {

/// How many Sylow p-subgroups of S_q contain each q-cycle, q = p^a.
struct CycleContainment {
  unsigned q = 0;
  unsigned p = 0;
  std::size_t sylow_order = 0;
  std::size_t sylow_count = 0;
  std::size_t cycles = 0;  // q-cycles seen inside some Sylow
  std::size_t min_multiplicity = 0;
  std::size_t max_multiplicity = 0;

  bool unique() const { return cycles == factorial_u64(q - 1) && min_multiplicity == 1 && max_multiplicity == 1; }
};

inline CycleContainment sylow_cycle_containment(unsigned q, const ResourceLimits& limits = {})
{
  auto f = factorize(q);
  if (f.size() != 1) throw std::invalid_argument("sylow_cycle_containment: q must be a prime power");
  CycleContainment c;
  c.q = q;
  c.p = static_cast<unsigned>(f.primes[0]);
  const auto a = static_cast<unsigned>(f.exponents[0]);
  RankSet base = rank_set(sylow_gens(c.p, a).close().elements());
  auto sylows = subgroup_conjugates(base, q, symmetric_conjugators(q), limits);
  c.sylow_order = base.size();
  c.sylow_count = sylows.size();

  const CycleType full({q});
  std::vector<std::uint16_t> hits(factorial_u64(q), 0);
  std::vector<std::int8_t> is_cycle(hits.size(), -1);
  for (const auto& s : sylows)
    for (auto r : s) {
      if (is_cycle[r] < 0) is_cycle[r] = cycle_type(unrank(q, r)) == full;
      if (is_cycle[r]) ++hits[r];
    }
  c.min_multiplicity = SIZE_MAX;
  for (std::size_t r = 0; r < hits.size(); ++r)
    if (is_cycle[r] == 1) {
      ++c.cycles;
      c.min_multiplicity = std::min<std::size_t>(c.min_multiplicity, hits[r]);
      c.max_multiplicity = std::max<std::size_t>(c.max_multiplicity, hits[r]);
    }
  if (c.cycles == 0) c.min_multiplicity = 0;
  return c;
}

/// Elements of distinct-partition type and their maximal nilpotent containers.
struct DistinctTypeContainment {
  unsigned n = 0;
  std::size_t elements = 0;
  std::size_t unique = 0;         // exactly one container
  std::size_t canonical_class = 0;  // ... and it is conjugate to canonical_nilpotent(T)

  bool passed() const { return elements == unique && unique == canonical_class; }
};

inline DistinctTypeContainment distinct_type_containment(const NilpotentStructure& s,
                                                         const ResourceLimits& limits = {})
{
  const AmbientGroup& g = s.group;
  DistinctTypeContainment out;
  out.n = static_cast<unsigned>(g.ambient().degree);
  std::unordered_set<IdSet, IdSetHash> canonical;
  std::vector<CycleType> types;
  for (const auto& t : enumerate_dp(out.n)) {
    types.push_back(t.as_cycle_type());
    IdSet base = g.ids_of(canonical_nilpotent(t).group.close().elements());
    for (auto& c : conjugacy_class_of(g, base, limits)) canonical.insert(std::move(c));
  }
  std::vector<std::size_t> multiplicity(g.size(), 0);
  std::vector<std::int64_t> holder(g.size(), -1);
  for (std::size_t i = 0; i < s.pool.members.size(); ++i)
    for (auto id : s.pool.members[i]) {
      ++multiplicity[id];
      holder[id] = static_cast<std::int64_t>(i);
    }
  for (std::size_t id = 0; id < g.size(); ++id) {
    if (std::find(types.begin(), types.end(), cycle_type(g.element(id))) == types.end()) continue;
    ++out.elements;
    if (multiplicity[id] != 1) continue;
    ++out.unique;
    out.canonical_class += canonical.count(s.pool.members[holder[id]]);
  }
  return out;
}

/// The transitive case at degrees too large for the full pool: the canonical
/// t-cycle of S_t lies in exactly one maximal nilpotent subgroup, and it is
/// canonical_nilpotent({t}). Conjugacy carries this to every t-cycle.
struct TransitiveContainment {
  unsigned t = 0;
  std::size_t neighbourhood = 0;
  std::size_t containers = 0;
  bool canonical = false;

  bool passed() const { return containers == 1 && canonical; }
};

inline TransitiveContainment transitive_containment(unsigned t, const ResourceLimits& limits = {})
{
  TransitiveContainment out;
  out.t = t;
  ResourceLimits big = limits;
  big.max_ambient_order = std::max<std::size_t>(limits.max_ambient_order, factorial_u64(t));
  AmbientGroup g(Ambient::sym(t), big);
  auto cn = canonical_nilpotent(DistinctPartition({t}));
  const ElementId x = g.id_of(canonical_element(cn));
  const AmbientBound bound = g.ambient().bound();
  for (std::size_t i = 0; i < g.size(); ++i) out.neighbourhood += pair_nilpotent(g.element(x), g.element(i), bound);
  auto found = maximal_nilpotent_containing(g, x, big);
  out.containers = found.size();
  out.canonical = found.size() == 1 && found[0] == g.ids_of(cn.group.close().elements());
  return out;
}

/// g = (0 1)(2 3)(4 5 6) in S_7: every maximal nilpotent subgroup containing
/// g (hence every nilpotent one) maps {0,1,2,3} and {4,5,6} to themselves.
struct OrbitPreservation {
  std::string element;
  std::size_t containers = 0;
  std::size_t preserving = 0;

  bool passed() const { return containers > 0 && containers == preserving; }
};

inline OrbitPreservation orbit_preservation_2_2_3(const NilpotentStructure& s)
{
  const AmbientGroup& g = s.group;
  if (g.ambient() != Ambient::sym(7)) throw std::invalid_argument("orbit_preservation_2_2_3: needs S_7");
  const Permutation x = Permutation::from_cycles(7, {{0, 1}, {2, 3}, {4, 5, 6}});
  OrbitPreservation out;
  out.element = to_cycle_string(x);
  for (auto i : unique_container(g.id_of(x), s.pool)) {
    ++out.containers;
    bool ok = std::all_of(s.pool.members[i].begin(), s.pool.members[i].end(), [&](ElementId id) {
      const Permutation& h = g.element(id);
      for (int pt = 0; pt < 4; ++pt)
        if (h[pt] >= 4) return false;
      return true;
    });
    out.preserving += ok;
  }
  return out;
}

/// is_nilpotent against the lower central series on every subgroup closure
/// a nilpotent search computes, up to a size limit.
struct NilpotencyAgreement {
  std::size_t checked = 0;
  std::size_t nilpotent = 0;
  std::size_t mismatches = 0;
  std::size_t largest = 0;
};

inline ClosureObserver agreement_observer(NilpotencyAgreement& a, std::size_t max_order = 500)
{
  return [&a, max_order](const GroupClosure& k) {
    if (k.order() > max_order) return;
    const bool fast = is_nilpotent(k);
    ++a.checked;
    a.nilpotent += fast;
    a.mismatches += fast != is_nilpotent_lcs(k);
    a.largest = std::max(a.largest, k.order());
  };
}

/// Same comparison on every distinct subgroup <x, y> of the ambient group
/// with order at most max_order.
inline void two_generated_agreement(const AmbientGroup& g, NilpotencyAgreement& a, std::size_t max_order = 500,
                                    const ResourceLimits& limits = {})
{
  auto check = agreement_observer(a, max_order);
  std::unordered_set<IdSet, IdSetHash> seen;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i % 64 == 0) limits.check("two-generated subgroups");
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const Permutation pair[] = {g.element(i), g.element(j)};
      auto r = closure(pair, g.ambient().degree, max_order);
      if (!std::holds_alternative<GroupClosure>(r)) continue;
      const auto& k = std::get<GroupClosure>(r);
      if (seen.insert(g.ids_of(k.elements())).second) check(k);
    }
  }
}

} // namespace nilcover
