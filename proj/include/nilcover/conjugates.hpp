#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "perm.hpp"
#include "resources.hpp"

namespace nilcover {

/// A subgroup stored as the sorted Lehmer ranks of its elements. Used where
/// the ambient group is too large to enumerate (S_8, S_9).
using RankSet = std::vector<std::uint32_t>;

struct RankSetHash {
  std::size_t operator()(const RankSet& s) const noexcept
  {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : s) h = (h ^ x) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

inline RankSet rank_set(std::span<const Permutation> elems)
{
  RankSet out;
  out.reserve(elems.size());
  for (const auto& p : elems) out.push_back(static_cast<std::uint32_t>(rank(p)));
  std::sort(out.begin(), out.end());
  return out;
}

inline RankSet conjugate_rank_set(const RankSet& s, std::size_t degree, const Permutation& h)
{
  const Permutation hinv = h.inverse();
  RankSet out;
  out.reserve(s.size());
  for (auto r : s) out.push_back(static_cast<std::uint32_t>(rank(hinv.then_unchecked(unrank(degree, r)).then_unchecked(h))));
  std::sort(out.begin(), out.end());
  return out;
}

/// The conjugacy class of a subgroup under the group generated by conj_gens,
/// starting with the subgroup itself.
inline std::vector<RankSet> subgroup_conjugates(const RankSet& base, std::size_t degree,
                                                const std::vector<Permutation>& conj_gens,
                                                const ResourceLimits& limits = {})
{
  std::vector<RankSet> out{base};
  std::unordered_set<RankSet, RankSetHash> seen{base};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i % 64 == 0) limits.check("subgroup conjugacy class");
    for (const auto& h : conj_gens) {
      RankSet c = conjugate_rank_set(out[i], degree, h);
      if (seen.insert(c).second) out.push_back(std::move(c));
    }
  }
  return out;
}

/// (0 1) and the n-cycle generate S_n.
inline std::vector<Permutation> symmetric_conjugators(std::size_t n)
{
  std::vector<int> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<int>(i);
  return {Permutation::from_cycles(n, {{0, 1}}), Permutation::from_cycles(n, std::vector<std::vector<int>>{c})};
}

/// The 3-cycles (0 1 k) generate A_n.
inline std::vector<Permutation> alternating_conjugators(std::size_t n)
{
  std::vector<Permutation> out;
  for (std::size_t k = 2; k < n; ++k) out.push_back(Permutation::from_cycles(n, {{0, 1, static_cast<int>(k)}}));
  return out;
}

} // namespace nilcover
