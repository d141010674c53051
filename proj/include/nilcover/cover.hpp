#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ambient.hpp"
#include "graph.hpp"
#include "group.hpp"
#include "partitions.hpp"
#include "resources.hpp"
#include "sylow.hpp"

namespace nilcover {

/// A set of subgroups of an ambient group with its cover and normality verdicts.
struct SubgroupFamily {
  Ambient ambient;
  std::vector<IdSet> members;
  bool is_cover = false;
  bool is_normal = false;
  std::size_t conjugacy_class_count = 0;

  std::size_t size() const { return members.size(); }
};

/// Fills is_cover, is_normal and conjugacy_class_count. Conjugating by the
/// ambient generators is enough to test closure under all conjugation.
inline void analyze_family(const AmbientGroup& g, SubgroupFamily& family)
{
  Bitset covered(g.size());
  for (const auto& m : family.members)
    for (auto id : m) covered.set(id);
  family.is_cover = covered.count() == g.size();

  std::unordered_map<IdSet, std::size_t, IdSetHash> index;
  for (std::size_t i = 0; i < family.members.size(); ++i) index.emplace(family.members[i], i);
  std::vector<std::size_t> parent(family.members.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  family.is_normal = true;
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    for (const auto& h : g.generators()) {
      auto it = index.find(g.conjugate_set(family.members[i], h));
      if (it == index.end()) {
        family.is_normal = false;
        continue;
      }
      auto a = find(i);
      auto b = find(it->second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::size_t classes = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) classes += find(i) == i;
  family.conjugacy_class_count = classes;
}

inline SubgroupFamily make_family(const AmbientGroup& g, std::vector<IdSet> members)
{
  SubgroupFamily f{g.ambient(), std::move(members)};
  analyze_family(g, f);
  return f;
}

/// All conjugates of a subgroup, in breadth-first order from h itself.
inline std::vector<IdSet> conjugacy_class_of(const AmbientGroup& g, const IdSet& h,
                                             const ResourceLimits& limits = {})
{
  std::vector<IdSet> out{h};
  std::unordered_set<IdSet, IdSetHash> seen{h};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i % 256 == 0) limits.check("conjugacy class enumeration");
    for (const auto& x : g.generators()) {
      IdSet c = g.conjugate_set(out[i], x);
      if (seen.insert(c).second) out.push_back(std::move(c));
    }
  }
  return out;
}

/// Called on every subgroup closure the nilpotent search computes in full.
using ClosureObserver = std::function<void(const GroupClosure&)>;

/// Vertices are the ambient elements (by id); edges join pairs generating a
/// nilpotent subgroup.
inline NilpotencyGraph element_nilpotency_graph(const AmbientGroup& g, const ResourceLimits& limits = {})
{
  if (g.size() > limits.max_graph_vertices)
    throw ResourceLimitExceeded("nilpotency graph of " + g.ambient().name() + " exceeds the vertex limit");
  const AmbientBound bound = g.ambient().bound();
  return NilpotencyGraph::build(
      g.size(), [&](std::size_t i, std::size_t j) { return pair_nilpotent(g.element(i), g.element(j), bound); },
      limits);
}

namespace detail {

// Depth-first search over nilpotent subgroups whose elements lie in a
// universe U of ambient elements. Every nilpotent subgroup is reached from a
// cyclic seed by adjoining one element at a time; an extension by z is only
// possible when z is adjacent to every element of the current subgroup.
class NilpotentSearch {
public:
  NilpotentSearch(const AmbientGroup& g, std::vector<ElementId> universe, const NilpotencyGraph& local_graph,
                  const ResourceLimits& limits, ClosureObserver observer = {})
  : g_(g), universe_(std::move(universe)), graph_(local_graph), limits_(limits), observer_(std::move(observer)),
    local_(g.size(), -1)
  {
    for (std::size_t i = 0; i < universe_.size(); ++i) local_[universe_[i]] = static_cast<std::int32_t>(i);
  }

  void seed(ElementId id) { push(std::vector<Permutation>{g_.element(id)}); }

  std::vector<IdSet> run()
  {
    while (!stack_.empty()) {
      if (++steps_ % 256 == 0) limits_.check("maximal nilpotent subgroup search");
      if (visited_.size() > limits_.max_search_nodes)
        throw ResourceLimitExceeded("maximal nilpotent subgroup search exceeded the node budget");
      Node node = std::move(stack_.back());
      stack_.pop_back();
      expand(node);
    }
    std::sort(maximal_.begin(), maximal_.end());
    return maximal_;
  }

  std::size_t visited() const { return visited_.size(); }

private:
  struct Node {
    IdSet ids;
    std::vector<Permutation> gens;
  };

  std::optional<std::size_t> local(ElementId id) const
  {
    return local_[id] < 0 ? std::nullopt : std::optional<std::size_t>(static_cast<std::size_t>(local_[id]));
  }

  // Closure of gens if it is nilpotent and inside the universe.
  std::optional<IdSet> nilpotent_closure(const std::vector<Permutation>& gens) const
  {
    std::uint64_t m = 1;
    for (const auto& x : gens) m = std::lcm(m, element_order(x));
    std::uint64_t cap = 1;
    for (auto p : prime_divisors(m)) cap *= g_.ambient().bound().p_bound(p);
    auto r = closure(gens, g_.ambient().degree, cap);
    if (!std::holds_alternative<GroupClosure>(r)) return std::nullopt;
    const auto& k = std::get<GroupClosure>(r);
    if (observer_) observer_(k);
    if (!is_nilpotent(k)) return std::nullopt;
    IdSet ids;
    for (const auto& x : k.elements()) {
      auto id = g_.find(x);
      if (!id || !local(*id)) return std::nullopt;
      ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  // True if the closure of gens is nilpotent (whether or not seen before).
  bool push(std::vector<Permutation> gens)
  {
    auto ids = nilpotent_closure(gens);
    if (!ids) return false;
    if (visited_.insert(*ids).second) stack_.push_back({std::move(*ids), std::move(gens)});
    return true;
  }

  void expand(const Node& node)
  {
    Bitset cand = Bitset::full(universe_.size());
    Bitset self(universe_.size());
    for (auto id : node.ids) {
      auto li = local(id);
      if (!li) return;
      Bitset closed = graph_.neighbours(*li);
      closed.set(*li);
      cand &= closed;
      self.set(*li);
    }
    cand.subtract(self);
    if (!cand.any()) {
      maximal_.push_back(node.ids);
      return;
    }

    // If the candidates are pairwise compatible and generate a nilpotent
    // group with H, that group is the only maximal nilpotent one above H.
    bool clique = true;
    cand.for_each([&](std::size_t c) {
      if (!clique) return;
      Bitset rest = cand;
      rest.reset(c);
      clique = rest.subset_of(graph_.neighbours(c));
    });
    if (clique) {
      std::vector<Permutation> gens = node.gens;
      cand.for_each([&](std::size_t c) { gens.push_back(g_.element(universe_[c])); });
      if (auto ids = nilpotent_closure(gens)) {
        if (visited_.insert(*ids).second) stack_.push_back({std::move(*ids), std::move(gens)});
        return;
      }
    }

    // H is maximal exactly when no single compatible element extends it.
    bool extended = false;
    Bitset done(universe_.size());
    cand.for_each([&](std::size_t c) {
      if (done.test(c)) return;
      const Permutation& z = g_.element(universe_[c]);
      const std::uint64_t m = element_order(z);
      for (std::uint64_t k = 1; k < m; ++k) {
        if (std::gcd(k, m) != 1) continue;
        if (auto li = local(g_.id_of(power(z, static_cast<long long>(k))))) done.set(*li);
      }
      std::vector<Permutation> gens = node.gens;
      gens.push_back(z);
      extended = push(std::move(gens)) || extended;
    });
    if (!extended) maximal_.push_back(node.ids);
  }

  const AmbientGroup& g_;
  std::vector<ElementId> universe_;
  const NilpotencyGraph& graph_;
  const ResourceLimits& limits_;
  ClosureObserver observer_;
  std::vector<std::int32_t> local_;
  std::unordered_set<IdSet, IdSetHash> visited_;
  std::vector<Node> stack_;
  std::vector<IdSet> maximal_;
  std::size_t steps_ = 0;
};

} // namespace detail

/// Removes members properly contained in another member.
inline std::vector<IdSet> drop_contained(std::vector<IdSet> sets)
{
  std::vector<char> drop(sets.size(), 0);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size() && !drop[i]; ++j)
      if (i != j && sets[i].size() < sets[j].size() &&
          std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end()))
        drop[i] = 1;
  std::vector<IdSet> out;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (!drop[i]) out.push_back(std::move(sets[i]));
  return out;
}

/// Every subgroup that is nilpotent and maximal among nilpotent subgroups,
/// found by exhaustive extension from the cyclic subgroups.
inline SubgroupFamily maximal_nilpotent_subgroups(const AmbientGroup& g, const NilpotencyGraph& graph,
                                                  const ResourceLimits& limits = {}, ClosureObserver observer = {})
{
  detail::NilpotentSearch search(g, g.all_ids(), graph, limits, std::move(observer));
  for (std::size_t i = 0; i < g.size(); ++i) search.seed(static_cast<ElementId>(i));
  return make_family(g, drop_contained(search.run()));
}

inline SubgroupFamily maximal_nilpotent_subgroups(const AmbientGroup& g, const ResourceLimits& limits = {})
{
  return maximal_nilpotent_subgroups(g, element_nilpotency_graph(g, limits), limits);
}

/// The maximal nilpotent subgroups containing one element, without building
/// the whole nilpotency graph: they all live inside the closed neighbourhood
/// of g.
inline std::vector<IdSet> maximal_nilpotent_containing(const AmbientGroup& g, ElementId x,
                                                       const ResourceLimits& limits = {})
{
  const AmbientBound bound = g.ambient().bound();
  std::vector<ElementId> universe;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (i == x || pair_nilpotent(g.element(x), g.element(i), bound)) universe.push_back(static_cast<ElementId>(i));
  ResourceLimits local_limits = limits;
  local_limits.max_graph_vertices = std::max(limits.max_graph_vertices, universe.size());
  if (universe.size() > local_limits.max_graph_vertices)
    throw ResourceLimitExceeded("neighbourhood too large");
  auto local_graph = NilpotencyGraph::build(
      universe.size(),
      [&](std::size_t i, std::size_t j) {
        return pair_nilpotent(g.element(universe[i]), g.element(universe[j]), bound);
      },
      limits);
  detail::NilpotentSearch search(g, universe, local_graph, limits);
  search.seed(x);
  return drop_contained(search.run());
}

/// Indices of the family members containing x.
inline std::vector<std::size_t> unique_container(ElementId x, const SubgroupFamily& family)
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < family.members.size(); ++i)
    if (std::binary_search(family.members[i].begin(), family.members[i].end(), x)) out.push_back(i);
  return out;
}

/// canonical_nilpotent(T) and all of its conjugates, for every T in DP(n).
inline SubgroupFamily build_m(const AmbientGroup& g, const ResourceLimits& limits = {})
{
  if (g.ambient().kind != GroupKind::Symmetric)
    throw std::invalid_argument("build_m: the ambient group must be symmetric");
  std::vector<IdSet> members;
  for (const auto& t : enumerate_dp(static_cast<unsigned>(g.ambient().degree))) {
    IdSet base = g.ids_of(canonical_nilpotent(t).group.close().elements());
    auto cls = conjugacy_class_of(g, base, limits);
    members.insert(members.end(), cls.begin(), cls.end());
  }
  return make_family(g, std::move(members));
}

struct CoverResult {
  std::size_t size = 0;
  std::vector<std::size_t> witness;  // member indices into the pool
  bool exact = false;
  std::size_t lower_bound = 0;
  std::size_t forced = 0;  // members that are the sole container of some element
  std::size_t search_nodes = 0;
};

/// Minimum number of pool members covering the ambient group. Forced members
/// are committed first; the rest is exact branch and bound with a greedy
/// upper bound and a disjoint-elements lower bound.
inline CoverResult min_cover_exact(const AmbientGroup& g, const SubgroupFamily& pool,
                                   const ResourceLimits& limits = {})
{
  const std::size_t n = g.size();
  std::vector<std::vector<std::uint32_t>> containers(n);
  for (std::size_t i = 0; i < pool.members.size(); ++i)
    for (auto id : pool.members[i]) containers[id].push_back(static_cast<std::uint32_t>(i));
  for (std::size_t e = 0; e < n; ++e)
    if (containers[e].empty()) throw std::invalid_argument("min_cover_exact: the pool does not cover the group");

  CoverResult out;
  std::vector<char> chosen(pool.members.size(), 0);
  Bitset uncovered = Bitset::full(n);
  auto take = [&](std::size_t m, Bitset& unc) {
    for (auto id : pool.members[m]) unc.reset(id);
  };
  for (std::size_t e = 0; e < n; ++e)
    if (containers[e].size() == 1 && !chosen[containers[e][0]]) {
      chosen[containers[e][0]] = 1;
      take(containers[e][0], uncovered);
      out.witness.push_back(containers[e][0]);
    }
  out.forced = out.witness.size();

  // Elements whose container lists are pairwise disjoint each need their own member.
  auto lower = [&](const Bitset& unc) {
    std::vector<char> used(pool.members.size(), 0);
    std::size_t lb = 0;
    unc.for_each([&](std::size_t e) {
      for (auto c : containers[e])
        if (used[c]) return;
      for (auto c : containers[e]) used[c] = 1;
      ++lb;
    });
    return lb;
  };
  auto greedy = [&](Bitset unc) {
    std::vector<std::size_t> pick;
    while (unc.any()) {
      std::size_t best = 0;
      std::size_t gain = 0;
      for (std::size_t m = 0; m < pool.members.size(); ++m) {
        std::size_t c = 0;
        for (auto id : pool.members[m]) c += unc.test(id);
        if (c > gain) {
          gain = c;
          best = m;
        }
      }
      pick.push_back(best);
      take(best, unc);
    }
    return pick;
  };

  std::vector<std::size_t> best_extra = greedy(uncovered);
  std::vector<std::size_t> current;
  bool aborted = false;
  std::size_t nodes = 0;
  std::function<void(const Bitset&)> search = [&](const Bitset& unc) {
    if (aborted) return;
    if (++nodes > limits.max_search_nodes || (nodes % 1024 == 0 && limits.expired())) {
      aborted = true;
      return;
    }
    if (!unc.any()) {
      if (current.size() < best_extra.size()) best_extra = current;
      return;
    }
    if (current.size() + lower(unc) >= best_extra.size()) return;
    std::size_t pivot = 0;
    std::size_t fewest = SIZE_MAX;
    unc.for_each([&](std::size_t e) {
      if (containers[e].size() < fewest) {
        fewest = containers[e].size();
        pivot = e;
      }
    });
    for (auto m : containers[pivot]) {
      Bitset next = unc;
      take(m, next);
      current.push_back(m);
      search(next);
      current.pop_back();
      if (aborted) return;
    }
  };
  if (uncovered.any()) search(uncovered);

  out.search_nodes = nodes;
  out.exact = !aborted;
  out.witness.insert(out.witness.end(), best_extra.begin(), best_extra.end());
  std::sort(out.witness.begin(), out.witness.end());
  out.size = out.witness.size();
  out.lower_bound = out.exact ? out.size : out.forced + lower(uncovered);
  return out;
}

/// Brute-force knowledge about one ambient group: its elements, the
/// nilpotency graph on them, and the pool of maximal nilpotent subgroups.
struct NilpotentStructure {
  AmbientGroup group;
  NilpotencyGraph graph;
  SubgroupFamily pool;

  static NilpotentStructure compute(Ambient a, const ResourceLimits& limits = {})
  {
    AmbientGroup g(a, limits);
    NilpotencyGraph graph = element_nilpotency_graph(g, limits);
    SubgroupFamily pool = maximal_nilpotent_subgroups(g, graph, limits);
    return {std::move(g), std::move(graph), std::move(pool)};
  }
};

/// Outcome of checking that the conjugates of the canonical nilpotent
/// subgroups form the unique minimal, normal cover of S_n.
struct Theorem1Verdict {
  unsigned n = 0;
  std::size_t cover_size = 0;      // |M|
  std::size_t pool_size = 0;       // maximal nilpotent subgroups
  std::size_t min_cover = 0;
  bool min_cover_exact = false;
  std::size_t classes = 0;
  std::size_t distinct_partitions = 0;
  // searching only maximal nilpotent subgroups loses nothing: every
  // nilpotent subgroup lies in one of them
  bool is_cover = false;
  bool minimal = false;
  bool unique = false;
  bool normal = false;
  bool class_count = false;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

inline Theorem1Verdict verify_theorem1(const NilpotentStructure& s, const ResourceLimits& limits = {})
{
  const AmbientGroup& g = s.group;
  if (g.ambient().kind != GroupKind::Symmetric) throw std::invalid_argument("verify_theorem1: needs S_n");
  Theorem1Verdict v;
  v.n = static_cast<unsigned>(g.ambient().degree);
  SubgroupFamily m = build_m(g, limits);
  v.cover_size = m.size();
  v.pool_size = s.pool.size();
  v.classes = m.conjugacy_class_count;
  v.distinct_partitions = enumerate_dp(v.n).size();

  v.is_cover = m.is_cover;
  if (!v.is_cover) v.violations.push_back("cover: M does not cover S_n");

  CoverResult mc = min_cover_exact(g, s.pool, limits);
  v.min_cover = mc.size;
  v.min_cover_exact = mc.exact;
  v.minimal = mc.exact && mc.size == m.size();
  if (!mc.exact) v.violations.push_back("minimal: cover search inexact");
  else if (!v.minimal) v.violations.push_back("minimal: |M| != minimum cover size");

  // every member of M must be in the pool and be the only pool member
  // containing one of its elements
  std::unordered_map<IdSet, std::size_t, IdSetHash> pool_index;
  for (std::size_t i = 0; i < s.pool.members.size(); ++i) pool_index.emplace(s.pool.members[i], i);
  std::vector<std::size_t> multiplicity(g.size(), 0);
  for (const auto& p : s.pool.members)
    for (auto id : p) ++multiplicity[id];
  v.unique = true;
  std::size_t forced_members = 0;
  for (const auto& member : m.members) {
    if (!pool_index.count(member)) {
      v.unique = false;
      continue;
    }
    bool forced = std::any_of(member.begin(), member.end(), [&](ElementId id) { return multiplicity[id] == 1; });
    forced_members += forced;
    v.unique = v.unique && forced;
  }
  v.unique = v.unique && forced_members == mc.forced;
  if (!v.unique) v.violations.push_back("unique: some member of M is not forced");

  v.normal = m.is_normal;
  if (!v.normal) v.violations.push_back("normal: M is not closed under conjugation");
  v.class_count = v.classes == v.distinct_partitions;
  if (!v.class_count) v.violations.push_back("classes: conjugacy class count != |DP(n)|");
  return v;
}

} // namespace nilcover
