#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ambient.hpp"
#include "conjugates.hpp"
#include "cover.hpp"
#include "graph.hpp"
#include "group.hpp"
#include "resources.hpp"
#include "sylow.hpp"

namespace nilcover {

// ---------------------------------------------------------------------------
// On-disk memo for the heavy enumerations. Enabled by NILCOVER_CACHE.

inline std::uint64_t content_hash(const std::string& s)
{
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

class Cache {
public:
  /// Reads NILCOVER_CACHE; an unset or empty variable disables caching.
  static Cache from_environment()
  {
    const char* dir = std::getenv("NILCOVER_CACHE");
    if (!dir || !*dir) return Cache{};
    return Cache{std::filesystem::path(dir)};
  }

  Cache() = default;
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  bool enabled() const { return dir_.has_value(); }

  std::filesystem::path path_for(const std::string& name, const std::string& params) const
  {
    std::ostringstream os;
    os << name << '-' << std::hex << content_hash(params) << ".txt";
    return *dir_ / os.str();
  }

  std::optional<std::string> load(const std::string& name, const std::string& params) const
  {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path_for(name, params));
    if (!in) return std::nullopt;
    std::string header;
    std::getline(in, header);
    if (header != params) return std::nullopt;
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
  }

  /// Best effort: a cache that cannot be written is simply skipped.
  void store(const std::string& name, const std::string& params, const std::string& body) const
  {
    if (!enabled()) return;
    std::error_code ec;
    std::filesystem::create_directories(*dir_, ec);
    auto target = path_for(name, params);
    auto tmp = target;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) return;
      out << params << '\n' << body;
      if (!out) return;
    }
    std::filesystem::rename(tmp, target, ec);
  }

private:
  std::optional<std::filesystem::path> dir_;
};

// ---------------------------------------------------------------------------
// The graph on cyclic subgroups of A_8 generated by elements of type 4^2.

/// A Sylow 2-subgroup of S_8 built from the block rotations, intersected with A_8.
inline std::vector<Permutation> canonical_a8_sylow2(std::size_t degree = 8)
{
  GroupClosure p = sylow_gens(2, 3).close();
  std::vector<Permutation> out;
  for (const auto& x : p.elements())
    if (is_even(x)) out.push_back(degree == 8 ? x : embed(x, 0, degree));
  return out;
}

struct GammaData {
  AmbientGroup a8{Ambient::alt(8)};
  std::vector<ElementId> vertex_rep;    // a generator of each vertex
  std::vector<std::int32_t> vertex_of;  // element id -> vertex, or -1
  NilpotencyGraph graph;
  std::vector<IdSet> sylows;            // all Sylow 2-subgroups; index 0 is the canonical one
  std::vector<std::vector<std::uint32_t>> sylow_vertices;
  bool from_cache = false;
};

namespace detail {

inline const std::string kGammaParams = "gamma-a8 v1 ambient=A8 vertices=cyclic<4^2> sylow=2";

inline std::string serialize_gamma(const GammaData& d)
{
  std::ostringstream os;
  os << "edges " << d.graph.edge_count() << '\n';
  for (std::size_t i = 0; i < d.graph.size(); ++i)
    d.graph.neighbours(i).for_each([&](std::size_t j) {
      if (j > i) os << i << ' ' << j << '\n';
    });
  os << "sylows " << d.sylows.size() << '\n';
  for (const auto& s : d.sylows) {
    for (std::size_t k = 0; k < s.size(); ++k) os << (k ? " " : "") << s[k];
    os << '\n';
  }
  return os.str();
}

inline bool deserialize_gamma(const std::string& body, GammaData& d)
{
  std::istringstream in(body);
  std::string word;
  std::size_t edges = 0;
  if (!(in >> word >> edges) || word != "edges") return false;
  NilpotencyGraph g(d.vertex_rep.size());
  for (std::size_t e = 0; e < edges; ++e) {
    std::size_t i = 0, j = 0;
    if (!(in >> i >> j) || i >= g.size() || j >= g.size() || i == j) return false;
    g.add_edge(i, j);
  }
  std::size_t count = 0;
  if (!(in >> word >> count) || word != "sylows") return false;
  std::vector<IdSet> sylows(count);
  for (auto& s : sylows) {
    s.resize(64);
    for (auto& x : s)
      if (!(in >> x) || x >= d.a8.size()) return false;
  }
  d.graph = std::move(g);
  d.sylows = std::move(sylows);
  return true;
}

} // namespace detail

inline GammaData build_gamma(const ResourceLimits& limits = {}, const Cache& cache = {})
{
  GammaData d;
  const AmbientGroup& a8 = d.a8;
  d.vertex_of.assign(a8.size(), -1);
  const CycleType target = CycleType::parse("4^2");
  for (std::size_t i = 0; i < a8.size(); ++i) {
    if (d.vertex_of[i] >= 0 || cycle_type(a8.element(i)) != target) continue;
    const auto v = static_cast<std::int32_t>(d.vertex_rep.size());
    d.vertex_rep.push_back(static_cast<ElementId>(i));
    d.vertex_of[i] = v;
    d.vertex_of[a8.id_of(a8.element(i).inverse())] = v;
  }

  bool loaded = false;
  if (auto body = cache.load("gamma-a8", detail::kGammaParams)) loaded = detail::deserialize_gamma(*body, d);
  if (!loaded) {
    const AmbientBound bound = a8.ambient().bound();
    d.graph = NilpotencyGraph::build(
        d.vertex_rep.size(),
        [&](std::size_t i, std::size_t j) {
          return pair_nilpotent(a8.element(d.vertex_rep[i]), a8.element(d.vertex_rep[j]), bound);
        },
        limits);
    d.sylows = conjugacy_class_of(a8, a8.ids_of(canonical_a8_sylow2()), limits);
    cache.store("gamma-a8", detail::kGammaParams, detail::serialize_gamma(d));
  }
  d.from_cache = loaded;

  for (const auto& s : d.sylows) {
    std::vector<std::uint32_t> vs;
    for (auto id : s)
      if (d.vertex_of[id] >= 0) vs.push_back(static_cast<std::uint32_t>(d.vertex_of[id]));
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    d.sylow_vertices.push_back(std::move(vs));
  }
  return d;
}

/// One (g_0, P_2) choice in the disjoint-cover elimination.
struct EliminationChoice {
  std::uint32_t g0 = 0;       // vertex
  std::size_t p2 = 0;         // Sylow index
  std::size_t remaining_after_p2 = 0;
  std::size_t vertices_in_remaining = 0;
};

struct Elimination {
  std::size_t remaining_after_p1 = 0;
  // multiplicity among the remaining Sylows -> number of vertices outside P_1
  std::map<std::size_t, std::size_t> g0_distribution;
  std::size_t g0_multiplicity = 0;  // 2 when some vertex lies in exactly two
  std::vector<EliminationChoice> choices;
  std::size_t choices_matching = 0;  // choices giving 247 and 600
  std::size_t remaining_after_p2 = 0;
  std::size_t vertices_in_remaining = 0;
  std::size_t vertices_in_p1p2 = 0;
  std::size_t max_coverable = 0;
};

struct GammaStats {
  std::size_t vertex_count = 0;
  std::size_t regular_degree = 0;  // 0 if the graph is not regular
  bool vertex_transitive = false;
  bool conjugation_preserves_edges = false;
  std::size_t sylow2_count = 0;
  std::size_t vertices_per_sylow = 0;   // 0 unless every Sylow meets the same number
  std::size_t sylows_per_vertex = 0;    // 0 unless every vertex lies in the same number
  bool sylow_vertices_are_cliques = false;
  std::size_t clique_lower_bound = 0;
  std::size_t coclique_upper_bound = 0;
  std::vector<std::uint32_t> coclique_witness;
  bool coclique_witness_verified = false;
  std::optional<Elimination> elimination;
  bool from_cache = false;
  std::vector<std::string> violations;

  std::size_t coclique_witness_size() const { return coclique_witness.size(); }
};

namespace detail {

inline bool disjoint_sorted(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b)
{
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    a[i] < b[j] ? ++i : ++j;
  }
  return true;
}

} // namespace detail

/// Degree, transitivity, Sylow incidence, clique and coclique bounds.
inline GammaStats clique_coclique(const GammaData& d, std::uint64_t seed = 0, std::size_t iterations = 20000)
{
  GammaStats s;
  s.from_cache = d.from_cache;
  const auto& g = d.graph;
  const std::size_t n = g.size();
  s.vertex_count = n;
  auto degrees = g.degree_sequence();
  if (!degrees.empty() && std::all_of(degrees.begin(), degrees.end(), [&](auto x) { return x == degrees[0]; }))
    s.regular_degree = degrees[0];

  // A_8 acts on the vertices by conjugation.
  std::vector<std::vector<std::uint32_t>> action;
  for (const auto& h : d.a8.generators()) {
    std::vector<std::uint32_t> img(n);
    for (std::size_t v = 0; v < n; ++v) {
      IdSet c = d.a8.conjugate_set(IdSet{d.vertex_rep[v]}, h);
      img[v] = static_cast<std::uint32_t>(d.vertex_of[c[0]]);
    }
    action.push_back(std::move(img));
  }
  s.conjugation_preserves_edges = true;
  for (const auto& img : action)
    for (std::size_t v = 0; v < n; ++v)
      g.neighbours(v).for_each([&](std::size_t u) {
        if (!g.adjacent(img[v], img[u])) s.conjugation_preserves_edges = false;
      });
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> queue{0};
  if (n) seen[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& img : action)
      if (!seen[img[queue[i]]]) {
        seen[img[queue[i]]] = 1;
        queue.push_back(img[queue[i]]);
      }
  s.vertex_transitive = queue.size() == n && s.conjugation_preserves_edges;

  s.sylow2_count = d.sylows.size();
  std::vector<std::size_t> per_vertex(n, 0);
  s.sylow_vertices_are_cliques = true;
  std::size_t largest = 0;
  bool uniform = true;
  for (const auto& vs : d.sylow_vertices) {
    std::vector<std::size_t> as_size(vs.begin(), vs.end());
    if (!g.is_clique(as_size)) s.sylow_vertices_are_cliques = false;
    largest = std::max(largest, vs.size());
    uniform = uniform && vs.size() == d.sylow_vertices[0].size();
    for (auto v : vs) ++per_vertex[v];
  }
  if (uniform && !d.sylow_vertices.empty()) s.vertices_per_sylow = d.sylow_vertices[0].size();
  if (n && std::all_of(per_vertex.begin(), per_vertex.end(), [&](auto x) { return x == per_vertex[0]; }))
    s.sylows_per_vertex = per_vertex[0];

  if (s.sylow_vertices_are_cliques) s.clique_lower_bound = largest;
  // independence number <= |V| / clique number for vertex-transitive graphs
  if (s.vertex_transitive && s.clique_lower_bound) s.coclique_upper_bound = n / s.clique_lower_bound;

  for (auto v : heuristic_independent_set(g, seed, iterations)) s.coclique_witness.push_back(static_cast<std::uint32_t>(v));
  // re-test every pair from the group elements, not the stored graph
  const AmbientBound bound = d.a8.ambient().bound();
  s.coclique_witness_verified = true;
  for (std::size_t i = 0; i < s.coclique_witness.size(); ++i)
    for (std::size_t j = i + 1; j < s.coclique_witness.size(); ++j)
      if (pair_nilpotent(d.a8.element(d.vertex_rep[s.coclique_witness[i]]),
                         d.a8.element(d.vertex_rep[s.coclique_witness[j]]), bound))
        s.coclique_witness_verified = false;

  if (!s.vertex_transitive) s.violations.push_back("gamma is not vertex-transitive");
  if (!s.sylow_vertices_are_cliques) s.violations.push_back("some Sylow 2-subgroup meets gamma in a non-clique");
  if (!s.coclique_witness_verified) s.violations.push_back("coclique witness is not independent");
  if (s.coclique_upper_bound && s.coclique_witness.size() > s.coclique_upper_bound)
    s.violations.push_back("coclique witness exceeds the clique-coclique bound");
  return s;
}

/// Tries to start a disjoint cover of the vertices by Sylow 2-subgroups from
/// P_1 = Sylow 0, for every g_0 outside P_1 lying in exactly two of the
/// Sylows still available, and both resulting choices of P_2.
inline Elimination elimination_steps(const GammaData& d)
{
  Elimination e;
  const auto& sv = d.sylow_vertices;
  const auto& p1 = sv.at(0);
  std::vector<std::size_t> remaining1;
  for (std::size_t i = 1; i < sv.size(); ++i)
    if (detail::disjoint_sorted(sv[i], p1)) remaining1.push_back(i);
  e.remaining_after_p1 = remaining1.size();

  const std::size_t n = d.graph.size();
  std::vector<std::vector<std::size_t>> holders(n);
  for (auto i : remaining1)
    for (auto v : sv[i]) holders[v].push_back(i);
  std::vector<std::uint32_t> qualifying;
  for (std::size_t v = 0; v < n; ++v) {
    if (std::binary_search(p1.begin(), p1.end(), static_cast<std::uint32_t>(v))) continue;
    ++e.g0_distribution[holders[v].size()];
    if (holders[v].size() == 2) qualifying.push_back(static_cast<std::uint32_t>(v));
  }
  if (!qualifying.empty()) e.g0_multiplicity = 2;

  std::vector<char> covered(n);
  for (auto g0 : qualifying)
    for (auto p2 : holders[g0]) {
      EliminationChoice c{g0, p2};
      std::fill(covered.begin(), covered.end(), 0);
      for (auto i : remaining1) {
        if (i == p2 || !detail::disjoint_sorted(sv[i], sv[p2])) continue;
        ++c.remaining_after_p2;
        for (auto v : sv[i]) covered[v] = 1;
      }
      c.vertices_in_remaining = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 1));
      e.choices.push_back(c);
    }

  // report the first choice reproducing the expected counts, else the first choice
  const EliminationChoice* pick = nullptr;
  for (const auto& c : e.choices)
    if (c.remaining_after_p2 == 247 && c.vertices_in_remaining == 600) {
      ++e.choices_matching;
      if (!pick) pick = &c;
    }
  if (!pick && !e.choices.empty()) pick = &e.choices.front();
  if (pick) {
    e.remaining_after_p2 = pick->remaining_after_p2;
    e.vertices_in_remaining = pick->vertices_in_remaining;
    std::vector<std::uint32_t> both = p1;
    both.insert(both.end(), sv[pick->p2].begin(), sv[pick->p2].end());
    std::sort(both.begin(), both.end());
    both.erase(std::unique(both.begin(), both.end()), both.end());
    e.vertices_in_p1p2 = both.size();
    e.max_coverable = e.vertices_in_remaining + e.vertices_in_p1p2;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Two facts about A_9.

struct A9Facts {
  std::string element;  // the 4^2 1^1 element used for fact (a)
  std::uint64_t centralizer_order = 0;
  bool fact_a = false;
  std::size_t sylow2_order = 0;
  std::size_t sylow2_count = 0;
  std::size_t min_multiplicity = 0;          // over the elements of one Sylow 2-subgroup
  std::map<std::string, std::size_t> min_multiplicity_by_type;
  std::size_t identity_multiplicity = 0;
  bool fact_b = false;
  bool from_cache = false;
};

/// Centralizer in S_9 of (0 1 2 3)(4 5 6 7), by scanning all of S_9.
inline std::uint64_t a9_centralizer_order(const ResourceLimits& limits = {})
{
  const Permutation g = Permutation::from_cycles(9, {{0, 1, 2, 3}, {4, 5, 6, 7}});
  std::uint64_t count = 0;
  const std::uint64_t total = factorial_u64(9);
  for (std::uint64_t r = 0; r < total; ++r) {
    if (r % 65536 == 0) limits.check("S_9 centralizer scan");
    count += commute(g, unrank(9, r));
  }
  return count;
}

inline A9Facts facts_a9(const ResourceLimits& limits = {}, const Cache& cache = {})
{
  A9Facts f;
  const Permutation g = Permutation::from_cycles(9, {{0, 1, 2, 3}, {4, 5, 6, 7}});
  f.element = to_cycle_string(g);
  f.centralizer_order = a9_centralizer_order(limits);
  f.fact_a = is_power_of(f.centralizer_order, 2);

  const std::string params = "facts-a9 v1 ambient=A9 sylow=2";
  RankSet base = rank_set(canonical_a8_sylow2(9));
  std::vector<RankSet> sylows;
  if (auto body = cache.load("facts-a9", params)) {
    std::istringstream in(*body);
    std::size_t count = 0;
    if (in >> count) {
      sylows.resize(count, RankSet(base.size()));
      for (auto& s : sylows)
        for (auto& x : s)
          if (!(in >> x)) count = 0;
    }
    if (count == 0 || sylows.empty() || sylows[0] != base) sylows.clear();
    f.from_cache = !sylows.empty();
  }
  if (sylows.empty()) {
    sylows = subgroup_conjugates(base, 9, alternating_conjugators(9), limits);
    std::ostringstream os;
    os << sylows.size() << '\n';
    for (const auto& s : sylows) {
      for (std::size_t k = 0; k < s.size(); ++k) os << (k ? " " : "") << s[k];
      os << '\n';
    }
    cache.store("facts-a9", params, os.str());
  }
  f.sylow2_order = base.size();
  f.sylow2_count = sylows.size();

  f.min_multiplicity = SIZE_MAX;
  for (auto r : base) {
    std::size_t m = 0;
    for (const auto& s : sylows) m += std::binary_search(s.begin(), s.end(), r);
    const Permutation x = unrank(9, r);
    f.min_multiplicity = std::min(f.min_multiplicity, m);
    auto key = cycle_type(x).to_string();
    auto it = f.min_multiplicity_by_type.find(key);
    if (it == f.min_multiplicity_by_type.end()) f.min_multiplicity_by_type.emplace(key, m);
    else it->second = std::min(it->second, m);
    if (x.is_identity()) f.identity_multiplicity = m;
  }
  f.fact_b = f.min_multiplicity >= 3;
  return f;
}

} // namespace nilcover
