#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

#include "resources.hpp"

namespace nilcover {

/// Fixed-size bitset with the handful of set operations the solvers need.
class Bitset {
public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static Bitset full(std::size_t n)
  {
    Bitset b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i);
    return b;
  }

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const
  {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool any() const
  {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }

  Bitset& operator&=(const Bitset& o)
  {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  Bitset& operator|=(const Bitset& o)
  {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  /// this &= ~o
  Bitset& subtract(const Bitset& o)
  {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  /// |this & o|
  std::size_t count_and(const Bitset& o) const
  {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k)
      c += static_cast<std::size_t>(std::popcount(words_[k] & o.words_[k]));
    return c;
  }

  /// this is a subset of o
  bool subset_of(const Bitset& o) const
  {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  template <class F>
  void for_each(F&& f) const
  {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const
  {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Undirected graph without loops; in this library an edge joins two
/// vertices (elements or cyclic subgroups) that generate a nilpotent group.
class NilpotencyGraph {
public:
  NilpotencyGraph() = default;
  explicit NilpotencyGraph(std::size_t n) : adj_(n, Bitset(n)) {}

  /// Evaluates edge(i, j) for every i < j. Rows are split across threads;
  /// the result does not depend on the thread count.
  static NilpotencyGraph build(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& edge,
                               const ResourceLimits& limits = {})
  {
    NilpotencyGraph g(n);
    const unsigned threads = std::max(1u, limits.threads);
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> found(threads);
    auto work = [&](unsigned t) {
      for (std::size_t i = t; i < n; i += threads) {
        if (t == 0 && i % 64 == 0) limits.check("nilpotency graph construction");
        for (std::size_t j = i + 1; j < n; ++j)
          if (edge(i, j)) found[t].emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    for (const auto& part : found)
      for (auto [i, j] : part) g.add_edge(i, j);
    return g;
  }

  std::size_t size() const { return adj_.size(); }
  void add_edge(std::size_t i, std::size_t j)
  {
    if (i == j) return;
    adj_[i].set(j);
    adj_[j].set(i);
  }
  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i].test(j); }
  const Bitset& neighbours(std::size_t i) const { return adj_[i]; }
  std::size_t degree(std::size_t i) const { return adj_[i].count(); }

  std::vector<std::size_t> degree_sequence() const
  {
    std::vector<std::size_t> d(size());
    for (std::size_t i = 0; i < size(); ++i) d[i] = degree(i);
    return d;
  }

  std::size_t edge_count() const
  {
    std::size_t e = 0;
    for (const auto& row : adj_) e += row.count();
    return e / 2;
  }

  bool symmetric_and_loopless() const
  {
    for (std::size_t i = 0; i < size(); ++i) {
      if (adj_[i].test(i)) return false;
      bool ok = true;
      adj_[i].for_each([&](std::size_t j) { ok = ok && adj_[j].test(i); });
      if (!ok) return false;
    }
    return true;
  }

  bool is_independent(const std::vector<std::size_t>& set) const
  {
    for (std::size_t a = 0; a < set.size(); ++a)
      for (std::size_t b = a + 1; b < set.size(); ++b)
        if (set[a] == set[b] || adjacent(set[a], set[b])) return false;
    return true;
  }

  bool is_clique(const std::vector<std::size_t>& set) const
  {
    for (std::size_t a = 0; a < set.size(); ++a)
      for (std::size_t b = a + 1; b < set.size(); ++b)
        if (!adjacent(set[a], set[b])) return false;
    return true;
  }

private:
  std::vector<Bitset> adj_;
};

struct IndependentSetResult {
  std::vector<std::size_t> witness;  // ascending
  std::size_t upper_bound = 0;
  bool exact = false;
  std::size_t reduced = 0;        // vertices fixed by simplicial reductions
  std::size_t kernel = 0;         // vertices left for branch and bound
  std::size_t search_nodes = 0;

  std::size_t size() const { return witness.size(); }
};

namespace detail {

// Greedy partition of the candidates into cliques; an independent set
// meets each clique at most once.
inline std::size_t clique_partition_bound(const NilpotencyGraph& g, const Bitset& cand)
{
  std::vector<Bitset> commons;
  cand.for_each([&](std::size_t v) {
    for (auto& c : commons)
      if (c.test(v)) {
        c &= g.neighbours(v);
        return;
      }
    Bitset c = g.neighbours(v);
    c &= cand;
    commons.push_back(std::move(c));
  });
  return commons.size();
}

struct MisSearch {
  const NilpotencyGraph& g;
  const ResourceLimits& limits;
  std::vector<std::size_t> current;
  std::vector<std::size_t> best;
  std::size_t nodes = 0;
  bool aborted = false;

  void run(Bitset cand)
  {
    if (aborted) return;
    if (++nodes > limits.max_search_nodes || (nodes % 4096 == 0 && limits.expired())) {
      aborted = true;
      return;
    }
    if (!cand.any()) {
      if (current.size() > best.size()) best = current;
      return;
    }
    if (current.size() + clique_partition_bound(g, cand) <= best.size()) return;
    // branch on a vertex of least degree within the candidates
    std::size_t v = 0;
    std::size_t best_deg = SIZE_MAX;
    cand.for_each([&](std::size_t u) {
      std::size_t d = g.neighbours(u).count_and(cand);
      if (d < best_deg) {
        best_deg = d;
        v = u;
      }
    });
    // some maximum independent set contains v or one of its neighbours
    std::vector<std::size_t> choices{v};
    Bitset nb = g.neighbours(v);
    nb &= cand;
    nb.for_each([&](std::size_t u) { choices.push_back(u); });
    Bitset remaining = cand;
    for (std::size_t u : choices) {
      Bitset next = remaining;
      next.reset(u);
      next.subtract(g.neighbours(u));
      current.push_back(u);
      run(std::move(next));
      current.pop_back();
      remaining.reset(u);  // later branches exclude u
      if (aborted) return;
    }
  }
};

} // namespace detail

/// Maximum independent set. Simplicial vertices (closed neighbourhood is a
/// clique) are taken greedily, which is always optimal; what remains is
/// solved by branch and bound with a clique-partition bound. When the node
/// or time budget runs out the result is marked inexact and carries an upper
/// bound.
inline IndependentSetResult max_independent_set(const NilpotencyGraph& g, const ResourceLimits& limits = {})
{
  IndependentSetResult out;
  Bitset alive = Bitset::full(g.size());
  std::vector<std::size_t> taken;

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!alive.test(v)) continue;
      Bitset nb = g.neighbours(v);
      nb &= alive;
      bool simplicial = true;
      nb.for_each([&](std::size_t u) {
        if (!simplicial) return;
        Bitset rest = nb;
        rest.reset(u);
        simplicial = rest.subset_of(g.neighbours(u));
      });
      if (!simplicial) continue;
      taken.push_back(v);
      alive.reset(v);
      alive.subtract(nb);
      changed = true;
    }
    limits.check("independent set reduction");
  }
  out.reduced = taken.size();
  out.kernel = alive.count();

  detail::MisSearch search{g, limits, {}, {}, 0, false};
  if (alive.any()) search.run(alive);
  out.search_nodes = search.nodes;
  out.witness = taken;
  out.witness.insert(out.witness.end(), search.best.begin(), search.best.end());
  std::sort(out.witness.begin(), out.witness.end());
  out.exact = !search.aborted;
  out.upper_bound = out.exact ? out.witness.size() : taken.size() + detail::clique_partition_bound(g, alive);
  return out;
}

/// Large independent set by iterated local search: greedy start, then
/// (1,2)-swaps (drop one vertex, add two) and random forced insertions.
/// Deterministic for a given seed.
inline std::vector<std::size_t> heuristic_independent_set(const NilpotencyGraph& g, std::uint64_t seed,
                                                          std::size_t iterations = 20000)
{
  const std::size_t n = g.size();
  std::mt19937_64 rng(seed);
  std::vector<char> in(n, 0);
  std::vector<std::size_t> tight(n, 0);  // solution neighbours of each vertex

  auto add = [&](std::size_t v) {
    in[v] = 1;
    g.neighbours(v).for_each([&](std::size_t u) { ++tight[u]; });
  };
  auto remove = [&](std::size_t v) {
    in[v] = 0;
    g.neighbours(v).for_each([&](std::size_t u) { --tight[u]; });
  };
  auto fill_free = [&](std::vector<std::size_t>& order) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t v : order)
      if (!in[v] && tight[v] == 0) add(v);
  };
  auto size = [&] { return static_cast<std::size_t>(std::count(in.begin(), in.end(), 1)); };

  // (1,2)-swap: remove x, add two non-adjacent 1-tight neighbours of x.
  auto two_improve = [&]() {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t x = 0; x < n && !improved; ++x) {
        if (!in[x]) continue;
        std::vector<std::size_t> one_tight;
        g.neighbours(x).for_each([&](std::size_t u) {
          if (!in[u] && tight[u] == 1) one_tight.push_back(u);
        });
        for (std::size_t a = 0; a < one_tight.size() && !improved; ++a)
          for (std::size_t b = a + 1; b < one_tight.size() && !improved; ++b)
            if (!g.adjacent(one_tight[a], one_tight[b])) {
              remove(x);
              add(one_tight[a]);
              add(one_tight[b]);
              improved = true;
            }
      }
    }
  };

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  fill_free(order);
  two_improve();
  std::vector<char> best = in;
  std::size_t best_size = size();

  for (std::size_t it = 0; it < iterations; ++it) {
    // perturb: force one or two random outsiders in
    const std::size_t forced = (it % 8 == 7) ? 2 : 1;
    for (std::size_t k = 0; k < forced; ++k) {
      std::size_t v = rng() % n;
      if (in[v]) continue;
      g.neighbours(v).for_each([&](std::size_t u) {
        if (in[u]) remove(u);
      });
      add(v);
    }
    fill_free(order);
    two_improve();
    const std::size_t s = size();
    if (s > best_size) {
      best_size = s;
      best = in;
    } else if (s + 1 < best_size || (s < best_size && rng() % 4 != 0)) {
      // fall back to the best solution found so far
      for (std::size_t v = 0; v < n; ++v)
        if (in[v] && !best[v]) remove(v);
      for (std::size_t v = 0; v < n; ++v)
        if (!in[v] && best[v]) add(v);
    }
  }

  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n; ++v)
    if (best[v]) out.push_back(v);
  return out;
}

} // namespace nilcover
