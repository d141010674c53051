#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "group.hpp"
#include "perm.hpp"
#include "resources.hpp"

namespace nilcover {

enum class GroupKind { Symmetric, Alternating };

struct Ambient {
  GroupKind kind = GroupKind::Symmetric;
  std::size_t degree = 1;

  static Ambient sym(std::size_t n) { return {GroupKind::Symmetric, n}; }
  static Ambient alt(std::size_t n) { return {GroupKind::Alternating, n}; }

  std::string name() const { return (kind == GroupKind::Symmetric ? "S" : "A") + std::to_string(degree); }

  std::uint64_t order() const
  {
    std::uint64_t f = factorial_u64(static_cast<unsigned>(degree));
    return kind == GroupKind::Alternating && degree >= 2 ? f / 2 : f;
  }

  AmbientBound bound() const { return {order()}; }

  friend bool operator==(const Ambient&, const Ambient&) = default;
};

using ElementId = std::uint32_t;

/// Sorted element ids of a subgroup of an enumerated ambient group.
using IdSet = std::vector<ElementId>;

struct IdSetHash {
  std::size_t operator()(const IdSet& s) const noexcept
  {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : s) h = (h ^ x) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

/// S_n or A_n with every element enumerated and numbered in rank order.
class AmbientGroup {
public:
  explicit AmbientGroup(Ambient ambient, const ResourceLimits& limits = {}) : ambient_(ambient)
  {
    if (ambient.degree > 12) throw DegreeLimitExceeded(ambient.degree);
    if (ambient.order() > limits.max_ambient_order)
      throw ResourceLimitExceeded(ambient.name() + " exceeds the ambient order limit");
    const std::uint64_t n = factorial_u64(static_cast<unsigned>(ambient.degree));
    rank_to_id_.assign(n, -1);
    for (std::uint64_t r = 0; r < n; ++r) {
      Permutation p = unrank(ambient.degree, r);
      if (ambient.kind == GroupKind::Alternating && !is_even(p)) continue;
      rank_to_id_[r] = static_cast<std::int32_t>(elements_.size());
      elements_.push_back(p);
      orders_.push_back(static_cast<std::uint32_t>(element_order(p)));
    }
    GroupClosure g = ambient.kind == GroupKind::Symmetric ? symmetric_generators(ambient.degree)
                                                           : alternating_generators(ambient.degree);
    generators_ = g.generators();
  }

  const Ambient& ambient() const { return ambient_; }
  std::size_t size() const { return elements_.size(); }
  const Permutation& element(ElementId id) const { return elements_[id]; }
  const std::vector<Permutation>& elements() const { return elements_; }
  std::uint32_t order_of(ElementId id) const { return orders_[id]; }
  const std::vector<Permutation>& generators() const { return generators_; }

  std::optional<ElementId> find(const Permutation& p) const
  {
    if (p.degree() != ambient_.degree) return std::nullopt;
    auto id = rank_to_id_[rank(p)];
    if (id < 0) return std::nullopt;
    return static_cast<ElementId>(id);
  }

  ElementId id_of(const Permutation& p) const
  {
    auto id = find(p);
    if (!id) throw std::invalid_argument(to_cycle_string(p) + " is not in " + ambient_.name());
    return *id;
  }

  IdSet ids_of(std::span<const Permutation> perms) const
  {
    IdSet out;
    out.reserve(perms.size());
    for (const auto& p : perms) out.push_back(id_of(p));
    std::sort(out.begin(), out.end());
    return out;
  }

  GroupClosure to_closure(const IdSet& ids) const
  {
    std::vector<Permutation> elems;
    for (auto id : ids) elems.push_back(elements_[id]);
    return GroupClosure(ambient_.degree, {}, std::move(elems));
  }

  /// h^{-1} H h as ids.
  IdSet conjugate_set(const IdSet& h_ids, const Permutation& h) const
  {
    const Permutation hinv = h.inverse();
    IdSet out;
    out.reserve(h_ids.size());
    for (auto id : h_ids) out.push_back(id_of(hinv.then_unchecked(elements_[id]).then_unchecked(h)));
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The whole group as an id set.
  IdSet all_ids() const
  {
    IdSet out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = static_cast<ElementId>(i);
    return out;
  }

private:
  static GroupClosure symmetric_generators(std::size_t n)
  {
    std::vector<Permutation> gens;
    if (n >= 2) {
      gens.push_back(Permutation::from_cycles(n, {{0, 1}}));
      std::vector<int> c(n);
      std::iota(c.begin(), c.end(), 0);
      gens.push_back(Permutation::from_cycles(n, std::vector<std::vector<int>>{c}));
    }
    return GroupClosure(n, gens, {});
  }

  static GroupClosure alternating_generators(std::size_t n)
  {
    std::vector<Permutation> gens;
    for (std::size_t k = 2; k < n; ++k)
      gens.push_back(Permutation::from_cycles(n, {{0, 1, static_cast<int>(k)}}));
    return GroupClosure(n, gens, {});
  }

  Ambient ambient_;
  std::vector<Permutation> elements_;
  std::vector<std::uint32_t> orders_;
  std::vector<std::int32_t> rank_to_id_;
  std::vector<Permutation> generators_;
};

} // namespace nilcover
