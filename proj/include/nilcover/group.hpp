#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <variant>
#include <vector>

#include "number_theory.hpp"
#include "perm.hpp"

namespace nilcover {

/// An explicitly enumerated permutation group. Elements are kept sorted so
/// that equal groups compare equal and membership is a binary search.
class GroupClosure {
public:
  GroupClosure(std::size_t degree, std::vector<Permutation> generators,
               std::vector<Permutation> elements)
  : degree_(degree), generators_(std::move(generators)), elements_(std::move(elements))
  {
    std::sort(elements_.begin(), elements_.end());
  }

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& elements() const { return elements_; }

  bool contains(const Permutation& p) const
  {
    return std::binary_search(elements_.begin(), elements_.end(), p);
  }

  /// Same element set; generators may differ.
  bool same_elements(const GroupClosure& other) const { return elements_ == other.elements_; }

private:
  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

/// Closure stopped because it grew past the cap.
struct CapExceeded {
  std::size_t explored;
};

using ClosureResult = std::variant<GroupClosure, CapExceeded>;

namespace detail {

// Breadth-first products by generators. Returns nullopt (and the explored
// count) once the element count exceeds cap. Small caps use a flat vector.
inline std::optional<std::vector<Permutation>> enumerate(std::span<const Permutation> gens,
                                                         std::size_t degree, std::size_t cap,
                                                         std::size_t& explored)
{
  std::vector<Permutation> elems{Permutation(degree)};
  if (cap <= 256) {
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (const auto& g : gens) {
        Permutation x = elems[i].then_unchecked(g);
        if (std::find(elems.begin(), elems.end(), x) != elems.end()) continue;
        elems.push_back(x);
        if (elems.size() > cap) {
          explored = elems.size();
          return std::nullopt;
        }
      }
    }
  } else {
    std::unordered_set<Permutation, PermutationHash> seen{elems[0]};
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (const auto& g : gens) {
        Permutation x = elems[i].then_unchecked(g);
        if (!seen.insert(x).second) continue;
        elems.push_back(x);
        if (elems.size() > cap) {
          explored = elems.size();
          return std::nullopt;
        }
      }
    }
  }
  explored = elems.size();
  return elems;
}

} // namespace detail

/// The group generated by gens. With a cap, returns CapExceeded as soon as
/// more than cap elements have been found.
inline ClosureResult closure(std::span<const Permutation> gens, std::size_t degree,
                             std::optional<std::size_t> cap = std::nullopt)
{
  for (const auto& g : gens)
    if (g.degree() != degree) throw DegreeMismatch(g.degree(), degree);
  std::size_t explored = 0;
  auto elems = detail::enumerate(gens, degree, cap.value_or(SIZE_MAX), explored);
  if (!elems) return CapExceeded{explored};
  return GroupClosure(degree, {gens.begin(), gens.end()}, std::move(*elems));
}

/// closure() without a cap.
inline GroupClosure generate(std::span<const Permutation> gens, std::size_t degree)
{
  return std::get<GroupClosure>(closure(gens, degree));
}

inline GroupClosure generate(std::initializer_list<Permutation> gens, std::size_t degree)
{
  return generate(std::span<const Permutation>(gens.begin(), gens.size()), degree);
}

/// Order of <gens> if it is at most cap.
inline std::optional<std::size_t> bounded_order(std::span<const Permutation> gens, std::size_t degree,
                                                std::size_t cap)
{
  std::size_t explored = 0;
  auto elems = detail::enumerate(gens, degree, cap, explored);
  if (!elems) return std::nullopt;
  return elems->size();
}

/// Distinct primes dividing the order of G.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) { return factorize(n).primes; }

/// A finite group is nilpotent iff each Sylow subgroup is normal, i.e. for
/// every prime p the p-elements form a subgroup. That happens exactly when
/// there are |G|_p of them.
inline bool is_nilpotent(const GroupClosure& g)
{
  const std::uint64_t n = g.order();
  for (std::uint64_t p : prime_divisors(n)) {
    std::uint64_t count = 0;
    for (const auto& x : g.elements())
      if (is_power_of(element_order(x), p)) ++count;
    if (count != p_part(n, p)) return false;
  }
  return true;
}

/// Nilpotency via the lower central series G = G_1 > [G_1, G] > ... ;
/// nilpotent iff it reaches the trivial group. Independent of is_nilpotent.
inline bool is_nilpotent_lcs(const GroupClosure& g)
{
  std::vector<Permutation> current = g.elements();
  for (;;) {
    if (current.size() == 1) return true;
    std::unordered_set<Permutation, PermutationHash> comms;
    for (const auto& h : current)
      for (const auto& x : g.elements()) {
        Permutation c = h.inverse().then_unchecked(x.inverse()).then_unchecked(h).then_unchecked(x);
        comms.insert(c);
      }
    std::vector<Permutation> gens(comms.begin(), comms.end());
    std::sort(gens.begin(), gens.end());
    GroupClosure next = generate(gens, g.degree());
    if (next.order() == current.size()) return false;
    current = next.elements();
  }
}

/// Largest power of p dividing the ambient order; bounds any p-subgroup.
struct AmbientBound {
  std::uint64_t ambient_order;

  static AmbientBound symmetric(std::size_t degree) { return {factorial_u64(static_cast<unsigned>(degree))}; }
  static AmbientBound alternating(std::size_t degree)
  {
    return {degree < 2 ? 1 : factorial_u64(static_cast<unsigned>(degree)) / 2};
  }

  std::uint64_t p_bound(std::uint64_t p) const { return p_part(ambient_order, p); }
};

/// x^k with k = 1 mod |m|_p and 0 mod |m|_{p'}: the p-part of x.
inline Permutation element_p_part(const Permutation& x, std::uint64_t order, std::uint64_t p)
{
  const std::uint64_t f = p_part(order, p);
  const std::uint64_t d = order / f;
  // k = d * (d^{-1} mod f)
  std::uint64_t inv = 1;
  for (std::uint64_t k = 1; k <= f; ++k)
    if ((d * k) % f == 1 % f) {
      inv = k;
      break;
    }
  return power(x, static_cast<long long>((d * inv) % order));
}

/// Is <x, y> nilpotent?
///
/// A group is nilpotent iff it is the direct product of its Sylow subgroups.
/// For G = <x, y> write x = prod x_p, y = prod y_p for the prime parts.
/// G is nilpotent iff x_p commutes with y_q whenever p != q and every
/// <x_p, y_p> is a p-group. That gives two early exits: elements of coprime
/// order that do not commute, and p-element pairs whose closure outgrows the
/// ambient bound |G|_p.
inline bool pair_nilpotent(const Permutation& x, const Permutation& y,
                           std::optional<AmbientBound> ambient = std::nullopt)
{
  if (x.degree() != y.degree()) throw DegreeMismatch(x.degree(), y.degree());
  if (commute(x, y)) return true;
  const std::uint64_t mx = element_order(x);
  const std::uint64_t my = element_order(y);
  if (std::gcd(mx, my) == 1) return false;
  const AmbientBound bound = ambient.value_or(AmbientBound::symmetric(x.degree()));

  auto fx = factorize(mx);
  auto fy = factorize(my);
  std::vector<Permutation> xp;
  std::vector<Permutation> yp;
  for (auto p : fx.primes) xp.push_back(element_p_part(x, mx, p));
  for (auto q : fy.primes) yp.push_back(element_p_part(y, my, q));

  for (std::size_t i = 0; i < fx.size(); ++i)
    for (std::size_t j = 0; j < fy.size(); ++j)
      if (fx.primes[i] != fy.primes[j] && !commute(xp[i], yp[j])) return false;

  for (std::size_t i = 0; i < fx.size(); ++i)
    for (std::size_t j = 0; j < fy.size(); ++j) {
      if (fx.primes[i] != fy.primes[j] || commute(xp[i], yp[j])) continue;
      const std::uint64_t p = fx.primes[i];
      const Permutation gens[] = {xp[i], yp[j]};
      auto order = bounded_order(gens, x.degree(), bound.p_bound(p));
      if (!order || !is_power_of(*order, p)) return false;
    }
  return true;
}

/// {h in H : hg = gh}
inline GroupClosure centralizer(const Permutation& g, const GroupClosure& h)
{
  if (g.degree() != h.degree()) throw DegreeMismatch(g.degree(), h.degree());
  std::vector<Permutation> elems;
  for (const auto& x : h.elements())
    if (commute(x, g)) elems.push_back(x);
  return GroupClosure(h.degree(), {}, std::move(elems));
}

/// All permutations of the given degree, in rank order.
inline GroupClosure symmetric_group(std::size_t degree)
{
  std::vector<Permutation> elems;
  const std::uint64_t n = factorial_u64(static_cast<unsigned>(degree));
  elems.reserve(n);
  for (std::uint64_t r = 0; r < n; ++r) elems.push_back(unrank(degree, r));
  std::vector<Permutation> gens;
  if (degree >= 2) {
    gens.push_back(Permutation::from_cycles(degree, {{0, 1}}));
    std::vector<int> cyc(degree);
    std::iota(cyc.begin(), cyc.end(), 0);
    gens.push_back(Permutation::from_cycles(degree, std::vector<std::vector<int>>{cyc}));
  }
  return GroupClosure(degree, std::move(gens), std::move(elems));
}

inline GroupClosure alternating_group(std::size_t degree)
{
  std::vector<Permutation> elems;
  const std::uint64_t n = factorial_u64(static_cast<unsigned>(degree));
  for (std::uint64_t r = 0; r < n; ++r) {
    Permutation p = unrank(degree, r);
    if (is_even(p)) elems.push_back(p);
  }
  std::vector<Permutation> gens;
  for (std::size_t k = 2; k < degree; ++k)
    gens.push_back(Permutation::from_cycles(degree, {{0, 1, static_cast<int>(k)}}));
  return GroupClosure(degree, std::move(gens), std::move(elems));
}

} // namespace nilcover
