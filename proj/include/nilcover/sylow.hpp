#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "group.hpp"
#include "number_theory.hpp"
#include "partitions.hpp"
#include "perm.hpp"

namespace nilcover {

/// A permutation group given by generators on {0, ..., degree-1}.
struct GeneratorSet {
  std::size_t degree = 1;
  std::vector<Permutation> generators;

  GroupClosure close() const { return generate(generators, degree); }
};

/// Generators w_1, ..., w_a of a Sylow p-subgroup of S_{p^a}. w_k rotates
/// the p consecutive blocks of size p^{k-1} inside {0, ..., p^k - 1}.
inline GeneratorSet sylow_gens(unsigned p, unsigned a)
{
  if (!is_prime(p)) throw std::invalid_argument("sylow_gens: p is not prime");
  if (a == 0) throw std::invalid_argument("sylow_gens: exponent must be positive");
  std::uint64_t q = 1;
  for (unsigned k = 0; k < a; ++k) {
    q *= p;
    if (q > kMaxDegree) throw DegreeLimitExceeded(q);
  }
  GeneratorSet out{static_cast<std::size_t>(q), {}};
  std::uint64_t block = 1;
  for (unsigned k = 1; k <= a; ++k) {
    const std::uint64_t span = block * p;
    std::vector<int> img(q);
    std::iota(img.begin(), img.end(), 0);
    for (std::uint64_t i = 0; i < span; ++i) img[i] = static_cast<int>((i + block) % span);
    out.generators.push_back(Permutation::from_images(img));
    block = span;
  }
  return out;
}

/// Order of a Sylow p-subgroup of S_{p^a}: p^{(p^a - 1)/(p - 1)}.
inline BigInt sylow_order(unsigned p, unsigned a)
{
  const std::uint64_t e = (ipow(p, a) - 1) / (p - 1);
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= p;
  return r;
}

/// G x. H: G x H acting on pairs (x, y), identified with x * |H-degree| + y.
inline GeneratorSet dot_product(const GeneratorSet& a, const GeneratorSet& b)
{
  const std::size_t m = a.degree;
  const std::size_t n = b.degree;
  if (m * n > kMaxDegree) throw DegreeLimitExceeded(m * n);
  GeneratorSet out{m * n, {}};
  for (const auto& g : a.generators) {
    std::vector<int> img(m * n);
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < n; ++y) img[x * n + y] = static_cast<int>(g[x] * n + y);
    out.generators.push_back(Permutation::from_images(img));
  }
  for (const auto& h : b.generators) {
    std::vector<int> img(m * n);
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < n; ++y) img[x * n + y] = static_cast<int>(x * n + h[y]);
    out.generators.push_back(Permutation::from_images(img));
  }
  return out;
}

/// Moves p onto the block {offset, ..., offset + p.degree() - 1} of a larger degree.
inline Permutation embed(const Permutation& p, std::size_t offset, std::size_t degree)
{
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  for (std::size_t i = 0; i < p.degree(); ++i) img[offset + i] = static_cast<int>(offset + p[i]);
  return Permutation::from_images(img);
}

/// The maximal nilpotent subgroup attached to a distinct partition T: a
/// direct product over the parts t of T (ascending, on consecutive blocks)
/// of the dot product of Sylow subgroups of S_q for q in PP(t).
struct CanonicalNilpotent {
  DistinctPartition parts;
  std::vector<std::vector<Point>> orbit_blocks;
  GeneratorSet group;
  BigInt order;
};

/// Transitive nilpotent group on t points: dot product over PP(t).
inline GeneratorSet transitive_nilpotent(unsigned t)
{
  GeneratorSet acc{1, {}};
  auto f = factorize(t);
  for (std::size_t i = 0; i < f.size(); ++i)
    acc = dot_product(acc, sylow_gens(static_cast<unsigned>(f.primes[i]), f.exponents[i]));
  return acc;
}

inline CanonicalNilpotent canonical_nilpotent(const DistinctPartition& t)
{
  const std::size_t n = t.n();
  if (n > kMaxDegree) throw DegreeLimitExceeded(n);
  CanonicalNilpotent out{t, {}, {n, {}}, 1};
  std::size_t offset = 0;
  for (unsigned part : t.parts()) {
    std::vector<Point> block(part);
    std::iota(block.begin(), block.end(), static_cast<Point>(offset));
    out.orbit_blocks.push_back(block);
    for (const auto& g : transitive_nilpotent(part).generators)
      out.group.generators.push_back(embed(g, offset, n));
    auto f = factorize(part);
    for (std::size_t i = 0; i < f.size(); ++i)
      out.order *= sylow_order(static_cast<unsigned>(f.primes[i]), f.exponents[i]);
    offset += part;
  }
  return out;
}

/// A permutation of cycle type T inside canonical_nilpotent(T). The product
/// w_1 w_2 ... w_a of the Sylow generators is a q-cycle (an odometer), and
/// the dot product of q-cycles for coprime q is a t-cycle.
inline Permutation canonical_element(const CanonicalNilpotent& n)
{
  Permutation g(n.group.degree);
  for (const auto& w : n.group.generators) g = g * w;
  return g;
}

/// |N_{S_t}(N_t)| = prod over p^a || t of (p - 1)^a p^{(p^a - 1)/(p - 1)}; 1 for t = 1.
inline BigInt normalizer_order_part(unsigned t)
{
  BigInt r = 1;
  auto f = factorize(t);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const unsigned p = static_cast<unsigned>(f.primes[i]);
    const unsigned a = f.exponents[i];
    for (unsigned k = 0; k < a; ++k) r *= (p - 1);
    r *= sylow_order(p, a);
  }
  return r;
}

/// Number of conjugates of canonical_nilpotent(T) in S_n: n! / prod normalizer_order_part(t).
inline BigInt class_size(const DistinctPartition& t, FactorialTable& factorials)
{
  BigInt denom = 1;
  for (unsigned part : t.parts()) denom *= normalizer_order_part(part);
  const BigInt& num = factorials(t.n());
  if (num % denom != 0) throw std::logic_error("class_size: non-exact division for " + t.to_string());
  return num / denom;
}

inline BigInt class_size(const DistinctPartition& t)
{
  FactorialTable f;
  return class_size(t, f);
}

} // namespace nilcover
