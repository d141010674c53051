#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cycle_type.hpp"
#include "number_theory.hpp"

namespace nilcover {

/// Largest degree a Permutation can carry.
inline constexpr std::size_t kMaxDegree = 16;

using Point = std::uint8_t;

class DegreeMismatch : public std::invalid_argument {
public:
  DegreeMismatch(std::size_t a, std::size_t b)
  : std::invalid_argument("permutation degree mismatch: " + std::to_string(a) + " vs " +
                          std::to_string(b))
  {}
};

class DegreeLimitExceeded : public std::invalid_argument {
public:
  explicit DegreeLimitExceeded(std::size_t degree)
  : std::invalid_argument("degree " + std::to_string(degree) + " exceeds limit " +
                          std::to_string(kMaxDegree))
  {}
};

/// A bijection of {0, ..., degree-1}; entry i is the image of point i.
/// Products act on the right: (p * q) applies p first, then q, so that
/// x^(pq) = (x^p)^q.
class Permutation {
public:
  Permutation() = default;

  /// Identity of the given degree.
  explicit Permutation(std::size_t degree) : degree_(checked_degree(degree))
  {
    for (std::size_t i = 0; i < degree; ++i) images_[i] = static_cast<Point>(i);
  }

  static Permutation from_images(std::span<const int> images)
  {
    Permutation p(images.size());
    std::array<bool, kMaxDegree> seen{};
    for (std::size_t i = 0; i < images.size(); ++i) {
      int v = images[i];
      if (v < 0 || static_cast<std::size_t>(v) >= images.size() || seen[v])
        throw std::invalid_argument("Permutation: images are not a bijection");
      seen[v] = true;
      p.images_[i] = static_cast<Point>(v);
    }
    return p;
  }

  static Permutation from_images(std::initializer_list<int> images)
  {
    return from_images(std::span<const int>(images.begin(), images.size()));
  }

  /// Builds a permutation from disjoint cycles, e.g. {{0, 1, 2}, {3, 4}}.
  static Permutation from_cycles(std::size_t degree,
                                 std::initializer_list<std::initializer_list<int>> cycles)
  {
    std::vector<std::vector<int>> c;
    for (auto cyc : cycles) c.emplace_back(cyc);
    return from_cycles(degree, c);
  }

  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<int>>& cycles)
  {
    Permutation p(degree);
    std::array<bool, kMaxDegree> moved{};
    for (const auto& cyc : cycles) {
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        int a = cyc[k];
        int b = cyc[(k + 1) % cyc.size()];
        if (a < 0 || static_cast<std::size_t>(a) >= degree || b < 0 ||
            static_cast<std::size_t>(b) >= degree || moved[a])
          throw std::invalid_argument("Permutation: cycles are not disjoint or out of range");
        moved[a] = true;
        p.images_[a] = static_cast<Point>(b);
      }
    }
    return p;
  }

  std::size_t degree() const { return degree_; }
  Point operator[](std::size_t i) const { return images_[i]; }
  std::span<const Point> images() const { return {images_.data(), degree_}; }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < degree_; ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const
  {
    Permutation r = *this;
    for (std::size_t i = 0; i < degree_; ++i) r.images_[images_[i]] = static_cast<Point>(i);
    return r;
  }

  /// Permutation::compose without the degree check, for inner loops.
  Permutation then_unchecked(const Permutation& q) const
  {
    Permutation r;
    r.degree_ = degree_;
    for (std::size_t i = 0; i < degree_; ++i) r.images_[i] = q.images_[images_[i]];
    return r;
  }

  std::size_t hash() const
  {
    std::uint64_t lo;
    std::uint64_t hi;
    std::memcpy(&lo, images_.data(), 8);
    std::memcpy(&hi, images_.data() + 8, 8);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull + (lo << 6));
    h ^= h >> 31;
    return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull) ^ degree_;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  static std::uint8_t checked_degree(std::size_t degree)
  {
    if (degree > kMaxDegree) throw DegreeLimitExceeded(degree);
    return static_cast<std::uint8_t>(degree);
  }

  // Unused tail entries stay zero so that defaulted comparison and hashing
  // only see the meaningful prefix.
  std::array<Point, kMaxDegree> images_{};
  std::uint8_t degree_ = 0;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept { return p.hash(); }
};

/// Apply p, then q.
inline Permutation compose(const Permutation& p, const Permutation& q)
{
  if (p.degree() != q.degree()) throw DegreeMismatch(p.degree(), q.degree());
  return p.then_unchecked(q);
}

inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

inline Permutation power(const Permutation& p, long long k)
{
  Permutation base = k < 0 ? p.inverse() : p;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
  Permutation result(p.degree());
  while (e > 0) {
    if (e & 1) result = result.then_unchecked(base);
    base = base.then_unchecked(base);
    e >>= 1;
  }
  return result;
}

/// p^h = h^{-1} p h.
inline Permutation conjugate(const Permutation& p, const Permutation& h)
{
  if (p.degree() != h.degree()) throw DegreeMismatch(p.degree(), h.degree());
  return h.inverse().then_unchecked(p).then_unchecked(h);
}

inline bool commute(const Permutation& a, const Permutation& b)
{
  for (std::size_t i = 0; i < a.degree(); ++i)
    if (b[a[i]] != a[b[i]]) return false;
  return true;
}

/// Disjoint cycles including fixed points, each starting at its least point.
inline std::vector<std::vector<Point>> cycles(const Permutation& p)
{
  std::vector<std::vector<Point>> out;
  std::array<bool, kMaxDegree> seen{};
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    std::vector<Point> c;
    for (Point x = static_cast<Point>(i); !seen[x]; x = p[x]) {
      seen[x] = true;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline CycleType cycle_type(const Permutation& p)
{
  std::vector<unsigned> lens;
  for (const auto& c : cycles(p)) lens.push_back(static_cast<unsigned>(c.size()));
  return CycleType(std::move(lens));
}

inline std::uint64_t element_order(const Permutation& p)
{
  std::uint64_t m = 1;
  std::array<bool, kMaxDegree> seen{};
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (Point x = static_cast<Point>(i); !seen[x]; x = p[x]) {
      seen[x] = true;
      ++len;
    }
    m = std::lcm(m, len);
  }
  return m;
}

inline bool is_even(const Permutation& p)
{
  std::size_t transpositions = 0;
  for (const auto& c : cycles(p)) transpositions += c.size() - 1;
  return transpositions % 2 == 0;
}

/// "(0 1 2)(3 4)"; "()" for the identity.
inline std::string to_cycle_string(const Permutation& p)
{
  std::string s;
  for (const auto& c : cycles(p)) {
    if (c.size() == 1) continue;
    s += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) s += ' ';
      s += std::to_string(c[k]);
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

inline std::ostream& operator<<(std::ostream& os, const Permutation& p)
{
  return os << to_cycle_string(p);
}

/// Lexicographic rank of p among all permutations of its degree.
inline std::uint64_t rank(const Permutation& p)
{
  const std::size_t n = p.degree();
  std::uint64_t r = 0;
  std::uint32_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    unsigned smaller = static_cast<unsigned>(std::popcount(used & ((1u << p[i]) - 1)));
    r = r * (n - i) + (p[i] - smaller);
    used |= 1u << p[i];
  }
  return r;
}

inline Permutation unrank(std::size_t degree, std::uint64_t r)
{
  std::vector<unsigned> digits(degree);
  for (std::size_t i = degree; i-- > 0;) {
    std::uint64_t base = degree - i;
    digits[i] = static_cast<unsigned>(r % base);
    r /= base;
  }
  std::vector<int> pool(degree);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> img(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    img[i] = pool[digits[i]];
    pool.erase(pool.begin() + digits[i]);
  }
  return Permutation::from_images(img);
}

/// Orbits of the group generated by gens on {0, ..., degree-1}, each sorted,
/// listed by least point.
inline std::vector<std::vector<Point>> orbits(std::span<const Permutation> gens, std::size_t degree)
{
  std::vector<std::size_t> parent(degree);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : gens) {
    if (g.degree() != degree) throw DegreeMismatch(g.degree(), degree);
    for (std::size_t i = 0; i < degree; ++i) {
      auto a = find(i);
      auto b = find(g[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<Point>> out;
  std::vector<int> slot(degree, -1);
  for (std::size_t i = 0; i < degree; ++i) {
    auto r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(static_cast<Point>(i));
  }
  return out;
}

} // namespace nilcover
