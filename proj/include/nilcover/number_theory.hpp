#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nilcover {

using BigInt = boost::multiprecision::cpp_int;

inline bool is_prime(std::uint64_t n)
{
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Prime factorisation t = p_1^{a_1} ... p_l^{a_l} with p_1 < ... < p_l.
/// Empty for t = 1.
struct PrimePowerFactorization {
  std::vector<std::uint64_t> primes;        // PR(t)
  std::vector<std::uint64_t> prime_powers;  // PP(t)
  std::vector<unsigned> exponents;

  std::size_t size() const { return primes.size(); }
};

inline PrimePowerFactorization factorize(std::uint64_t t)
{
  if (t == 0) throw std::invalid_argument("factorize: t must be positive");
  PrimePowerFactorization f;
  for (std::uint64_t p = 2; p * p <= t; ++p) {
    if (t % p != 0) continue;
    unsigned a = 0;
    std::uint64_t q = 1;
    while (t % p == 0) {
      t /= p;
      q *= p;
      ++a;
    }
    f.primes.push_back(p);
    f.prime_powers.push_back(q);
    f.exponents.push_back(a);
  }
  if (t > 1) {
    f.primes.push_back(t);
    f.prime_powers.push_back(t);
    f.exponents.push_back(1);
  }
  return f;
}

/// |k|_p: the largest power of p dividing k.
inline std::uint64_t p_part(std::uint64_t k, std::uint64_t p)
{
  std::uint64_t r = 1;
  while (k != 0 && k % p == 0) {
    k /= p;
    r *= p;
  }
  return r;
}

/// |k|_{p'} = k / |k|_p.
inline std::uint64_t p_prime_part(std::uint64_t k, std::uint64_t p) { return k / p_part(k, p); }

inline bool is_power_of(std::uint64_t k, std::uint64_t p)
{
  if (k == 0) return false;
  while (k % p == 0) k /= p;
  return k == 1;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned e)
{
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

/// Largest power of p dividing n! (Legendre).
inline std::uint64_t factorial_p_part(unsigned n, std::uint64_t p)
{
  unsigned e = 0;
  for (std::uint64_t q = p; q <= n; q *= p) e += n / q;
  return ipow(p, e);
}

inline std::uint64_t factorial_u64(unsigned n)
{
  if (n > 20) throw std::overflow_error("factorial_u64: n! exceeds 64 bits");
  std::uint64_t r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

/// n! memoized across calls on one instance.
class FactorialTable {
public:
  const BigInt& operator()(unsigned n)
  {
    if (values_.empty()) values_.push_back(1);
    while (values_.size() <= n) values_.push_back(values_.back() * BigInt(values_.size()));
    return values_[n];
  }

private:
  std::vector<BigInt> values_;
};

} // namespace nilcover
