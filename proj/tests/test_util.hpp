#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <nilcover/perm.hpp>

namespace nilcover::testing {

inline Permutation random_permutation(std::size_t degree, std::mt19937_64& rng)
{
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation::from_images(img);
}

inline Permutation cyc(std::size_t degree, std::initializer_list<std::initializer_list<int>> cycles)
{
  return Permutation::from_cycles(degree, cycles);
}

} // namespace nilcover::testing
