#pragma once

#include <stdexcept>
#include <vector>

#include "number_theory.hpp"
#include "partitions.hpp"
#include "sylow.hpp"

namespace nilcover {

struct SigmaRow {
  DistinctPartition parts;
  BigInt class_size;
};

/// Size of the minimal nilpotent cover of S_n, one row per conjugacy class
/// of its members.
struct SigmaReport {
  unsigned n = 0;
  std::vector<SigmaRow> rows;
  BigInt total = 0;
  std::size_t gamma = 0;  // number of conjugacy classes, |DP(n)|
};

inline SigmaReport sigma_sn(unsigned n, FactorialTable& factorials)
{
  if (n == 0) throw std::invalid_argument("sigma_sn: n must be positive");
  SigmaReport report;
  report.n = n;
  for (auto& t : enumerate_dp(n)) {
    BigInt size = class_size(t, factorials);
    report.total += size;
    report.rows.push_back({std::move(t), std::move(size)});
  }
  report.gamma = report.rows.size();
  return report;
}

inline SigmaReport sigma_sn(unsigned n)
{
  FactorialTable f;
  return sigma_sn(n, f);
}

/// Reports for n = 2, ..., max_n.
inline std::vector<SigmaReport> sigma_table(unsigned max_n)
{
  if (max_n < 2) throw std::invalid_argument("sigma_table: max_n must be at least 2");
  FactorialTable f;
  std::vector<SigmaReport> out;
  for (unsigned n = 2; n <= max_n; ++n) out.push_back(sigma_sn(n, f));
  return out;
}

} // namespace nilcover
