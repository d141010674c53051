#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cycle_type.hpp"

namespace nilcover {

/// A set of distinct positive integers, stored ascending.
class DistinctPartition {
public:
  DistinctPartition() = default;

  explicit DistinctPartition(std::vector<unsigned> parts) : parts_(std::move(parts))
  {
    std::sort(parts_.begin(), parts_.end());
    if (parts_.empty()) throw std::invalid_argument("DistinctPartition: no parts");
    if (parts_.front() == 0) throw std::invalid_argument("DistinctPartition: zero part");
    if (std::adjacent_find(parts_.begin(), parts_.end()) != parts_.end())
      throw std::invalid_argument("DistinctPartition: repeated part");
  }

  const std::vector<unsigned>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  unsigned n() const { return std::accumulate(parts_.begin(), parts_.end(), 0u); }

  CycleType as_cycle_type() const { return CycleType(parts_); }

  /// "{1,2,6}"
  std::string to_string() const
  {
    std::string s = "{";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const DistinctPartition&, const DistinctPartition&) = default;
  friend auto operator<=>(const DistinctPartition&, const DistinctPartition&) = default;

private:
  std::vector<unsigned> parts_;
};

namespace detail {

inline void distinct_parts_rec(unsigned remaining, unsigned min_part, std::size_t slots,
                               std::vector<unsigned>& cur, std::vector<DistinctPartition>& out)
{
  if (slots == 0) {
    if (remaining == 0) out.emplace_back(cur);
    return;
  }
  for (unsigned p = min_part; p <= remaining; ++p) {
    // the smallest completion with slots-1 larger parts must still fit
    std::uint64_t rest = slots - 1;
    if (p + rest * p + rest * (rest + 1) / 2 > remaining) break;
    cur.push_back(p);
    distinct_parts_rec(remaining - p, p + 1, slots - 1, cur, out);
    cur.pop_back();
  }
}

} // namespace detail

/// Every partition of n into distinct parts, ordered by number of parts
/// (most first), then lexicographically on the ascending parts.
inline std::vector<DistinctPartition> enumerate_dp(unsigned n)
{
  if (n == 0) throw std::invalid_argument("enumerate_dp: n must be positive");
  std::vector<DistinctPartition> out;
  std::size_t max_parts = 0;
  while ((max_parts + 1) * (max_parts + 2) / 2 <= n) ++max_parts;
  std::vector<unsigned> cur;
  for (std::size_t k = max_parts; k >= 1; --k) detail::distinct_parts_rec(n, 1, k, cur, out);
  return out;
}

/// Number of partitions of n into distinct parts (0/1 knapsack count).
inline std::uint64_t count_dp(unsigned n)
{
  std::vector<std::uint64_t> ways(n + 1, 0);
  ways[0] = 1;
  for (unsigned part = 1; part <= n; ++part)
    for (unsigned s = n; s >= part; --s) ways[s] += ways[s - part];
  return ways[n];
}

/// Number of partitions of n into odd parts (unbounded knapsack count).
inline std::uint64_t count_odd_partitions(unsigned n)
{
  std::vector<std::uint64_t> ways(n + 1, 0);
  ways[0] = 1;
  for (unsigned part = 1; part <= n; part += 2)
    for (unsigned s = part; s <= n; ++s) ways[s] += ways[s - part];
  return ways[n];
}

/// For each part t of an amalgamated partition, the original parts R_t
/// (ascending) that were merged into it.
using PartSplit = std::map<unsigned, std::vector<unsigned>>;

/// Result of pairwise amalgamation, with the merge history that produced it.
struct Amalgamation {
  DistinctPartition result;
  std::vector<CycleType> passes;  // the multiset after each pass, input first
  PartSplit split;
};

/// Pairwise amalgamation. Each pass snapshots the multiplicities, then for
/// every repeated lambda (ascending) replaces lambda^a by (2 lambda)^{a/2},
/// keeping one lambda when a is odd. Passes repeat until all parts differ.
inline Amalgamation amalgamate_with_history(const CycleType& r)
{
  if (r.parts().empty()) throw std::invalid_argument("amalgamate: empty cycle type");

  struct Node {
    unsigned value;
    std::vector<unsigned> leaves;  // original parts under this node
  };
  std::vector<Node> nodes;
  for (auto it = r.parts().rbegin(); it != r.parts().rend(); ++it) nodes.push_back({*it, {*it}});

  Amalgamation out;
  out.passes.push_back(r);
  auto canonical = [](std::vector<Node>& v) {
    std::stable_sort(v.begin(), v.end(), [](const Node& a, const Node& b) { return a.value < b.value; });
  };
  auto distinct = [](const std::vector<Node>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i].value == v[i - 1].value) return false;
    return true;
  };
  canonical(nodes);
  while (!distinct(nodes)) {
    std::vector<Node> next;
    std::size_t i = 0;
    while (i < nodes.size()) {
      std::size_t j = i;
      while (j < nodes.size() && nodes[j].value == nodes[i].value) ++j;
      // nodes[i, j) share a value
      std::size_t k = i;
      for (; k + 1 < j; k += 2) {
        Node merged{nodes[k].value * 2, nodes[k].leaves};
        merged.leaves.insert(merged.leaves.end(), nodes[k + 1].leaves.begin(),
                             nodes[k + 1].leaves.end());
        next.push_back(std::move(merged));
      }
      if (k < j) next.push_back(std::move(nodes[k]));
      i = j;
    }
    nodes = std::move(next);
    canonical(nodes);
    std::vector<unsigned> values;
    for (const auto& nd : nodes) values.push_back(nd.value);
    out.passes.emplace_back(values);
  }

  std::vector<unsigned> parts;
  for (auto& nd : nodes) {
    parts.push_back(nd.value);
    std::sort(nd.leaves.begin(), nd.leaves.end());
    out.split[nd.value] = nd.leaves;
  }
  out.result = DistinctPartition(parts);
  return out;
}

inline DistinctPartition amalgamate(const CycleType& r) { return amalgamate_with_history(r).result; }

/// R_t for every part t of amalgamate(r).
inline PartSplit split_parts(const CycleType& r) { return amalgamate_with_history(r).split; }

} // namespace nilcover
