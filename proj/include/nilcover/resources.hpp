#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace nilcover {

class ResourceLimitExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Explicit budgets for the brute-force engines. Exceeding a budget either
/// throws ResourceLimitExceeded or yields a result flagged inexact; it never
/// produces a silently wrong answer.
struct ResourceLimits {
  std::size_t max_ambient_order = 362880;
  std::size_t max_graph_vertices = 20160;
  std::size_t max_search_nodes = 2'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  unsigned threads = 1;

  static ResourceLimits with_budget(double seconds)
  {
    ResourceLimits r;
    r.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(seconds));
    return r;
  }

  bool expired() const { return deadline && std::chrono::steady_clock::now() > *deadline; }

  void check(const char* what) const
  {
    if (expired()) throw ResourceLimitExceeded(std::string("time budget exceeded during ") + what);
  }
};

} // namespace nilcover
