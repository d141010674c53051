#pragma once

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nilcover {

/// A partition of n written as lambda_1^{a_1} ... lambda_k^{a_k}. Parts are
/// kept as a flat multiset sorted in descending order.
class CycleType {
public:
  CycleType() = default;

  explicit CycleType(std::vector<unsigned> parts) : parts_(std::move(parts))
  {
    for (unsigned p : parts_)
      if (p == 0) throw std::invalid_argument("CycleType: parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
  }

  /// Parses "2^2,3^2,4^3,6,8,16"; commas and whitespace both separate terms.
  static CycleType parse(std::string_view text)
  {
    std::vector<unsigned> parts;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < text.size() && (text[i] == ',' || text[i] == ' ' || text[i] == '\t')) ++i;
    };
    auto number = [&]() -> unsigned {
      unsigned v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
      if (ec != std::errc() || v == 0)
        throw std::invalid_argument("CycleType: cannot parse '" + std::string(text) + "'");
      i = static_cast<std::size_t>(ptr - text.data());
      return v;
    };
    skip();
    while (i < text.size()) {
      unsigned len = number();
      unsigned mult = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        mult = number();
      }
      parts.insert(parts.end(), mult, len);
      skip();
    }
    if (parts.empty()) throw std::invalid_argument("CycleType: empty");
    return CycleType(std::move(parts));
  }

  const std::vector<unsigned>& parts() const { return parts_; }
  unsigned total() const { return std::accumulate(parts_.begin(), parts_.end(), 0u); }

  /// (lambda, multiplicity) pairs, lambda descending.
  std::vector<std::pair<unsigned, unsigned>> multiplicities() const
  {
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned p : parts_) {
      if (!out.empty() && out.back().first == p)
        ++out.back().second;
      else
        out.emplace_back(p, 1);
    }
    return out;
  }

  bool is_distinct() const
  {
    return std::adjacent_find(parts_.begin(), parts_.end()) == parts_.end();
  }

  /// "4^2 1^1"
  std::string to_string() const
  {
    std::string s;
    for (auto [len, mult] : multiplicities()) {
      if (!s.empty()) s += ' ';
      s += std::to_string(len) + '^' + std::to_string(mult);
    }
    return s;
  }

  friend bool operator==(const CycleType&, const CycleType&) = default;
  friend auto operator<=>(const CycleType&, const CycleType&) = default;

private:
  std::vector<unsigned> parts_;
};

} // namespace nilcover
