#pragma once

#include <array>
#include <compare>
#include <span>
#include <string>

namespace sphcub {

/// Generator counts {K0, ..., K6} per class type.
struct RuleStructure {
  std::array<int, 7> k{};

  int operator[](int i) const { return k[static_cast<std::size_t>(i)]; }
  int& operator[](int i) { return k[static_cast<std::size_t>(i)]; }

  /// Structure on U3 from (K1, ..., K6); K0 = 0.
  static RuleStructure u3(int k1, int k2, int k3, int k4, int k5, int k6) {
    return RuleStructure{{0, k1, k2, k3, k4, k5, k6}};
  }
  static RuleStructure u3(std::span<const int> k1_to_k6);

  /// K0 = 0 and K1, K2, K4 in {0, 1}, all counts nonnegative.
  bool is_u3() const;

  /// "(K1,K2,K3,K4,K5,K6)".
  std::string u3_string() const;

  friend auto operator<=>(const RuleStructure&, const RuleStructure&) = default;
};

/// Number of points N = K0 + 6K1 + 12K2 + 24K3 + 8K4 + 24K5 + 48K6.
int cost(const RuleStructure& s);

/// Number of unknowns v = K0 + 2K1 + 2K2 + 3K3 + 2K4 + 3K5 + 4K6.
int var_count(const RuleStructure& s);

}  // namespace sphcub
