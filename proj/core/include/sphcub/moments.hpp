#pragma once

// Exact moments of even monomials over the unit sphere U3. Every such
// moment is a rational multiple of pi.

#include <array>
#include <map>
#include <string>

#include "sphcub/symmetry.hpp"

namespace sphcub {

/// I[x^{2 j1} y^{2 j2} z^{2 j3}] = (numerator / denominator) * pi, in lowest
/// terms with a positive denominator.
struct Moment {
  BigInt numerator;
  BigInt denominator{1};
  std::array<int, 3> exponents{};  // (j1, j2, j3) as requested

  double value() const;
  std::string to_string() const;  // "4pi/105"

  friend bool operator==(const Moment& a, const Moment& b) {
    return a.numerator == b.numerator && a.denominator == b.denominator;
  }
};

Moment moment(int j1, int j2, int j3);

/// Moment of x^a y^b z^c for raw (not halved) exponents: zero whenever an
/// exponent is odd.
Moment moment_raw(int a, int b, int c);

/// Floating-point value of the raw-exponent moment.
double moment_value(int a, int b, int c);

/// Keyed by sorted exponent triples j1 <= j2 <= j3 with j1 + j2 + j3 <= m.
using MomentTable = std::map<std::array<int, 3>, Moment>;

MomentTable moment_table(int m);

}  // namespace sphcub
