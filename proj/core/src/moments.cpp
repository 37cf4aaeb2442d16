#include "sphcub/moments.hpp"

#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/integer.hpp>

namespace sphcub {

namespace {

// (2j - 1)!!, with (-1)!! = 1.
BigInt odd_double_factorial(int j) {
  BigInt f = 1;
  for (int k = 3; k <= 2 * j - 1; k += 2) f *= k;
  return f;
}

}  // namespace

double Moment::value() const {
  using boost::multiprecision::cpp_bin_float_50;
  const cpp_bin_float_50 ratio =
      cpp_bin_float_50(numerator) / cpp_bin_float_50(denominator);
  return static_cast<double>(ratio * boost::math::constants::pi<cpp_bin_float_50>());
}

std::string Moment::to_string() const {
  if (numerator == 0) return "0";
  std::string s = numerator == 1 ? "" : numerator.str();
  s += "pi";
  if (denominator != 1) s += "/" + denominator.str();
  return s;
}

Moment moment(int j1, int j2, int j3) {
  if (j1 < 0 || j2 < 0 || j3 < 0)
    throw std::invalid_argument("moment: exponents must be nonnegative");
  // 4 pi (2j1-1)!! (2j2-1)!! (2j3-1)!! / (2(j1+j2+j3)+1)!!
  Moment mo;
  mo.exponents = {j1, j2, j3};
  mo.numerator = 4 * odd_double_factorial(j1) * odd_double_factorial(j2) *
                 odd_double_factorial(j3);
  mo.denominator = odd_double_factorial(j1 + j2 + j3 + 1);
  const BigInt g = boost::multiprecision::gcd(mo.numerator, mo.denominator);
  mo.numerator /= g;
  mo.denominator /= g;
  return mo;
}

Moment moment_raw(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0)
    throw std::invalid_argument("moment: exponents must be nonnegative");
  if (a % 2 || b % 2 || c % 2) {
    Moment zero;
    zero.numerator = 0;
    zero.exponents = {a, b, c};
    return zero;
  }
  return moment(a / 2, b / 2, c / 2);
}

double moment_value(int a, int b, int c) { return moment_raw(a, b, c).value(); }

MomentTable moment_table(int m) {
  if (m < 1) throw std::invalid_argument("moment_table: m must be >= 1");
  MomentTable table;
  for (int j1 = 0; 3 * j1 <= m; ++j1)
    for (int j2 = j1; j1 + 2 * j2 <= m; ++j2)
      for (int j3 = j2; j1 + j2 + j3 <= m; ++j3)
        table.emplace(std::array<int, 3>{j1, j2, j3}, moment(j1, j2, j3));
  return table;
}

}  // namespace sphcub
