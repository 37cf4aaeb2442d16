#include "sphcub/product.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace sphcub {

namespace {

void require_m(int m, const char* who) {
  if (m < 1) throw std::invalid_argument(std::string(who) + ": m must be >= 1");
}

}  // namespace

Rule1D gauss_legendre(int m) {
  require_m(m, "gauss_legendre");
  Rule1D r;
  r.nodes.resize(std::size_t(m));
  r.weights.resize(std::size_t(m));
  // (P_m(x), P_m'(x)) from the three-term recurrence.
  const auto legendre = [m](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= m; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, m * (x * p1 - p0) / (x * x - 1.0)};
  };
  // Roots are symmetric; solve for the upper half and mirror.
  for (int i = 1; i <= (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i - 0.25) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    if (2 * i - 1 == m) x = 0.0;
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[std::size_t(i - 1)] = -x;
    r.nodes[std::size_t(m - i)] = x;
    r.weights[std::size_t(i - 1)] = w;
    r.weights[std::size_t(m - i)] = w;
  }
  return r;
}

Rule1D chebyshev_first(int m) {
  require_m(m, "chebyshev_first");
  Rule1D r;
  const double pi = std::numbers::pi;
  for (int i = m; i >= 1; --i) {
    r.nodes.push_back(std::cos((2.0 * i - 1.0) * pi / (2.0 * m)));
    r.weights.push_back(pi / m);
  }
  // Odd m puts the middle node at cos(pi/2), which is not exactly zero.
  if (m % 2 == 1) r.nodes[std::size_t(m / 2)] = 0.0;
  return r;
}

PointRule u3_product_rule(int m) {
  require_m(m, "u3_product_rule");
  const Rule1D z = gauss_legendre(m);
  const double pi = std::numbers::pi;
  PointRule out;
  out.degree = 2 * m - 1;
  out.name = "U3-product-" + std::to_string(2 * m * m);
  for (int i2 = 0; i2 < m; ++i2) {
    const double y2 = z.nodes[std::size_t(i2)];
    const double rho = std::sqrt(1.0 - y2 * y2);
    // The 2m azimuths (2 i1 - 1) pi / 2m around the full circle: the
    // Chebyshev nodes y1 = cos(angle) with both signs of sqrt(1 - y1^2).
    for (int i1 = 1; i1 <= 2 * m; ++i1) {
      const double angle = (2.0 * i1 - 1.0) * pi / (2.0 * m);
      out.points.push_back({rho * std::sin(angle), rho * std::cos(angle), y2});
      out.weights.push_back(pi / m * z.weights[std::size_t(i2)]);
    }
  }
  return out;
}

}  // namespace sphcub
