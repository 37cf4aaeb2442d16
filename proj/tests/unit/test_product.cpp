#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>
#include <gtest/gtest.h>

#include "sphcub/product.hpp"
#include "sphcub/ruleio.hpp"

namespace sphcub {
namespace {

constexpr double kPi = boost::math::constants::pi<double>();

// Golub-Welsch: eigen-decomposition of the Legendre Jacobi matrix.
Rule1D golub_welsch(int m) {
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) T(k, k - 1) = T(k - 1, k) = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  Rule1D r;
  for (int i = 0; i < m; ++i) {
    r.nodes.push_back(es.eigenvalues()[i]);
    r.weights.push_back(2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i));
  }
  return r;
}

TEST(GaussLegendre, ThreePointClosedForm) {
  const auto r = gauss_legendre(3);
  ASSERT_EQ(r.nodes.size(), 3u);
  EXPECT_NEAR(r.nodes[0], -std::sqrt(0.6), 1e-15);
  EXPECT_EQ(r.nodes[1], 0.0);
  EXPECT_NEAR(r.nodes[2], std::sqrt(0.6), 1e-15);
  EXPECT_NEAR(r.weights[0], 5.0 / 9.0, 1e-15);
  EXPECT_NEAR(r.weights[1], 8.0 / 9.0, 1e-15);
}

TEST(GaussLegendre, AgreesWithGolubWelsch) {
  for (int m = 1; m <= 30; ++m) {
    const auto a = gauss_legendre(m), b = golub_welsch(m);
    for (int i = 0; i < m; ++i) {
      EXPECT_NEAR(a.nodes[std::size_t(i)], b.nodes[std::size_t(i)], 1e-13) << m;
      EXPECT_NEAR(a.weights[std::size_t(i)], b.weights[std::size_t(i)], 1e-13) << m;
    }
    EXPECT_TRUE(std::is_sorted(a.nodes.begin(), a.nodes.end()));
  }
}

TEST(GaussLegendre, ExactForPolynomials) {
  for (int m = 1; m <= 12; ++m) {
    const auto r = gauss_legendre(m);
    for (int k = 0; k <= 2 * m - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += r.weights[std::size_t(i)] * std::pow(r.nodes[std::size_t(i)], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(s, exact, 1e-14) << "m=" << m << " k=" << k;
    }
  }
}

TEST(Chebyshev, NodesAndWeights) {
  for (int m = 1; m <= 10; ++m) {
    const auto r = chebyshev_first(m);
    ASSERT_EQ(r.nodes.size(), std::size_t(m));
    EXPECT_TRUE(std::is_sorted(r.nodes.begin(), r.nodes.end()));
    for (int i = 0; i < m; ++i) {
      EXPECT_NEAR(r.weights[std::size_t(i)], kPi / m, 1e-15);
      EXPECT_NEAR(std::abs(std::cos(m * std::acos(r.nodes[std::size_t(i)]))), 0.0, 1e-13);
    }
  }
}

TEST(Chebyshev, ExactForWeightedPolynomials) {
  // int x^k / sqrt(1 - x^2) = pi (k-1)!! / k!! for even k
  const int m = 6;
  const auto r = chebyshev_first(m);
  for (int k = 0; k <= 2 * m - 1; ++k) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += r.weights[std::size_t(i)] * std::pow(r.nodes[std::size_t(i)], k);
    double exact = 0.0;
    if (k % 2 == 0) {
      exact = kPi;
      for (int q = 1; q < k; q += 2) exact *= double(q) / double(q + 1);
    }
    EXPECT_NEAR(s, exact, 1e-13) << k;
  }
}

TEST(ProductRule, SizesWeightsAndExactness) {
  for (int m = 1; m <= 10; ++m) {
    const auto rule = u3_product_rule(m);
    EXPECT_EQ(rule.size(), std::size_t(2 * m * m));
    EXPECT_EQ(rule.degree, 2 * m - 1);
    const double total = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
    EXPECT_NEAR(total, 4 * kPi, 1e-12 * 4 * kPi);
    for (const auto& p : rule.points)
      EXPECT_NEAR(p[0] * p[0] + p[1] * p[1] + p[2] * p[2], 1.0, 1e-14);
    const auto rep = verify(rule, 2 * m - 1, 1e-12 * 4 * kPi);
    EXPECT_TRUE(rep.passes) << "m=" << m << " even " << rep.max_even_error << " odd " << rep.max_odd_error;
  }
}

TEST(ProductRule, NotExactBeyondDegree) {
  const auto rule = u3_product_rule(3);
  EXPECT_TRUE(verify(rule, 5).passes);
  EXPECT_FALSE(verify(rule, 7).passes);
}

TEST(ProductRule, RejectsBadM) {
  EXPECT_THROW(u3_product_rule(0), std::invalid_argument);
  EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}

}  // namespace
}  // namespace sphcub
