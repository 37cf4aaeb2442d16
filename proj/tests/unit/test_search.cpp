#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "reference_tables.hpp"
#include "sphcub/search.hpp"

namespace sphcub {
namespace {

TEST(U3Rhs, MatchesFrozenTable) {
  for (int m = 1; m <= 20; ++m) {
    const auto rhs = u3_rhs(m);
    const auto& want = testdata::kU3Rhs[static_cast<std::size_t>(m - 1)];
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(rhs[i], want[i]) << "m=" << m << " row " << i;
  }
}

// Brute-force LP minimum: enumerate every basis of six active constraints
// among the thirteen (4 consistency rows, 3 upper bounds, 6 sign bounds).
double vertex_lp_minimum(int m) {
  const auto rhs = u3_rhs(m);
  Eigen::Matrix<double, 13, 6> A = Eigen::Matrix<double, 13, 6>::Zero();
  Eigen::Matrix<double, 13, 1> b;
  // rows as  a.x >= b
  A.row(0) << 1, 1, 2, 1, 2, 3;
  A.row(1) << 0, 0, 0, 1, 2, 3;
  A.row(2) << 0, 0, 2, 0, 0, 3;
  A.row(3) << 0, 0, 0, 0, 0, 3;
  for (int i = 0; i < 4; ++i) b(i) = rhs[static_cast<std::size_t>(i)];
  const int capped[3] = {0, 1, 3};
  for (int i = 0; i < 3; ++i) {
    A(4 + i, capped[i]) = -1.0;
    b(4 + i) = -1.0;
  }
  for (int i = 0; i < 6; ++i) {
    A(7 + i, i) = 1.0;
    b(7 + i) = 0.0;
  }
  Eigen::Matrix<double, 6, 1> cost;
  cost << 6, 12, 24, 8, 24, 48;

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(13, 0);
  std::fill(pick.begin(), pick.begin() + 6, 1);
  std::sort(pick.begin(), pick.end());
  do {
    Eigen::Matrix<double, 6, 6> M;
    Eigen::Matrix<double, 6, 1> r;
    int k = 0;
    for (int i = 0; i < 13; ++i)
      if (pick[static_cast<std::size_t>(i)]) {
        M.row(k) = A.row(i);
        r(k) = b(i);
        ++k;
      }
    Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(M);
    if (lu.rank() < 6) continue;
    const Eigen::Matrix<double, 6, 1> x = lu.solve(r);
    if (((A * x - b).array() < -1e-9).any()) continue;
    best = std::min(best, cost.dot(x));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

TEST(LowerBound, MatchesFrozenTableAndVertexOracle) {
  for (int m = 1; m <= 20; ++m) {
    const auto lp = lp_lower_bound(m);
    const double want = testdata::kLowerBoundN[static_cast<std::size_t>(m - 1)];
    EXPECT_NEAR(lp.N_lb, want, 1e-9) << "m=" << m;
    EXPECT_NEAR(lp.N_lb, vertex_lp_minimum(m), 1e-9) << "m=" << m;
    EXPECT_EQ(lp.fractional_K[0], 0.0);
    // the pseudostructure must itself be feasible and reproduce N_lb
    const auto& K = lp.fractional_K;
    const double n = 6 * K[1] + 12 * K[2] + 24 * K[3] + 8 * K[4] + 24 * K[5] + 48 * K[6];
    EXPECT_NEAR(n, lp.N_lb, 1e-9);
  }
}

TEST(LowerBound, NeverExceedsIntegerOptimum) {
  for (int m = 1; m <= 20; ++m) {
    const auto best = first_minima(m, 1);
    ASSERT_FALSE(best.empty()) << m;
    EXPECT_LE(lp_lower_bound(m).N_lb, best.front().N + 1e-9) << m;
    EXPECT_EQ(default_n_max(m), static_cast<int>(std::ceil(1.5 * lp_lower_bound(m).N_lb - 1e-9))) << m;
  }
}

TEST(LowerBound, FractionalStructureForM4) {
  const auto lp = lp_lower_bound(4);
  const std::array<double, 7> want{0, 1, 1, 0, 1, 0.5, 0};
  for (std::size_t i = 0; i < 7; ++i) EXPECT_NEAR(lp.fractional_K[i], want[i], 1e-9) << i;
}

TEST(FirstMinima, MatchFrozenTable) {
  for (int m = 1; m <= 10; ++m) {
    std::vector<StructureSolution> want;
    for (const auto& row : testdata::kFirstMinima) {
      if (row[0] != m) continue;
      StructureSolution s;
      s.minimum_index = row[1];
      s.lexical_index = row[2];
      s.N = row[3];
      s.structure = RuleStructure::u3(row[4], row[5], row[6], row[7], row[8], row[9]);
      s.v = row[10];
      want.push_back(s);
    }
    const auto got = first_minima(m);
    ASSERT_EQ(got.size(), want.size()) << "m=" << m;
    for (std::size_t i = 0; i < got.size(); ++i)
      EXPECT_EQ(got[i], want[i]) << "m=" << m << " row " << i << " got "
                                 << got[i].structure.u3_string();
  }
}

TEST(FirstMinima, FrozenTableHasNinetySevenRows) {
  EXPECT_EQ(testdata::kFirstMinima.size(), 97u);
}

TEST(Enumeration, SolutionsAreFeasibleAndRanked) {
  const auto sols = enumerate_structures(6, 20, 120);
  ASSERT_FALSE(sols.empty());
  EXPECT_EQ(sols.front().N, 74);
  for (std::size_t i = 0; i < sols.size(); ++i) {
    EXPECT_TRUE(satisfies_u3(sols[i].structure, 6));
    EXPECT_EQ(sols[i].N, cost(sols[i].structure));
    EXPECT_EQ(sols[i].v, var_count(sols[i].structure));
    EXPECT_LE(sols[i].N, 120);
    if (i) EXPECT_LE(sols[i - 1].N, sols[i].N);
  }
}

TEST(Enumeration, ExhaustiveAgainstNaiveScan) {
  const int m = 5, n_max = 80;
  int naive = 0;
  for (int k1 = 0; k1 <= 1; ++k1)
    for (int k2 = 0; k2 <= 1; ++k2)
      for (int k3 = 0; k3 <= 4; ++k3)
        for (int k4 = 0; k4 <= 1; ++k4)
          for (int k5 = 0; k5 <= 4; ++k5)
            for (int k6 = 0; k6 <= 2; ++k6) {
              const auto s = RuleStructure::u3(k1, k2, k3, k4, k5, k6);
              if (cost(s) <= n_max && satisfies_u3(s, m)) ++naive;
            }
  EXPECT_EQ(static_cast<int>(enumerate_structures(m, 20, n_max).size()), naive);
}

TEST(Feasibility, Examples) {
  EXPECT_TRUE(satisfies_u3(RuleStructure::u3(1, 0, 1, 1, 0, 0), 4));
  EXPECT_FALSE(satisfies_u3(RuleStructure::u3(1, 0, 0, 1, 0, 0), 4));
  EXPECT_TRUE(satisfies_u3(RuleStructure::u3(1, 0, 0, 0, 0, 0), 1));
  EXPECT_THROW(satisfies_u3(RuleStructure::u3(2, 0, 0, 0, 0, 0), 1), std::invalid_argument);
}

TEST(Feasibility, CostAndVariables) {
  const auto s = RuleStructure::u3(1, 1, 1, 1, 1, 1);
  EXPECT_EQ(cost(s), 6 + 12 + 24 + 8 + 24 + 48);
  EXPECT_EQ(var_count(s), 2 + 2 + 3 + 2 + 3 + 4);
  EXPECT_EQ(s.u3_string(), "(1,1,1,1,1,1)");
}

TEST(General3d, MinimaAreFeasible) {
  for (int m = 1; m <= 6; ++m) {
    const auto rhs = general3d_rhs(m);
    for (int v : rhs) EXPECT_GE(v, 0);
    const auto sols = first_minima_general3d(m, 1);
    ASSERT_FALSE(sols.empty()) << m;
    for (const auto& s : sols) EXPECT_TRUE(satisfies_general3d(s.structure, m));
  }
}

TEST(Locate, FindsRankOfKnownStructure) {
  const auto hit = locate(4, RuleStructure::u3(1, 0, 1, 1, 0, 0));
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->N, 38);
  EXPECT_EQ(hit->minimum_index, 1);
  EXPECT_FALSE(locate(4, RuleStructure::u3(1, 0, 0, 1, 0, 0)).has_value());
}

TEST(Search, RejectsBadM) {
  EXPECT_THROW(u3_rhs(0), std::invalid_argument);
  EXPECT_THROW(lp_lower_bound(0), std::invalid_argument);
}

}  // namespace
}  // namespace sphcub
