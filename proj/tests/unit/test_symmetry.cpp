#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "reference_tables.hpp"
#include "sphcub/symmetry.hpp"

namespace sphcub {
namespace {

// Independent count of (j1 >= j2 >= j3 >= 0) with j1 + j2 + j3 = r by
// number of nonzero entries.
std::int64_t brute_parts(int nu, int r) {
  std::int64_t n = 0;
  for (int a = 0; a <= r; ++a)
    for (int b = 0; b <= a; ++b) {
      const int c = r - a - b;
      if (c < 0 || c > b) continue;
      const int nonzero = (a > 0) + (b > 0) + (c > 0);
      if (nonzero == nu) ++n;
    }
  return n;
}

TEST(PartitionCounts, MatchFrozenTable) {
  for (const auto& row : testdata::kPartitionCounts) {
    const int r = row[0];
    for (int nu = 0; nu <= 3; ++nu)
      EXPECT_EQ(p_nu(nu, r), row[static_cast<std::size_t>(nu) + 1]) << "nu=" << nu << " r=" << r;
    EXPECT_EQ(equation_count(r), row[5]) << "m=" << r;
  }
}

TEST(PartitionCounts, MatchBruteForce) {
  for (int r = 1; r <= 40; ++r)
    for (int nu = 1; nu <= 3; ++nu) EXPECT_EQ(p_nu(nu, r), brute_parts(nu, r));
  EXPECT_EQ(p_nu(0, 1), 1);
  EXPECT_EQ(p_nu(0, 2), 0);
}

TEST(PartitionCounts, EquationCountRejectsBadM) {
  EXPECT_THROW(equation_count(0), std::invalid_argument);
}

TEST(ClassTypes, FastPathMatchesFrozenTable) {
  for (int n = 1; n <= 100; ++n)
    EXPECT_EQ(count_class_types(n), BigInt(testdata::kClassTypeCounts[static_cast<std::size_t>(n - 1)]))
        << "n=" << n;
  EXPECT_EQ(count_class_types(100), BigInt(1642992568));
}

TEST(ClassTypes, EnumerationMatchesFastPath) {
  for (int n = 1; n <= 12; ++n)
    EXPECT_EQ(BigInt(count_class_types_enumerated(n)), count_class_types(n)) << "n=" << n;
}

// Distinct multiplicity patterns of nonzero magnitudes over integer points.
std::int64_t pattern_count(int n) {
  std::set<std::vector<int>> patterns;
  std::vector<int> x(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<int> mult;
    std::vector<int> v = x;
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size();) {
      std::size_t j = i;
      while (j < v.size() && v[j] == v[i]) ++j;
      if (v[i] != 0) mult.push_back(static_cast<int>(j - i));
      i = j;
    }
    std::sort(mult.begin(), mult.end());
    patterns.insert(mult);
    std::size_t k = 0;
    while (k < x.size() && x[k] == n) x[k++] = 0;
    if (k == x.size()) break;
    ++x[k];
  }
  return static_cast<std::int64_t>(patterns.size());
}

TEST(ClassTypes, EnumerationMatchesPointPatterns) {
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(count_class_types_enumerated(n), pattern_count(n));
}

TEST(ClassTypes, RejectsNonPositive) {
  EXPECT_THROW(count_class_types(0), std::invalid_argument);
  EXPECT_THROW(count_class_types_enumerated(0), std::invalid_argument);
}

TEST(OrbitSizeFormula, Examples) {
  const std::vector<int> four_distinct{1, 1, 1, 1};
  EXPECT_EQ(orbit_size_formula(4, four_distinct), 384);
  const std::vector<int> none;
  EXPECT_EQ(orbit_size_formula(3, none), 1);
  for (const auto& t : kGeneratorTypes) {
    std::vector<int> mult;
    switch (t.class_index) {
      case 1: mult = {1}; break;
      case 2: mult = {2}; break;
      case 3: mult = {1, 1}; break;
      case 4: mult = {3}; break;
      case 5: mult = {2, 1}; break;
      case 6: mult = {1, 1, 1}; break;
      default: break;
    }
    EXPECT_EQ(orbit_size_formula(3, mult), t.orbit_size) << t.label;
  }
  const std::vector<int> too_many{2, 2};
  EXPECT_THROW(orbit_size_formula(3, too_many), std::invalid_argument);
}

std::vector<Generator> sample_generators() {
  const double a = 0.3, b = 0.5, c = 0.8;
  return {
      make_generator(ClassType::origin, std::vector<double>{}),
      make_generator(ClassType::axis, std::vector<double>{a}),
      make_generator(ClassType::edge, std::vector<double>{a}),
      make_generator(ClassType::edge_pair, std::vector<double>{a, b}),
      make_generator(ClassType::vertex, std::vector<double>{a}),
      make_generator(ClassType::face, std::vector<double>{a, c}),
      make_generator(ClassType::general, std::vector<double>{a, b, c}),
  };
}

TEST(Orbit, SizesAndClosure) {
  for (const auto& g : sample_generators()) {
    const auto pts = orbit(g);
    EXPECT_EQ(static_cast<int>(pts.size()), generator_type(g.type).orbit_size);
    const std::set<Vec3> set(pts.begin(), pts.end());
    EXPECT_EQ(set.size(), pts.size());
    for (const auto& p : pts)
      for (const auto& q : signed_permutations(p)) EXPECT_TRUE(set.count(q)) << generator_type(g.type).label;
  }
}

TEST(Orbit, EveryImageCanonicalizesBack) {
  for (const auto& g : sample_generators())
    for (const auto& p : orbit(g)) EXPECT_EQ(canonicalize(p), g);
}

TEST(Canonicalize, IdempotentOnRandomPoints) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 7);
  for (int i = 0; i < 10000; ++i) {
    Vec3 p{u(rng), u(rng), u(rng)};
    // Force some coincidences and zeros so every class type is exercised.
    switch (pick(rng)) {
      case 0: p[1] = -p[0]; break;
      case 1: p[2] = 0.0; break;
      case 2: p[1] = p[2] = 0.0; break;
      case 3: p[1] = p[0]; p[2] = -p[0]; break;
      default: break;
    }
    const Generator g = canonicalize(p);
    EXPECT_EQ(canonicalize(g.point()), g);
    for (const auto& q : signed_permutations(p)) EXPECT_EQ(canonicalize(q), g);
  }
}

TEST(Generator, ValidationRejectsDegenerateParameters) {
  EXPECT_THROW(make_generator(ClassType::axis, std::vector<double>{0.0}), std::invalid_argument);
  EXPECT_THROW(make_generator(ClassType::axis, std::vector<double>{-0.5}), std::invalid_argument);
  EXPECT_THROW(make_generator(ClassType::face, std::vector<double>{0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(make_generator(ClassType::general, std::vector<double>{0.2, 0.3, 0.2}),
               std::invalid_argument);
  EXPECT_THROW(make_generator(ClassType::edge_pair, std::vector<double>{0.2}), std::invalid_argument);
  EXPECT_THROW(make_generator(ClassType::axis, std::vector<double>{NAN}), std::invalid_argument);
}

TEST(Generator, UnorderedParametersAreSorted) {
  const auto g = make_generator(ClassType::edge_pair, std::vector<double>{0.9, 0.1});
  EXPECT_EQ(g.params[0], 0.1);
  EXPECT_EQ(g.params[1], 0.9);
}

}  // namespace
}  // namespace sphcub
