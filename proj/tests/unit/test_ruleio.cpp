#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <gtest/gtest.h>

#include "sphcub/product.hpp"
#include "sphcub/ruleio.hpp"
#include "sphcub/star.hpp"

namespace sphcub {
namespace {

constexpr double kPi = boost::math::constants::pi<double>();

template <class R>
R round_trip(const R& rule) {
  std::stringstream ss;
  save(rule, ss);
  return std::get<R>(load(ss));
}

TEST(Bundled, NamesCountsAndDegrees) {
  const auto& rules = builtin_rules();
  ASSERT_EQ(rules.size(), 9u);
  const int counts[] = {6, 14, 26, 38, 50, 74, 78, 86, 110};
  for (std::size_t i = 0; i < rules.size(); ++i) {
    EXPECT_EQ(expand(rules[i]).size(), std::size_t(counts[i])) << rules[i].name;
    EXPECT_EQ(cost(rules[i].structure), counts[i]);
  }
  EXPECT_EQ(find_builtin("bundled:m8")->degree(), 17);
  EXPECT_EQ(find_builtin("bundled:m5")->name, "U3:11-1.1(1,1,0,1,1,0)-50");
  EXPECT_EQ(find_builtin("U3:13-2.1(1,0,1,0,2,0)-78"), find_builtin("bundled:m6"));
  EXPECT_FALSE(find_builtin("bundled:m9").has_value());
  EXPECT_EQ(builtin_key(*find_builtin("bundled:m6fsm")), "bundled:m6fsm");
}

TEST(Bundled, ClosedFormValues) {
  const auto m4 = *find_builtin("bundled:m4");
  const auto pairs = blocks_of(m4, ClassType::edge_pair);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_NEAR(pairs[0].generator.params[0], std::sqrt(0.5 * (1 - 1 / std::sqrt(3.0))), 1e-15);
  const auto m1 = *find_builtin("bundled:m1");
  EXPECT_NEAR(m1.blocks[0].weight, 2 * kPi / 3, 1e-15);
}

TEST(Bundled, PassVerifyAndOddMonomialsVanish) {
  for (const auto& rule : builtin_rules()) {
    const auto pts = expand(rule);
    const auto rep = verify(pts, rule.degree());
    EXPECT_TRUE(rep.passes) << rule.name;
    EXPECT_LE(rep.max_even_error, 1e-10 * 4 * kPi) << rule.name;
    EXPECT_LE(rep.max_odd_error, 1e-12) << rule.name;
    EXPECT_LE(rep.max_norm_deviation, 1e-12) << rule.name;
  }
}

TEST(Bundled, ExpansionGroupsBackIntoGenerators) {
  for (const auto& rule : builtin_rules()) {
    const auto pts = expand(rule);
    std::map<std::pair<int, std::array<double, 3>>, std::pair<int, double>> groups;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Generator g = canonicalize(pts.points[i], 1e-12);
      auto& slot = groups[{int(g.type), g.params}];
      if (slot.first) EXPECT_EQ(slot.second, pts.weights[i]);
      ++slot.first;
      slot.second = pts.weights[i];
    }
    ASSERT_EQ(groups.size(), rule.blocks.size()) << rule.name;
    for (const auto& b : rule.blocks) {
      const auto it = groups.find({int(b.generator.type), b.generator.params});
      ASSERT_NE(it, groups.end()) << rule.name;
      EXPECT_EQ(it->second.first, generator_type(b.generator.type).orbit_size);
      EXPECT_EQ(it->second.second, b.weight);
    }
  }
}

TEST(Verify, Examples) {
  const auto m5 = expand(*find_builtin("bundled:m5"));
  const auto rep = verify(m5, 11);
  EXPECT_TRUE(rep.passes);
  EXPECT_LE(rep.max_even_error, 1e-10);

  const auto m1 = expand(*find_builtin("bundled:m1"));
  const auto bad = verify(m1, 5);
  EXPECT_FALSE(bad.passes);
  EXPECT_NEAR(integrate_monomial(m1, 4, 0, 0), 4 * kPi / 3, 1e-14);
  EXPECT_NEAR(bad.max_even_error, 4 * kPi / 3 - 4 * kPi / 5, 1e-13);

  EXPECT_TRUE(verify(u3_product_rule(3), 5).passes);
  EXPECT_THROW(verify(m1, 4), std::invalid_argument);
  EXPECT_THROW(verify(m1, -1), std::invalid_argument);
}

TEST(Integrate, Examples) {
  const auto m8 = expand(*find_builtin("bundled:m8"));
  EXPECT_NEAR(integrate(m8, [](const Vec3&) { return 1.0; }), 4 * kPi, 1e-13);
  const double exact = 4 * kPi * std::sinh(std::sqrt(3.0)) / std::sqrt(3.0);
  const double got = integrate(m8, [](const Vec3& p) { return std::exp(p[0] + p[1] + p[2]); });
  EXPECT_NEAR(got, exact, 1e-6 * exact);
  EXPECT_THROW(integrate(m8, [](const Vec3& p) { return p[0] > 0.99 ? NAN : 1.0; }), EvaluationError);
}

TEST(Persistence, GeneratorRulesRoundTripBitExactly) {
  for (const auto& rule : builtin_rules()) {
    const auto back = round_trip(rule);
    EXPECT_EQ(back, rule) << rule.name;
    const auto a = verify(expand(rule), rule.degree()), b = verify(expand(back), back.degree());
    EXPECT_EQ(a.max_even_error, b.max_even_error);
    EXPECT_EQ(a.max_odd_error, b.max_odd_error);
  }
}

TEST(Persistence, SolvedAndPointRulesRoundTripBitExactly) {
  const auto sys = assemble(4, RuleStructure::u3(1, 0, 1, 1, 0, 0));
  const auto out = solve(sys, SolveConfig{});
  ASSERT_TRUE(out.converged);
  auto solved = unpack(sys, out.best_x);
  solved.name = "solved";
  EXPECT_EQ(round_trip(solved), solved);
  for (int m = 1; m <= 10; ++m) {
    const auto p = u3_product_rule(m);
    EXPECT_EQ(round_trip(p), p);
  }
  const auto pts = expand(*find_builtin("bundled:m7"));
  EXPECT_EQ(round_trip(pts), pts);
}

TEST(Persistence, FormatDoubleIsExact) {
  for (double v : {0.1, 1.0 / 3.0, 2.0 * kPi / 3.0, 5e-324, 1.7976931348623157e308, -0.0, 123.0})
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v) << format_double(v);
}

TEST(Persistence, ProductFileLoadsAsPoints) {
  const auto dir = std::filesystem::temp_directory_path() / "sphcub_ruleio_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "product4.json";
  save(AnyRule{u3_product_rule(4)}, path);
  const auto loaded = load(path);
  ASSERT_TRUE(std::holds_alternative<PointRule>(loaded));
  EXPECT_EQ(std::get<PointRule>(loaded).size(), 32u);
  std::filesystem::remove_all(dir);
}

constexpr const char* kOffSphere = R"({
  "kind": "generator",
  "m": 3,
  "degree": 7,
  "structure": [1, 0, 0, 0, 1, 0],
  "name": "bad",
  "blocks": [
    {"class": "[1]", "weight": "0.5", "params": ["1"]},
    {"class": "[2,1]", "weight": "0.5", "params": ["0.6", "0.42426406871192851"]}
  ]
})";

TEST(Persistence, RejectsPointOffSphere) {
  // 2 (0.6)^2 + 0.18 = 0.9
  std::istringstream in(kOffSphere);
  try {
    load(in);
    FAIL() << "expected a constraint violation";
  } catch (const RuleFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("blocks"), std::string::npos) << e.what();
  }
}

TEST(Persistence, ReportsMalformedInput) {
  std::istringstream broken("{\n  \"kind\": \"generator\",\n  \"m\": \n}");
  try {
    load(broken);
    FAIL() << "expected a parse error";
  } catch (const RuleFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos) << e.what();
  }
  std::istringstream wrong_kind(R"({"kind": "other"})");
  EXPECT_THROW(load(wrong_kind), RuleFormatError);
  std::istringstream bad_number(R"({"kind": "points", "degree": 1, "name": "x", "points": [["a", "0", "0", "1"]]})");
  EXPECT_THROW(load(bad_number), RuleFormatError);
  EXPECT_THROW(load(std::filesystem::path("/nonexistent/rule.json")), std::runtime_error);
}

TEST(Naming, Format) {
  auto rule = *find_builtin("bundled:m4");
  EXPECT_EQ(rule_name(rule, 1, 2), "U3:9-1.2(1,0,1,1,0,0)-38");
  EXPECT_EQ(rule.name, "U3:9-1.2(1,0,1,1,0,0)-38");
}

}  // namespace
}  // namespace sphcub
