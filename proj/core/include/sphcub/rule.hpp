#pragma once

// Rule data model: generator-form rules, explicit point rules and the
// report produced by exactness checks.

#include <string>
#include <vector>

#include "sphcub/structure.hpp"
#include "sphcub/symmetry.hpp"

namespace sphcub {

enum class Provenance { bundled, solved, imported };

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

/// One orbit of a rule: a generator and the weight shared by its points.
struct WeightedGenerator {
  double weight = 0.0;
  Generator generator;

  friend bool operator==(const WeightedGenerator&, const WeightedGenerator&) = default;
};

/// Fully symmetric rule of degree 2m+1 on U3.
struct CubatureRule {
  int m = 0;
  RuleStructure structure;
  std::vector<WeightedGenerator> blocks;  // grouped by class type, ascending
  std::string name;
  Provenance provenance = Provenance::imported;

  int degree() const { return 2 * m + 1; }

  friend bool operator==(const CubatureRule&, const CubatureRule&) = default;
};

/// Throws std::invalid_argument if block counts disagree with the structure,
/// blocks are out of class order, a generator is degenerate, or a point lies
/// off the unit sphere by more than `sphere_tol`.
void check(const CubatureRule& rule, double sphere_tol = 1e-12);

/// Generators of class `t` in block order.
std::vector<WeightedGenerator> blocks_of(const CubatureRule& rule, ClassType t);

struct PointRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
  int degree = 0;  // claimed degree, 0 if unknown
  std::string name;

  std::size_t size() const { return points.size(); }

  friend bool operator==(const PointRule&, const PointRule&) = default;
};

struct VerificationReport {
  int degree = 0;
  double tolerance = 0.0;
  double max_even_error = 0.0;
  double max_odd_error = 0.0;
  double weight_min = 0.0;
  double max_norm_deviation = 0.0;
  std::array<int, 3> worst_even{};  // raw exponents of the worst even monomial
  bool passes = false;
};

}  // namespace sphcub
