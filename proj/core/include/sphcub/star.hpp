#pragma once

// The moment system for a fully symmetric rule on U3 with a given
// structure: assembly, residual and Jacobian evaluation, a multi-start
// Levenberg-Marquardt solver, goodness classification and a plain text or
// LaTeX listing of the equations.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sphcub/rule.hpp"
#include "sphcub/structure.hpp"

namespace sphcub {

enum class Subsystem { I, II, III, constraint };

struct Equation {
  Subsystem subsystem = Subsystem::I;
  std::array<int, 3> j{};  // half exponents of x, y, z (moment rows)
  ClassType constraint_class = ClassType::origin;
  int generator = 0;  // 0-based generator within its class (constraint rows)
  double rhs = 0.0;
};

/// w * prod(x[var]^power), scaled by coef. weight < 0 means no weight factor.
struct Term {
  double coef = 0.0;
  int weight = -1;
  std::array<int, 3> var{};
  std::array<int, 3> power{};
  int factors = 0;
};

struct StarSystem {
  int m = 0;
  RuleStructure structure;
  std::array<int, 7> offset{};  // first variable of each class block
  int variables = 0;
  std::vector<Equation> equations;
  std::vector<std::vector<Term>> rows;

  /// Variable holding the weight of generator i of class t.
  int weight_index(ClassType t, int i) const;
  /// Variable holding parameter q of generator i of class t.
  int param_index(ClassType t, int i, int q) const;
  int moment_rows() const;
};

/// Throws std::invalid_argument if the structure is not a U3 structure or
/// m < 1.
StarSystem assemble(int m, const RuleStructure& structure);

Eigen::VectorXd residual(const StarSystem& sys, const Eigen::VectorXd& x);
Eigen::MatrixXd jacobian(const StarSystem& sys, const Eigen::VectorXd& x);

struct SolveConfig {
  std::uint64_t seed = 1;
  int restarts = 100;
  int max_iterations = 10000;
  double residual_tol = 1e-12;
  double step_tol = 1e-14;
  // Parameters closer than this to zero or to each other make a candidate
  // degenerate: it belongs to a smaller structure.
  double degenerate_gap = 1e-6;
};

struct SolveOutcome {
  Eigen::VectorXd best_x;
  double best_residual_norm = 0.0;
  bool converged = false;
  int restart_index = -1;
  int iterations = 0;
};

/// Runs restarts in order and returns the first converged, nondegenerate
/// candidate; if none converges, the candidate with the smallest residual.
SolveOutcome solve(const StarSystem& sys, const SolveConfig& config);

/// Up to `k` distinct converged, nondegenerate solutions over all restarts,
/// in restart order. Distinct means an infinity-norm gap above 1e-6 between
/// canonical variable vectors.
std::vector<SolveOutcome> solve_collect(const StarSystem& sys, const SolveConfig& config, int k);

/// Starting point of restart `index`: uniform (0,1) entries with the fixed
/// parameters alpha_1, beta_1 and epsilon_1 set to their exact values.
Eigen::VectorXd starting_point(const StarSystem& sys, std::uint64_t seed, int index);

/// Canonical form of a variable vector: parameters replaced by their
/// absolute values and ordered within each generator, repeated generators of
/// a class ordered by first parameter.
Eigen::VectorXd canonical(const StarSystem& sys, const Eigen::VectorXd& x);

/// Rule described by x. Throws std::invalid_argument if x is degenerate.
CubatureRule unpack(const StarSystem& sys, const Eigen::VectorXd& x, double degenerate_gap = 0.0);
Eigen::VectorXd pack(const StarSystem& sys, const CubatureRule& rule);

struct Goodness {
  bool all_weights_positive = false;
  bool all_points_on_sphere = false;
  bool good = false;
  double weight_min = 0.0;
  std::vector<std::string> offending;  // e.g. "d_1 = -0.3717891305959"
};

Goodness classify(const CubatureRule& rule, double tol = 1e-12);

/// Letter naming the weights of class t ("o", "a", ..., "f").
char weight_letter(ClassType t);

/// One equation per line, subsystems I, II, III then the constraints,
/// followed by the total count.
std::string render_star(const StarSystem& sys, bool latex = false);

}  // namespace sphcub
