#pragma once

// Dense two-phase simplex for small linear programs
//
//   minimise c.x  subject to  rows (<=, >=, =) rhs,  x >= 0.
//
// Bland's rule is used throughout, so degenerate problems terminate.

#include <vector>

namespace sphcub::lp {

enum class Relation { less_equal, greater_equal, equal };

struct Constraint {
  std::vector<double> coefficients;
  Relation relation = Relation::greater_equal;
  double rhs = 0.0;
};

struct Problem {
  std::vector<double> objective;
  std::vector<Constraint> constraints;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

Solution solve(const Problem& problem, double eps = 1e-11);

}  // namespace sphcub::lp
