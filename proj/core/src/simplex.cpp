#include "sphcub/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace sphcub::lp {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }
  // Row `rows_` holds reduced costs; its rhs entry is -objective.
  double& cost(std::size_t c) { return at(rows_, c); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
    }
    basis_[pr] = pc;
  }

  void load_costs(const std::vector<double>& costs) {
    for (std::size_t c = 0; c <= cols_; ++c) cost(c) = c < cols_ ? costs[c] : 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = costs[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) cost(c) -= cb * at(r, c);
    }
  }

  // Returns false if unbounded.
  bool optimise(const std::vector<bool>& allowed, double eps) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (allowed[c] && cost(c) < -eps) {
          enter = c;
          break;
        }
      }
      if (enter == cols_) return true;

      std::size_t leave = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a <= eps) continue;
        const double ratio = rhs(r) / a;
        if (ratio < best - eps || (std::abs(ratio - best) <= eps && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

 private:
  std::size_t rows_, cols_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const Problem& problem, double eps) {
  const std::size_t n = problem.objective.size();
  const std::size_t m = problem.constraints.size();
  for (const auto& con : problem.constraints)
    if (con.coefficients.size() != n)
      throw std::invalid_argument("lp::solve: constraint width does not match objective");

  std::size_t slacks = 0, artificials = 0;
  for (const auto& con : problem.constraints) {
    const bool flip = con.rhs < 0.0;
    Relation rel = con.relation;
    if (flip && rel != Relation::equal)
      rel = rel == Relation::less_equal ? Relation::greater_equal : Relation::less_equal;
    if (rel != Relation::equal) ++slacks;
    if (rel != Relation::less_equal) ++artificials;
  }

  const std::size_t cols = n + slacks + artificials;
  Tableau t(m, cols);
  std::size_t next_slack = n, next_art = n + slacks;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& con = problem.constraints[r];
    const double sign = con.rhs < 0.0 ? -1.0 : 1.0;
    Relation rel = con.relation;
    if (sign < 0 && rel != Relation::equal)
      rel = rel == Relation::less_equal ? Relation::greater_equal : Relation::less_equal;
    for (std::size_t c = 0; c < n; ++c) t.at(r, c) = sign * con.coefficients[c];
    t.rhs(r) = sign * con.rhs;
    if (rel == Relation::less_equal) {
      t.at(r, next_slack) = 1.0;
      t.basis()[r] = next_slack++;
    } else {
      if (rel == Relation::greater_equal) t.at(r, next_slack++) = -1.0;
      t.at(r, next_art) = 1.0;
      t.basis()[r] = next_art++;
    }
  }

  Solution sol;
  std::vector<bool> allowed(cols, true);

  if (artificials > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t c = n + slacks; c < cols; ++c) phase1[c] = 1.0;
    t.load_costs(phase1);
    t.optimise(allowed, eps);
    if (-t.rhs(m) > eps * (1.0 + static_cast<double>(m))) {
      sol.status = Status::infeasible;
      return sol;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] < n + slacks) continue;
      for (std::size_t c = 0; c < n + slacks; ++c) {
        if (std::abs(t.at(r, c)) > eps) {
          t.pivot(r, c);
          break;
        }
      }
    }
    for (std::size_t c = n + slacks; c < cols; ++c) allowed[c] = false;
  }

  std::vector<double> phase2(cols, 0.0);
  for (std::size_t c = 0; c < n; ++c) phase2[c] = problem.objective[c];
  t.load_costs(phase2);
  if (!t.optimise(allowed, eps)) {
    sol.status = Status::unbounded;
    return sol;
  }

  sol.status = Status::optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (t.basis()[r] < n) sol.x[t.basis()[r]] = t.rhs(r);
  sol.objective = 0.0;
  for (std::size_t c = 0; c < n; ++c) sol.objective += problem.objective[c] * sol.x[c];
  return sol;
}

}  // namespace sphcub::lp
