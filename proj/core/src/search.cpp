#include "sphcub/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "sphcub/simplex.hpp"
#include "sphcub/symmetry.hpp"

namespace sphcub {

RuleStructure RuleStructure::u3(std::span<const int> k1_to_k6) {
  if (k1_to_k6.size() != 6)
    throw std::invalid_argument("structure: expected six counts K1..K6");
  RuleStructure s;
  std::copy(k1_to_k6.begin(), k1_to_k6.end(), s.k.begin() + 1);
  return s;
}

bool RuleStructure::is_u3() const {
  if (k[0] != 0) return false;
  for (int x : k)
    if (x < 0) return false;
  return k[1] <= 1 && k[2] <= 1 && k[4] <= 1;
}

std::string RuleStructure::u3_string() const {
  std::string s = "(";
  for (int i = 1; i <= 6; ++i) {
    if (i > 1) s += ",";
    s += std::to_string(k[static_cast<std::size_t>(i)]);
  }
  return s + ")";
}

int cost(const RuleStructure& s) {
  return s[0] + 6 * s[1] + 12 * s[2] + 24 * s[3] + 8 * s[4] + 24 * s[5] + 48 * s[6];
}

int var_count(const RuleStructure& s) {
  return s[0] + 2 * s[1] + 2 * s[2] + 3 * s[3] + 2 * s[4] + 3 * s[5] + 4 * s[6];
}

namespace {

int p(int nu, int r) { return static_cast<int>(p_nu(nu, r)); }

// Sum of f(r) for r = from..m; empty (zero) when m < from.
int sum_r(int from, int m, const std::function<int(int)>& f) {
  int total = 0;
  for (int r = from; r <= m; ++r) total += f(r);
  return total;
}

void require_m(int m) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
}

std::array<int, 4> u3_lhs(const RuleStructure& s) {
  return {s[1] + s[2] + 2 * s[3] + s[4] + 2 * s[5] + 3 * s[6], s[4] + 2 * s[5] + 3 * s[6],
          2 * s[3] + 3 * s[6], 3 * s[6]};
}

void assign_ranks(std::vector<StructureSolution>& out) {
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.N != b.N ? a.N < b.N : a.structure < b.structure;
  });
  int minimum = 0, lexical = 0, last_n = -1;
  for (auto& sol : out) {
    if (sol.N != last_n) {
      ++minimum;
      lexical = 0;
      last_n = sol.N;
    }
    sol.minimum_index = minimum;
    sol.lexical_index = ++lexical;
  }
}

StructureSolution make_solution(const RuleStructure& s) {
  return StructureSolution{s, cost(s), var_count(s), 0, 0};
}

std::vector<StructureSolution> keep_minima(std::vector<StructureSolution> all, int minima) {
  std::erase_if(all, [minima](const auto& s) { return s.minimum_index > minima; });
  return all;
}

}  // namespace

std::array<int, 4> u3_rhs(int m) {
  require_m(m);
  return {p(1, m) + p(2, m) + p(3, m), p(3, m), p(3, m - 3), p(3, m - 6)};
}

bool satisfies_u3(const RuleStructure& s, int m) {
  if (!s.is_u3())
    throw std::invalid_argument("structure " + s.u3_string() + " violates the U3 invariants");
  const auto lhs = u3_lhs(s);
  const auto rhs = u3_rhs(m);
  for (std::size_t i = 0; i < 4; ++i)
    if (lhs[i] < rhs[i]) return false;
  return true;
}

std::array<int, 13> general3d_rhs(int m) {
  require_m(m);
  const auto p23 = [](int r) { return p(2, r) + p(3, r); };
  return {
      sum_r(3, m, [](int r) { return p(3, r) - 1; }),
      sum_r(3, m, [](int r) { return p(3, r); }),
      sum_r(3, m, [&](int r) { return p23(r) - 2; }),
      sum_r(2, m, [&](int r) { return p23(r) - 1; }),
      sum_r(2, m, [&](int r) { return p23(r) - 1; }),
      sum_r(2, m, [&](int r) { return p23(r) - 1; }),
      sum_r(2, m, p23),
      sum_r(2, m, p23),
      sum_r(2, m, p23),
      sum_r(9, m, [](int r) { return p(3, r) - (r - 3); }),
      sum_r(6, m, [&](int r) { return p23(r) - (r - 1); }),
      1 + sum_r(1, m, [&](int r) { return p(1, r) + p23(r); }),
      1,
  };
}

std::array<int, 13> general3d_lhs(const RuleStructure& s) {
  const int k0 = s[0], k1 = s[1], k2 = s[2], k3 = s[3], k4 = s[4], k5 = s[5], k6 = s[6];
  return {
      3 * k5 + 4 * k6,
      2 * k4 + 3 * k5 + 4 * k6,
      3 * k3 + 3 * k5 + 4 * k6,
      3 * k3 + 2 * k4 + 3 * k5 + 4 * k6,
      2 * k2 + 3 * k3 + 3 * k5 + 4 * k6,
      2 * k1 + 3 * k3 + 3 * k5 + 4 * k6,
      2 * k2 + 3 * k3 + 2 * k4 + 3 * k5 + 4 * k6,
      2 * k1 + 3 * k3 + 2 * k4 + 3 * k5 + 4 * k6,
      2 * k1 + 2 * k2 + 3 * k3 + 3 * k5 + 4 * k6,
      4 * k6,
      3 * k3 + 4 * k6,
      k0 + 2 * k1 + 2 * k2 + 3 * k3 + 2 * k4 + 3 * k5 + 4 * k6,
      k0,
  };
}

bool satisfies_general3d(const RuleStructure& s, int m) {
  for (int x : s.k)
    if (x < 0) return false;
  const auto lhs = general3d_lhs(s);
  const auto rhs = general3d_rhs(m);
  for (std::size_t i = 0; i < 12; ++i)
    if (lhs[i] < rhs[i]) return false;
  return lhs[12] <= rhs[12];
}

LpRelaxationResult lp_lower_bound(int m) {
  const auto rhs = u3_rhs(m);
  lp::Problem prob;
  prob.objective = {6, 12, 24, 8, 24, 48};
  using lp::Relation;
  prob.constraints = {
      {{1, 1, 2, 1, 2, 3}, Relation::greater_equal, double(rhs[0])},
      {{0, 0, 0, 1, 2, 3}, Relation::greater_equal, double(rhs[1])},
      {{0, 0, 2, 0, 0, 3}, Relation::greater_equal, double(rhs[2])},
      {{0, 0, 0, 0, 0, 3}, Relation::greater_equal, double(rhs[3])},
      {{1, 0, 0, 0, 0, 0}, Relation::less_equal, 1.0},
      {{0, 1, 0, 0, 0, 0}, Relation::less_equal, 1.0},
      {{0, 0, 0, 1, 0, 0}, Relation::less_equal, 1.0},
  };
  const auto sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal)
    throw std::logic_error("lp_lower_bound: relaxation not solvable for m = " + std::to_string(m));
  LpRelaxationResult res;
  res.N_lb = sol.objective;
  for (std::size_t i = 0; i < 6; ++i) res.fractional_K[i + 1] = sol.x[i];
  return res;
}

namespace {

int ceil_bound(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

}  // namespace

int default_n_max(int m) { return ceil_bound(1.5 * lp_lower_bound(m).N_lb); }

std::vector<StructureSolution> enumerate_structures(int m, int k_bound, std::optional<int> n_max) {
  if (k_bound < 1) throw std::invalid_argument("enumerate_structures: k_bound must be >= 1");
  const int n_lo = ceil_bound(lp_lower_bound(m).N_lb);
  const int n_hi = n_max.value_or(default_n_max(m));
  std::vector<StructureSolution> out;
  // K1 outermost to K6 innermost; N grows with every count, so each loop
  // can stop as soon as the partial cost exceeds the window.
  for (int k1 = 0; k1 <= 1; ++k1)
    for (int k2 = 0; k2 <= 1; ++k2)
      for (int k3 = 0; k3 <= k_bound; ++k3)
        for (int k4 = 0; k4 <= 1; ++k4)
          for (int k5 = 0; k5 <= k_bound; ++k5)
            for (int k6 = 0; k6 <= k_bound; ++k6) {
              const auto s = RuleStructure::u3(k1, k2, k3, k4, k5, k6);
              const int n = cost(s);
              if (n > n_hi) break;
              if (n >= n_lo && satisfies_u3(s, m)) out.push_back(make_solution(s));
            }
  assign_ranks(out);
  return out;
}

std::vector<StructureSolution> first_minima(int m, int minima, int k_bound) {
  if (minima < 1) throw std::invalid_argument("first_minima: minima must be >= 1");
  int n_max = default_n_max(m);
  for (;;) {
    auto all = enumerate_structures(m, k_bound, n_max);
    // Widen until a larger count proves the last kept minimum is complete.
    if (!all.empty() && all.back().minimum_index > minima) return keep_minima(std::move(all), minima);
    if (n_max > 48 * 3 * (k_bound + 1) + 26) return keep_minima(std::move(all), minima);
    n_max *= 2;
  }
}

std::vector<StructureSolution> enumerate_general3d(int m, int k_bound, int n_max) {
  if (k_bound < 1) throw std::invalid_argument("enumerate_general3d: k_bound must be >= 1");
  std::vector<StructureSolution> out;
  RuleStructure s;
  const std::array<int, 7> upper{1, k_bound, k_bound, k_bound, k_bound, k_bound, k_bound};
  std::function<void(int)> visit = [&](int idx) {
    if (idx == 7) {
      const int n = cost(s);
      if (n >= 1 && satisfies_general3d(s, m)) out.push_back(make_solution(s));
      return;
    }
    for (int v = 0; v <= upper[static_cast<std::size_t>(idx)]; ++v) {
      s[idx] = v;
      if (cost(s) > n_max) break;
      visit(idx + 1);
    }
    s[idx] = 0;
  };
  visit(0);
  assign_ranks(out);
  return out;
}

std::vector<StructureSolution> first_minima_general3d(int m, int minima, int k_bound) {
  if (minima < 1) throw std::invalid_argument("first_minima_general3d: minima must be >= 1");
  int n_max = 16;
  for (;;) {
    auto all = enumerate_general3d(m, k_bound, n_max);
    if (!all.empty() && all.back().minimum_index > minima) return keep_minima(std::move(all), minima);
    if (n_max > 48 * 6 * (k_bound + 1)) return keep_minima(std::move(all), minima);
    n_max *= 2;
  }
}

std::optional<StructureSolution> locate(int m, const RuleStructure& s) {
  if (!s.is_u3() || !satisfies_u3(s, m)) return std::nullopt;
  const int k_bound = std::max({20, s[3], s[5], s[6]});
  for (const auto& sol : enumerate_structures(m, k_bound, cost(s)))
    if (sol.structure == s) return sol;
  return std::nullopt;
}

}  // namespace sphcub
