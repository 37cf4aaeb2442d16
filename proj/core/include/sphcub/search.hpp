#pragma once

// Structure selection for fully symmetric rules: the consistency
// constraints on {K_i}, the LP-relaxation lower bound on the point count,
// and exhaustive enumeration of integer structures.

#include <array>
#include <optional>
#include <vector>

#include "sphcub/structure.hpp"

namespace sphcub {

/// A feasible structure together with its rank: `minimum_index` is the
/// 1-based position of N among the distinct feasible point counts and
/// `lexical_index` its 1-based position among structures sharing that N.
struct StructureSolution {
  RuleStructure structure;
  int N = 0;
  int v = 0;
  int minimum_index = 0;
  int lexical_index = 0;

  friend bool operator==(const StructureSolution&, const StructureSolution&) = default;
};

struct LpRelaxationResult {
  double N_lb = 0.0;
  std::array<double, 7> fractional_K{};  // K0..K6, K0 = 0
};

/// Right-hand sides of the four U3 constraints
///   K1 + K2 + 2K3 + K4 + 2K5 + 3K6 >= c0
///                  K4 + 2K5 + 3K6 >= c1
///                       2K3 + 3K6 >= c2
///                             3K6 >= c3
/// namely c = (p1(m) + p2(m) + p3(m), p3(m), p3(m-3), p3(m-6)).
std::array<int, 4> u3_rhs(int m);

/// True iff the U3 constraints hold. Throws std::invalid_argument if the
/// structure violates the U3 invariants (K0 = 0, K1, K2, K4 <= 1).
bool satisfies_u3(const RuleStructure& s, int m);

/// Right-hand sides of the thirteen general 3D consistency constraints, in
/// order; the last entry is the bound 1 in K0 <= 1.
std::array<int, 13> general3d_rhs(int m);

/// Left-hand sides matching general3d_rhs.
std::array<int, 13> general3d_lhs(const RuleStructure& s);

/// True iff all thirteen general 3D constraints hold (the last one is
/// K0 <= 1, all others are >=).
bool satisfies_general3d(const RuleStructure& s, int m);

/// Minimum point count over real K >= 0 with the U3 constraints and
/// K1, K2, K4 <= 1.
LpRelaxationResult lp_lower_bound(int m);

/// Default upper bound ceil(1.5 N_lb) on the enumeration window.
int default_n_max(int m);

/// All U3-feasible integer structures with ceil(N_lb) <= N <= n_max and
/// K3, K5, K6 <= k_bound, ordered by N and then lexically on (K1..K6).
std::vector<StructureSolution> enumerate_structures(int m, int k_bound = 20,
                                                   std::optional<int> n_max = {});

/// The structures belonging to the first `minima` distinct point counts,
/// widening the enumeration window until that many have been found.
std::vector<StructureSolution> first_minima(int m, int minima = 5, int k_bound = 20);

/// Same ranking under the general 3D constraints (K0 in {0, 1}, every other
/// count up to k_bound, N in [1, n_max]).
std::vector<StructureSolution> enumerate_general3d(int m, int k_bound, int n_max);
std::vector<StructureSolution> first_minima_general3d(int m, int minima = 5, int k_bound = 20);

/// Rank of a U3 structure among the feasible structures for m, if feasible.
std::optional<StructureSolution> locate(int m, const RuleStructure& s);

}  // namespace sphcub
