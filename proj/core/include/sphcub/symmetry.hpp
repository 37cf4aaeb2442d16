#pragma once

// Fully symmetric (octahedral) equivalence classes of points in three
// dimensions, plus the combinatorial counting functions used to size the
// moment system and the class-type census in n dimensions.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sphcub {

using Vec3 = std::array<double, 3>;
using BigInt = boost::multiprecision::cpp_int;

/// The seven class types of fully symmetric point sets in 3D, numbered as
/// in the K0..K6 structure vector.
enum class ClassType : int {
  origin = 0,     // [0]      (0, 0, 0)
  axis = 1,       // [1]      (a, 0, 0)
  edge = 2,       // [2]      (b, b, 0)
  edge_pair = 3,  // [1,1]    (g, d, 0)
  vertex = 4,     // [3]      (e, e, e)
  face = 5,       // [2,1]    (z, z, h)
  general = 6,    // [1,1,1]  (t, u, l)
};

inline constexpr int kClassCount = 7;

struct GeneratorType {
  int class_index;
  std::string_view label;
  int orbit_size;
  int param_count;
};

inline constexpr std::array<GeneratorType, kClassCount> kGeneratorTypes{{
    {0, "[0]", 1, 0},
    {1, "[1]", 6, 1},
    {2, "[2]", 12, 1},
    {3, "[1,1]", 24, 2},
    {4, "[3]", 8, 1},
    {5, "[2,1]", 24, 2},
    {6, "[1,1,1]", 48, 3},
}};

constexpr const GeneratorType& generator_type(ClassType t) {
  return kGeneratorTypes[static_cast<std::size_t>(t)];
}

/// Canonical representative of an equivalence class.
///
/// `params` holds the distinct nonzero coordinates; only the first
/// `param_count` entries are meaningful. Ordering conventions:
///   [1,1]   (gamma, delta)        gamma < delta
///   [2,1]   (zeta, eta)           zeta is the repeated coordinate
///   [1,1,1] (theta, mu, lambda)   strictly increasing
struct Generator {
  ClassType type = ClassType::origin;
  std::array<double, 3> params{};

  int param_count() const { return generator_type(type).param_count; }
  std::span<const double> values() const {
    return {params.data(), static_cast<std::size_t>(param_count())};
  }

  /// The canonical coordinate vector (x1 <= ... <= xp layout, zeros last).
  Vec3 point() const;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Builds a generator, normalising parameter order and validating it.
/// Throws std::invalid_argument for nonpositive or degenerate parameters.
Generator make_generator(ClassType type, std::span<const double> params);

/// Throws std::invalid_argument if `g` is not a valid member of its class
/// (nonpositive parameters, or coincident values that belong to another
/// class type).
void validate(const Generator& g);

using Orbit = std::vector<Vec3>;

/// Generator of the class containing `p`. Coordinates with magnitude at or
/// below `zero_tol` count as zero and values within `zero_tol` of each other
/// count as equal; pass 0 for exact classification.
Generator canonicalize(const Vec3& p, double zero_tol = 1e-12);

/// All distinct images of the generator under the 48 signed permutations,
/// in lexicographic order.
Orbit orbit(const Generator& g);

/// The 48 signed permutations applied to `p` (with repetitions).
std::array<Vec3, 48> signed_permutations(const Vec3& p);

/// Size of the class in n dimensions whose generator has nonzero
/// coordinate multiplicities `multiplicities` (r = their sum <= n).
std::int64_t orbit_size_formula(int n, std::span<const int> multiplicities);

/// Number of nondecreasing positive integer sequences of length nu with
/// sum r (partitions of r into exactly nu parts); p_0(r) is 1 for r == 1
/// and 0 otherwise. These count the equations of each subsystem.
std::int64_t p_nu(int nu, int r);

/// Number of moment equations for a rule of degree 2m+1:
/// sum over r = 1..m and nu = 0..3 of p_nu(r).
std::int64_t equation_count(int m);

/// Number of types of equivalence classes (e+1) in n dimensions, as the
/// sum of partition numbers p(0) + ... + p(n).
BigInt count_class_types(int n);

/// Same count by exhaustive enumeration of multiplicity strings. Cost grows
/// as 2^n; intended as an oracle for small n.
std::int64_t count_class_types_enumerated(int n);

}  // namespace sphcub
