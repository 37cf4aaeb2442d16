#include "sphcub/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sphcub {

namespace {

std::string class_label(ClassType t) {
  return std::string(generator_type(t).label);
}

}  // namespace

Vec3 Generator::point() const {
  const auto& p = params;
  switch (type) {
    case ClassType::origin: return {0.0, 0.0, 0.0};
    case ClassType::axis: return {p[0], 0.0, 0.0};
    case ClassType::edge: return {p[0], p[0], 0.0};
    case ClassType::edge_pair: return {p[0], p[1], 0.0};
    case ClassType::vertex: return {p[0], p[0], p[0]};
    case ClassType::face: return {p[0], p[0], p[1]};
    case ClassType::general: return {p[0], p[1], p[2]};
  }
  return {0.0, 0.0, 0.0};
}

void validate(const Generator& g) {
  const auto v = g.values();
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x))
      throw std::invalid_argument("generator " + class_label(g.type) +
                                  ": parameters must be positive and finite");
  }
  bool degenerate = false;
  switch (g.type) {
    case ClassType::edge_pair:
    case ClassType::face: degenerate = v[0] == v[1]; break;
    case ClassType::general:
      degenerate = v[0] == v[1] || v[1] == v[2] || v[0] == v[2];
      break;
    default: break;
  }
  if (degenerate)
    throw std::invalid_argument("generator " + class_label(g.type) +
                                ": coincident parameters belong to another class type");
}

Generator make_generator(ClassType type, std::span<const double> params) {
  Generator g;
  g.type = type;
  const int count = g.param_count();
  if (static_cast<int>(params.size()) != count)
    throw std::invalid_argument("generator " + class_label(type) + ": expected " +
                                std::to_string(count) + " parameters");
  std::copy(params.begin(), params.end(), g.params.begin());
  if (type == ClassType::edge_pair || type == ClassType::general)
    std::sort(g.params.begin(), g.params.begin() + count);
  validate(g);
  return g;
}

Generator canonicalize(const Vec3& p, double zero_tol) {
  std::array<double, 3> a{std::abs(p[0]), std::abs(p[1]), std::abs(p[2])};
  std::sort(a.begin(), a.end());
  int zeros = 0;
  for (double& x : a) {
    if (x <= zero_tol) {
      x = 0.0;
      ++zeros;
    }
  }
  const auto same = [zero_tol](double x, double y) { return std::abs(x - y) <= zero_tol; };

  Generator g;
  switch (zeros) {
    case 3: g.type = ClassType::origin; break;
    case 2:
      g.type = ClassType::axis;
      g.params[0] = a[2];
      break;
    case 1:
      if (same(a[1], a[2])) {
        g.type = ClassType::edge;
        g.params[0] = a[1];
      } else {
        g.type = ClassType::edge_pair;
        g.params = {a[1], a[2], 0.0};
      }
      break;
    default: {
      const bool lo = same(a[0], a[1]);
      const bool hi = same(a[1], a[2]);
      if (lo && hi) {
        g.type = ClassType::vertex;
        g.params[0] = a[0];
      } else if (lo) {
        g.type = ClassType::face;
        g.params = {a[0], a[2], 0.0};
      } else if (hi) {
        g.type = ClassType::face;
        g.params = {a[2], a[0], 0.0};
      } else {
        g.type = ClassType::general;
        g.params = a;
      }
    }
  }
  return g;
}

std::array<Vec3, 48> signed_permutations(const Vec3& p) {
  std::array<Vec3, 48> out{};
  std::array<int, 3> perm{0, 1, 2};
  std::size_t k = 0;
  do {
    for (int signs = 0; signs < 8; ++signs) {
      Vec3 q{};
      for (int c = 0; c < 3; ++c)
        q[c] = (signs >> c & 1) ? -p[perm[c]] : p[perm[c]];
      out[k++] = q;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Orbit orbit(const Generator& g) {
  validate(g);
  const auto images = signed_permutations(g.point());
  Orbit pts(images.begin(), images.end());
  // -0.0 and 0.0 compare equal, so sort+unique collapses sign flips of zeros.
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (auto& q : pts)
    for (double& x : q)
      if (x == 0.0) x = 0.0;
  return pts;
}

std::int64_t orbit_size_formula(int n, std::span<const int> multiplicities) {
  if (n < 0) throw std::invalid_argument("orbit_size_formula: n must be nonnegative");
  int r = 0;
  for (int l : multiplicities) {
    if (l < 1) throw std::invalid_argument("orbit_size_formula: multiplicities must be positive");
    r += l;
  }
  if (r > n) throw std::invalid_argument("orbit_size_formula: multiplicities exceed n");
  // 2^r n! / ((n - r)! l1! ... lp!), accumulated exactly.
  BigInt size = BigInt(1) << r;
  for (int k = n - r + 1; k <= n; ++k) size *= k;
  for (int l : multiplicities)
    for (int k = 2; k <= l; ++k) size /= k;
  return size.convert_to<std::int64_t>();
}

namespace {

std::int64_t count_parts(int parts, int total, int smallest) {
  if (parts == 0) return total == 0 ? 1 : 0;
  std::int64_t n = 0;
  for (int k = smallest; k * parts <= total; ++k) n += count_parts(parts - 1, total - k, k);
  return n;
}

}  // namespace

std::int64_t p_nu(int nu, int r) {
  if (nu < 0 || r < 0) return 0;
  if (nu == 0) return r == 1 ? 1 : 0;
  return count_parts(nu, r, 1);
}

std::int64_t equation_count(int m) {
  if (m < 1) throw std::invalid_argument("equation_count: m must be >= 1");
  std::int64_t total = 0;
  for (int r = 1; r <= m; ++r)
    for (int nu = 0; nu <= 3; ++nu) total += p_nu(nu, r);
  return total;
}

BigInt count_class_types(int n) {
  if (n < 1) throw std::invalid_argument("count_class_types: n must be >= 1");
  // partitions[k] = p(k), built one admissible part size at a time.
  std::vector<BigInt> partitions(static_cast<std::size_t>(n) + 1, 0);
  partitions[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int k = part; k <= n; ++k) partitions[k] += partitions[k - part];
  return std::accumulate(partitions.begin(), partitions.end(), BigInt(0));
}

namespace {

// Strings 1..1 2..2 ... p..p, each symbol either repeating the previous one
// or stepping up by one. Admissible iff the run lengths never increase.
struct StringEnumerator {
  int n;
  std::vector<int> runs;
  std::int64_t count = 0;

  bool admissible() const {
    for (std::size_t i = 1; i < runs.size(); ++i)
      if (runs[i] > runs[i - 1]) return false;
    return true;
  }

  void extend(int length) {
    if (!admissible()) return;
    ++count;
    if (length == n) return;
    ++runs.back();
    extend(length + 1);
    --runs.back();
    runs.push_back(1);
    extend(length + 1);
    runs.pop_back();
  }
};

}  // namespace

std::int64_t count_class_types_enumerated(int n) {
  if (n < 1) throw std::invalid_argument("count_class_types_enumerated: n must be >= 1");
  StringEnumerator e{n, {1}};
  e.extend(1);
  return e.count + 1;  // the empty string is the origin class
}

}  // namespace sphcub
