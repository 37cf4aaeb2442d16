#include "sphcub/star.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sphcub/moments.hpp"
#include "sphcub/ruleio.hpp"

namespace sphcub {

namespace {

constexpr std::array<ClassType, 6> kU3Classes{ClassType::axis,   ClassType::edge,
                                              ClassType::edge_pair, ClassType::vertex,
                                              ClassType::face,   ClassType::general};

int ci(ClassType t) { return static_cast<int>(t); }

// An inner monomial of a class contribution: coef * prod param_q^pow[q].
struct Mono {
  int coef = 1;
  std::array<int, 3> pow{};
};

// Contribution of one generator class to one row: coef * w * sum(inner).
// Rows without a weight factor (constraints) set weighted = false.
struct Contribution {
  int coef = 0;
  bool weighted = true;
  std::vector<Mono> inner;
};

Mono mono(int coef, int p0, int p1 = 0, int p2 = 0) { return Mono{coef, {p0, p1, p2}}; }

std::optional<Contribution> moment_contribution(ClassType t, const Equation& eq) {
  const int a = 2 * eq.j[0], b = 2 * eq.j[1], c = 2 * eq.j[2];
  switch (eq.subsystem) {
    case Subsystem::I:
      if (a == 0) return Contribution{generator_type(t).orbit_size, true, {mono(1, 0)}};
      switch (t) {
        case ClassType::axis: return Contribution{2, true, {mono(1, a)}};
        case ClassType::edge: return Contribution{8, true, {mono(1, a)}};
        case ClassType::edge_pair: return Contribution{8, true, {mono(1, a), mono(1, 0, a)}};
        case ClassType::vertex: return Contribution{8, true, {mono(1, a)}};
        case ClassType::face: return Contribution{8, true, {mono(2, a), mono(1, 0, a)}};
        case ClassType::general:
          return Contribution{16, true, {mono(1, a), mono(1, 0, a), mono(1, 0, 0, a)}};
        default: return std::nullopt;
      }
    case Subsystem::II:
      switch (t) {
        case ClassType::edge: return Contribution{4, true, {mono(1, a + b)}};
        case ClassType::edge_pair: return Contribution{4, true, {mono(1, a, b), mono(1, b, a)}};
        case ClassType::vertex: return Contribution{8, true, {mono(1, a + b)}};
        case ClassType::face:
          return Contribution{8, true, {mono(1, a + b), mono(1, a, b), mono(1, b, a)}};
        case ClassType::general:
          return Contribution{8, true,
                              {mono(1, a, b), mono(1, b, a), mono(1, a, 0, b), mono(1, b, 0, a),
                               mono(1, 0, a, b), mono(1, 0, b, a)}};
        default: return std::nullopt;
      }
    case Subsystem::III:
      switch (t) {
        case ClassType::vertex: return Contribution{8, true, {mono(1, a + b + c)}};
        case ClassType::face:
          return Contribution{8, true, {mono(1, a + b, c), mono(1, a + c, b), mono(1, b + c, a)}};
        case ClassType::general:
          return Contribution{8, true,
                              {mono(1, a, b, c), mono(1, a, c, b), mono(1, b, a, c), mono(1, b, c, a),
                               mono(1, c, a, b), mono(1, c, b, a)}};
        default: return std::nullopt;
      }
    case Subsystem::constraint: break;
  }
  return std::nullopt;
}

Contribution constraint_contribution(ClassType t) {
  switch (t) {
    case ClassType::axis:
    case ClassType::edge:
    case ClassType::vertex: return Contribution{1, false, {mono(1, 1)}};
    case ClassType::edge_pair: return Contribution{1, false, {mono(1, 2), mono(1, 0, 2)}};
    case ClassType::face: return Contribution{1, false, {mono(2, 2), mono(1, 0, 2)}};
    case ClassType::general:
      return Contribution{1, false, {mono(1, 2), mono(1, 0, 2), mono(1, 0, 0, 2)}};
    default: throw std::logic_error("constraint_contribution: origin has no constraint");
  }
}

double constraint_rhs(ClassType t) {
  switch (t) {
    case ClassType::edge: return 1.0 / std::sqrt(2.0);
    case ClassType::vertex: return 1.0 / std::sqrt(3.0);
    default: return 1.0;
  }
}

std::optional<Contribution> contribution(ClassType t, const Equation& eq) {
  if (eq.subsystem == Subsystem::constraint) {
    if (eq.constraint_class != t) return std::nullopt;
    return constraint_contribution(t);
  }
  return moment_contribution(t, eq);
}

void append_terms(const StarSystem& sys, ClassType t, int gen, const Contribution& con,
                  std::vector<Term>& row) {
  for (const Mono& mo : con.inner) {
    Term term;
    term.coef = double(con.coef) * double(mo.coef);
    term.weight = con.weighted ? sys.weight_index(t, gen) : -1;
    for (int q = 0; q < 3; ++q) {
      if (mo.pow[static_cast<std::size_t>(q)] == 0) continue;
      const auto f = static_cast<std::size_t>(term.factors++);
      term.var[f] = sys.param_index(t, gen, q);
      term.power[f] = mo.pow[static_cast<std::size_t>(q)];
    }
    row.push_back(term);
  }
}

void check_width(const StarSystem& sys, const Eigen::VectorXd& x) {
  if (x.size() != sys.variables)
    throw std::invalid_argument("star: variable vector has length " + std::to_string(x.size()) +
                                ", expected " + std::to_string(sys.variables));
}

}  // namespace

int StarSystem::weight_index(ClassType t, int i) const { return offset[std::size_t(ci(t))] + i; }

int StarSystem::param_index(ClassType t, int i, int q) const {
  return offset[std::size_t(ci(t))] + structure[ci(t)] * (1 + q) + i;
}

int StarSystem::moment_rows() const {
  return static_cast<int>(std::count_if(equations.begin(), equations.end(), [](const auto& e) {
    return e.subsystem != Subsystem::constraint;
  }));
}

StarSystem assemble(int m, const RuleStructure& structure) {
  if (m < 1) throw std::invalid_argument("assemble: m must be >= 1");
  if (!structure.is_u3())
    throw std::invalid_argument("assemble: " + structure.u3_string() + " is not a U3 structure");

  StarSystem sys;
  sys.m = m;
  sys.structure = structure;
  int next = 0;
  for (ClassType t : kU3Classes) {
    sys.offset[std::size_t(ci(t))] = next;
    next += structure[ci(t)] * (1 + generator_type(t).param_count);
  }
  sys.variables = next;

  auto add_moment = [&](Subsystem s, int j1, int j2, int j3) {
    Equation eq;
    eq.subsystem = s;
    eq.j = {j1, j2, j3};
    eq.rhs = moment(j1, j2, j3).value();
    sys.equations.push_back(eq);
  };
  add_moment(Subsystem::I, 0, 0, 0);
  for (int j1 = 1; j1 <= m; ++j1) add_moment(Subsystem::I, j1, 0, 0);
  for (int j1 = 1; j1 <= m; ++j1)
    for (int j2 = j1; j2 <= m - j1; ++j2) add_moment(Subsystem::II, j1, j2, 0);
  for (int j1 = 1; j1 <= m; ++j1)
    for (int j2 = j1; j2 <= m - j1; ++j2)
      for (int j3 = j2; j3 <= m - j1 - j2; ++j3) add_moment(Subsystem::III, j1, j2, j3);
  for (ClassType t : kU3Classes)
    for (int i = 0; i < structure[ci(t)]; ++i) {
      Equation eq;
      eq.subsystem = Subsystem::constraint;
      eq.constraint_class = t;
      eq.generator = i;
      eq.rhs = constraint_rhs(t);
      sys.equations.push_back(eq);
    }

  sys.rows.resize(sys.equations.size());
  for (std::size_t r = 0; r < sys.equations.size(); ++r) {
    const Equation& eq = sys.equations[r];
    for (ClassType t : kU3Classes) {
      const auto con = contribution(t, eq);
      if (!con) continue;
      if (eq.subsystem == Subsystem::constraint) {
        append_terms(sys, t, eq.generator, *con, sys.rows[r]);
      } else {
        for (int i = 0; i < structure[ci(t)]; ++i) append_terms(sys, t, i, *con, sys.rows[r]);
      }
    }
  }
  return sys;
}

Eigen::VectorXd residual(const StarSystem& sys, const Eigen::VectorXd& x) {
  check_width(sys, x);
  Eigen::VectorXd r(static_cast<Eigen::Index>(sys.rows.size()));
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    double s = 0.0;
    for (const Term& t : sys.rows[i]) {
      double v = t.coef;
      if (t.weight >= 0) v *= x[t.weight];
      for (int f = 0; f < t.factors; ++f) v *= std::pow(x[t.var[std::size_t(f)]], t.power[std::size_t(f)]);
      s += v;
    }
    r[static_cast<Eigen::Index>(i)] = s - sys.equations[i].rhs;
  }
  return r;
}

Eigen::MatrixXd jacobian(const StarSystem& sys, const Eigen::VectorXd& x) {
  check_width(sys, x);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sys.rows.size()), sys.variables);
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (const Term& t : sys.rows[i]) {
      std::array<double, 3> pw{};
      double prod = 1.0;
      for (int f = 0; f < t.factors; ++f) {
        const auto k = std::size_t(f);
        pw[k] = std::pow(x[t.var[k]], t.power[k]);
        prod *= pw[k];
      }
      const double w = t.weight >= 0 ? x[t.weight] : 1.0;
      if (t.weight >= 0) jac(row, t.weight) += t.coef * prod;
      for (int f = 0; f < t.factors; ++f) {
        const auto k = std::size_t(f);
        double d = t.coef * w * t.power[k] * std::pow(x[t.var[k]], t.power[k] - 1);
        for (int g = 0; g < t.factors; ++g)
          if (g != f) d *= pw[std::size_t(g)];
        jac(row, t.var[k]) += d;
      }
    }
  }
  return jac;
}

// Solving

namespace {

double inf_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

struct Attempt {
  Eigen::VectorXd x;
  double norm = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

// Levenberg-Marquardt with Nielsen's damping update.
Attempt levenberg_marquardt(const StarSystem& sys, Eigen::VectorXd x, const SolveConfig& cfg) {
  Eigen::VectorXd r = residual(sys, x);
  Eigen::MatrixXd jac = jacobian(sys, x);
  Eigen::MatrixXd a = jac.transpose() * jac;
  Eigen::VectorXd g = jac.transpose() * r;
  double mu = 1e-3 * std::max(1.0, a.diagonal().maxCoeff());
  double nu = 2.0;
  double f = 0.5 * r.squaredNorm();
  int stalled = 0;

  Attempt out;
  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    if (inf_norm(r) <= cfg.residual_tol) break;
    Eigen::MatrixXd damped = a;
    damped.diagonal().array() += mu;
    const Eigen::VectorXd h = damped.ldlt().solve(-g);
    if (!h.allFinite()) break;
    if (h.norm() <= cfg.step_tol * (x.norm() + cfg.step_tol)) break;

    const Eigen::VectorXd xn = x + h;
    const Eigen::VectorXd rn = residual(sys, xn);
    const double fn = 0.5 * rn.squaredNorm();
    const double predicted = 0.5 * h.dot(mu * h - g);
    if (std::isfinite(fn) && fn < f && predicted > 0.0) {
      const double rho = (f - fn) / predicted;
      stalled = (f - fn) <= 1e-15 * f ? stalled + 1 : 0;
      x = xn;
      r = rn;
      f = fn;
      jac = jacobian(sys, x);
      a.noalias() = jac.transpose() * jac;
      g.noalias() = jac.transpose() * r;
      mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
      nu = 2.0;
      if (stalled >= 20) break;
    } else {
      mu *= nu;
      nu *= 2.0;
      if (!std::isfinite(mu) || mu > 1e300) break;
    }
  }
  out.x = std::move(x);
  out.norm = inf_norm(r);
  out.iterations = it;
  return out;
}

bool degenerate(const StarSystem& sys, const Eigen::VectorXd& x, double gap) {
  try {
    unpack(sys, x, gap);
    return false;
  } catch (const std::invalid_argument&) {
    return true;
  }
}

template <class Visit>
void run_restarts(const StarSystem& sys, const SolveConfig& cfg, Visit&& visit) {
  if (cfg.restarts < 1 || cfg.max_iterations < 1 || !(cfg.residual_tol > 0) || !(cfg.step_tol > 0))
    throw std::invalid_argument("solve: restarts, iterations and tolerances must be positive");
  for (int k = 0; k < cfg.restarts; ++k) {
    Attempt at = levenberg_marquardt(sys, starting_point(sys, cfg.seed, k), cfg);
    SolveOutcome o;
    o.best_x = canonical(sys, at.x);
    o.best_residual_norm = inf_norm(residual(sys, o.best_x));
    o.converged = o.best_residual_norm <= cfg.residual_tol && !degenerate(sys, o.best_x, cfg.degenerate_gap);
    o.restart_index = k;
    o.iterations = at.iterations;
    if (!visit(std::move(o))) return;
  }
}

}  // namespace

Eigen::VectorXd starting_point(const StarSystem& sys, std::uint64_t seed, int index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index), 0x5eedu};
  std::mt19937_64 gen(seq);
  Eigen::VectorXd x(sys.variables);
  // (k + 0.5) / 2^53 lies strictly inside (0, 1) and does not depend on the
  // standard library's distribution implementation.
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = (double(gen() >> 11) + 0.5) * 0x1p-53;
  const auto& s = sys.structure;
  if (s[1]) x[sys.param_index(ClassType::axis, 0, 0)] = 1.0;
  if (s[2]) x[sys.param_index(ClassType::edge, 0, 0)] = 1.0 / std::sqrt(2.0);
  if (s[4]) x[sys.param_index(ClassType::vertex, 0, 0)] = 1.0 / std::sqrt(3.0);
  return x;
}

SolveOutcome solve(const StarSystem& sys, const SolveConfig& config) {
  SolveOutcome best;
  best.best_residual_norm = std::numeric_limits<double>::infinity();
  run_restarts(sys, config, [&](SolveOutcome o) {
    if (o.converged) {
      best = std::move(o);
      return false;
    }
    if (best.restart_index < 0 || o.best_residual_norm < best.best_residual_norm) best = std::move(o);
    return true;
  });
  return best;
}

std::vector<SolveOutcome> solve_collect(const StarSystem& sys, const SolveConfig& config, int k) {
  if (k < 1) throw std::invalid_argument("solve_collect: k must be >= 1");
  std::vector<SolveOutcome> found;
  run_restarts(sys, config, [&](SolveOutcome o) {
    if (!o.converged) return true;
    for (const auto& f : found)
      if (inf_norm(f.best_x - o.best_x) <= 1e-6) return true;
    found.push_back(std::move(o));
    return static_cast<int>(found.size()) < k;
  });
  return found;
}

Eigen::VectorXd canonical(const StarSystem& sys, const Eigen::VectorXd& x) {
  check_width(sys, x);
  Eigen::VectorXd out = x;
  for (ClassType t : kU3Classes) {
    const int count = sys.structure[ci(t)];
    const int p = generator_type(t).param_count;
    std::vector<std::array<double, 4>> gens(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      auto& gi = gens[std::size_t(i)];
      for (int q = 0; q < p; ++q) gi[std::size_t(q)] = std::abs(x[sys.param_index(t, i, q)]);
      if (t == ClassType::edge_pair || t == ClassType::general) std::sort(gi.begin(), gi.begin() + p);
      gi[3] = x[sys.weight_index(t, i)];
    }
    std::stable_sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
    for (int i = 0; i < count; ++i) {
      const auto& gi = gens[std::size_t(i)];
      out[sys.weight_index(t, i)] = gi[3];
      for (int q = 0; q < p; ++q) out[sys.param_index(t, i, q)] = gi[std::size_t(q)];
    }
  }
  return out;
}

CubatureRule unpack(const StarSystem& sys, const Eigen::VectorXd& x, double degenerate_gap) {
  const Eigen::VectorXd c = canonical(sys, x);
  CubatureRule rule;
  rule.m = sys.m;
  rule.structure = sys.structure;
  rule.provenance = Provenance::solved;
  for (ClassType t : kU3Classes) {
    const int p = generator_type(t).param_count;
    for (int i = 0; i < sys.structure[ci(t)]; ++i) {
      std::array<double, 3> v{};
      for (int q = 0; q < p; ++q) v[std::size_t(q)] = c[sys.param_index(t, i, q)];
      for (int q = 0; q < p; ++q) {
        if (v[std::size_t(q)] <= degenerate_gap)
          throw std::invalid_argument("unpack: parameter of " + std::string(1, weight_letter(t)) + "_" +
                                      std::to_string(i + 1) + " vanishes");
        for (int s = 0; s < q; ++s)
          if (std::abs(v[std::size_t(q)] - v[std::size_t(s)]) <= degenerate_gap)
            throw std::invalid_argument("unpack: coincident parameters in " +
                                        std::string(1, weight_letter(t)) + "_" + std::to_string(i + 1));
      }
      WeightedGenerator wg{c[sys.weight_index(t, i)], make_generator(t, std::span(v.data(), std::size_t(p)))};
      for (const auto& prev : rule.blocks) {
        if (prev.generator.type != t) continue;
        double gap = 0.0;
        for (int q = 0; q < p; ++q)
          gap = std::max(gap, std::abs(prev.generator.params[std::size_t(q)] - v[std::size_t(q)]));
        if (gap <= degenerate_gap)
          throw std::invalid_argument("unpack: repeated generator in class " +
                                      std::string(generator_type(t).label));
      }
      rule.blocks.push_back(wg);
    }
  }
  return rule;
}

Eigen::VectorXd pack(const StarSystem& sys, const CubatureRule& rule) {
  if (rule.structure != sys.structure)
    throw std::invalid_argument("pack: rule structure " + rule.structure.u3_string() +
                                " does not match system structure " + sys.structure.u3_string());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(sys.variables);
  for (ClassType t : kU3Classes) {
    const auto blocks = blocks_of(rule, t);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const int gi = static_cast<int>(i);
      x[sys.weight_index(t, gi)] = blocks[i].weight;
      for (int q = 0; q < generator_type(t).param_count; ++q)
        x[sys.param_index(t, gi, q)] = blocks[i].generator.params[std::size_t(q)];
    }
  }
  return x;
}

char weight_letter(ClassType t) { return "oabcdef"[ci(t)]; }

Goodness classify(const CubatureRule& rule, double tol) {
  Goodness g;
  g.all_weights_positive = true;
  g.all_points_on_sphere = true;
  g.weight_min = std::numeric_limits<double>::infinity();
  std::array<int, 7> seen{};
  for (const auto& b : rule.blocks) {
    const int idx = ++seen[std::size_t(ci(b.generator.type))];
    const std::string label = std::string(1, weight_letter(b.generator.type)) + "_" + std::to_string(idx);
    g.weight_min = std::min(g.weight_min, b.weight);
    if (!(b.weight > 0.0)) {
      g.all_weights_positive = false;
      std::ostringstream os;
      os.precision(14);
      os << label << " = " << b.weight;
      g.offending.push_back(os.str());
    }
    for (const Vec3& p : orbit(b.generator)) {
      const double dev = std::abs(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) - 1.0);
      if (dev > tol) {
        g.all_points_on_sphere = false;
        std::ostringstream os;
        os.precision(3);
        os << "orbit of " << label << " off the sphere by " << dev;
        g.offending.push_back(os.str());
        break;
      }
    }
  }
  if (rule.blocks.empty()) g.weight_min = 0.0;
  g.good = g.all_weights_positive && g.all_points_on_sphere;
  return g;
}

// Rendering

namespace {

constexpr std::array<std::array<const char*, 3>, 7> kParamNames{{
    {"", "", ""},
    {"alpha", "", ""},
    {"beta", "", ""},
    {"gamma", "delta", ""},
    {"epsilon", "", ""},
    {"zeta", "eta", ""},
    {"theta", "mu", "lambda"},
}};

struct Style {
  bool latex;
  std::string symbol(const char* name) const { return latex ? std::string("\\") + name : name; }
  std::string power(int p) const {
    if (latex) return "^{" + std::to_string(p) + "}";
    return "^" + std::to_string(p);
  }
};

std::string render_mono(ClassType t, const Mono& mo, const std::string& idx, const Style& st,
                        bool constraint) {
  std::string s;
  if (mo.coef != 1) s += std::to_string(mo.coef) + " ";
  bool first = true;
  for (int q = 0; q < 3; ++q) {
    const int p = mo.pow[std::size_t(q)];
    if (p == 0) continue;
    if (!first) s += " ";
    first = false;
    s += st.symbol(kParamNames[std::size_t(ci(t))][std::size_t(q)]) + "_" + idx;
    // Constraint rows print squares as ^2 in both styles.
    if (p != 1) s += constraint ? "^" + std::to_string(p) : st.power(p);
  }
  return s;
}

std::string render_contribution(ClassType t, int count, const Contribution& con, const Style& st) {
  const std::string idx = count > 1 ? "i" : "1";
  std::string s = std::to_string(con.coef) + " ";
  if (count > 1) s += (st.latex ? "\\sum_{i=1}^{" : "sum_{i=1}^{") + std::to_string(count) + "} ";
  s += std::string(1, weight_letter(t)) + "_" + idx;
  const bool bare = con.inner.size() == 1 && con.inner[0].pow == std::array<int, 3>{};
  if (bare) return s;
  std::vector<std::string> parts;
  for (const Mono& mo : con.inner) parts.push_back(render_mono(t, mo, idx, st, false));
  if (parts.size() == 1) return s + " " + parts[0];
  s += " ( ";
  for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? " + " : "") + parts[k];
  return s + " )";
}

std::string moment_label(const Equation& eq, const Style& st) {
  static constexpr std::array<char, 3> vars{'x', 'y', 'z'};
  std::string inner;
  for (std::size_t k = 0; k < 3; ++k) {
    if (eq.j[k] == 0) continue;
    if (!inner.empty()) inner += " ";
    inner += std::string(1, vars[k]) + st.power(2 * eq.j[k]);
  }
  if (inner.empty()) inner = "1";
  return st.latex ? "I [ " + inner + " ]" : "I[" + inner + "]";
}

std::string constraint_rhs_text(ClassType t, const Style& st) {
  switch (t) {
    case ClassType::edge: return st.latex ? "1/\\sqrt{2}" : "1/sqrt(2)";
    case ClassType::vertex: return st.latex ? "1/\\sqrt{3}" : "1/sqrt(3)";
    default: return "1";
  }
}

std::string constraint_expr(ClassType t, const std::string& idx, const Style& st) {
  const Contribution con = constraint_contribution(t);
  std::string s;
  for (std::size_t k = 0; k < con.inner.size(); ++k)
    s += (k ? " + " : "") + render_mono(t, con.inner[k], idx, st, true);
  return s;
}

}  // namespace

std::string render_star(const StarSystem& sys, bool latex) {
  const Style st{latex};
  std::ostringstream os;
  if (latex) os << "\\begin{eqnarray*}\n";
  bool first_row = true;
  auto begin_row = [&] {
    if (latex && !first_row) os << "  \\\\\n";
    first_row = false;
  };

  for (const Equation& eq : sys.equations) {
    if (eq.subsystem == Subsystem::constraint) continue;
    std::vector<std::string> parts;
    for (ClassType t : kU3Classes) {
      const int count = sys.structure[ci(t)];
      if (count == 0) continue;
      if (const auto con = moment_contribution(t, eq)) parts.push_back(render_contribution(t, count, *con, st));
    }
    if (parts.empty()) parts.push_back("0");
    begin_row();
    if (latex) {
      os << "  " << moment_label(eq, st) << "\n  & = &\n";
      for (std::size_t k = 0; k < parts.size(); ++k)
        os << "  " << parts[k] << (k + 1 < parts.size() ? " +" : "") << "\n";
    } else {
      os << moment_label(eq, st) << " =";
      for (std::size_t k = 0; k < parts.size(); ++k) os << (k ? " + " : " ") << parts[k];
      os << "\n";
    }
  }

  for (ClassType t : kU3Classes) {
    const int count = sys.structure[ci(t)];
    if (count == 0) continue;
    if (latex) {
      begin_row();
      os << "  " << constraint_rhs_text(t, st) << "\n  & = &\n  "
         << constraint_expr(t, count > 1 ? "i" : "1", st);
      if (count > 1) os << " \\qquad i = 1, \\dots, " << count;
      os << "\n";
    } else {
      for (int i = 0; i < count; ++i)
        os << constraint_rhs_text(t, st) << " = " << constraint_expr(t, std::to_string(i + 1), st) << "\n";
    }
  }
  if (latex) os << "\\end{eqnarray*}\n\n";
  os << "There are a total of " << sys.equations.size() << " equations.\n";
  return os.str();
}

}  // namespace sphcub
