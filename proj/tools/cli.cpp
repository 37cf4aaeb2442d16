#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sphcub/moments.hpp"
#include "sphcub/product.hpp"
#include "sphcub/ruleio.hpp"
#include "sphcub/search.hpp"
#include "sphcub/star.hpp"
#include "sphcub/symmetry.hpp"

namespace sphcub::cli {

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::optional<double> tol;
  bool quiet = false;
  std::string format = "text";

  bool machine() const { return format == "machine"; }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RuleStructure parse_structure(const std::string& text) {
  std::vector<int> k;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      k.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--structure: '" + item + "' is not an integer");
    }
  }
  if (k.size() != 6) throw UsageError("--structure expects six comma-separated counts K1,...,K6");
  const auto s = RuleStructure::u3(k);
  if (!s.is_u3()) throw UsageError("--structure: " + s.u3_string() + " needs K1, K2, K4 in {0,1} and no negatives");
  return s;
}

std::string fixed(double v, int digits = 14) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

AnyRule resolve_rule(const std::string& ref) {
  if (auto b = find_builtin(ref)) return *b;
  if (ref.rfind("bundled:", 0) == 0) throw UsageError("unknown bundled rule '" + ref + "'");
  return load(std::filesystem::path(ref));
}

const char* kParamNames[7][3] = {{"", "", ""},        {"alpha", "", ""}, {"beta", "", ""},
                                 {"gamma", "delta", ""}, {"epsilon", "", ""}, {"zeta", "eta", ""},
                                 {"theta", "mu", "lambda"}};

void print_rule(const CubatureRule& rule, const Goodness& g, const Globals& gl, std::ostream& out) {
  if (gl.machine()) {
    out << "rule " << rule.name << " " << rule.degree() << " " << cost(rule.structure) << "\n";
    for (const auto& b : rule.blocks) {
      out << "block " << generator_type(b.generator.type).label << " " << format_double(b.weight);
      for (double v : b.generator.values()) out << " " << format_double(v);
      out << "\n";
    }
    out << "good " << (g.good ? 1 : 0) << "\n";
    return;
  }
  out << rule.name << "\n";
  out << "degree " << rule.degree() << ", " << cost(rule.structure) << " points\n";
  std::array<int, 7> seen{};
  for (const auto& b : rule.blocks) {
    const int t = static_cast<int>(b.generator.type);
    const int idx = ++seen[std::size_t(t)];
    out << "  " << weight_letter(b.generator.type) << "_" << idx << " = " << std::setw(18) << std::left
        << fixed(b.weight) << std::right;
    for (int q = 0; q < b.generator.param_count(); ++q)
      out << "  " << kParamNames[t][q] << "_" << idx << " = " << fixed(b.generator.params[std::size_t(q)]);
    out << "\n";
  }
  if (g.good) {
    out << "good: all weights positive, all points on the sphere\n";
  } else {
    out << "not good:";
    for (const auto& o : g.offending) out << " " << o << ";";
    out << "\n";
  }
}

void print_report(const VerificationReport& rep, std::size_t points, const std::string& name, const Globals& gl,
                  std::ostream& out) {
  if (gl.machine()) {
    out << "verify " << rep.degree << " " << points << " " << format_double(rep.max_even_error) << " "
        << format_double(rep.max_odd_error) << " " << format_double(rep.weight_min) << " "
        << format_double(rep.max_norm_deviation) << " " << (rep.passes ? 1 : 0) << "\n";
    return;
  }
  if (!name.empty()) out << "rule:               " << name << "\n";
  out << "degree:             " << rep.degree << "\n";
  out << "points:             " << points << "\n";
  out << "max even error:     " << fixed(rep.max_even_error, 3) << " (x^" << rep.worst_even[0] << " y^"
      << rep.worst_even[1] << " z^" << rep.worst_even[2] << ")\n";
  out << "max odd error:      " << fixed(rep.max_odd_error, 3) << "\n";
  out << "min weight:         " << fixed(rep.weight_min) << "\n";
  out << "max norm deviation: " << fixed(rep.max_norm_deviation, 3) << "\n";
  out << "tolerance:          " << fixed(rep.tolerance, 3) << "\n";
  out << "result:             " << (rep.passes ? "pass" : "FAIL") << "\n";
}

void write_rule(const AnyRule& rule, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    std::visit([&](const auto& r) { save(r, out); }, rule);
  } else {
    save(rule, std::filesystem::path(path));
  }
}

// Subcommands

int cmd_classes(int n, int max, bool brute, const Globals&, std::ostream& out) {
  if (n < 0 && max < 0) throw UsageError("classes: give --n or --max");
  const int lo = n >= 0 ? n : 1;
  const int hi = n >= 0 ? n : max;
  if (lo < 1) throw UsageError("classes: n must be >= 1");
  if (brute && hi > 40) throw UsageError("classes --brute is limited to n <= 40");
  for (int k = lo; k <= hi; ++k) {
    if (brute) out << k << " " << count_class_types_enumerated(k) << "\n";
    else out << k << " " << count_class_types(k) << "\n";
  }
  return ok;
}

int cmd_search(int m, int kbound, std::optional<int> nmax, int minima, bool general, const Globals&,
               std::ostream& out) {
  if (m < 1) throw UsageError("search: --m must be >= 1");
  if (kbound < 1) throw UsageError("search: --kbound must be >= 1");
  std::vector<StructureSolution> sols;
  if (general) {
    sols = nmax ? enumerate_general3d(m, kbound, *nmax) : first_minima_general3d(m, minima, kbound);
  } else {
    sols = nmax ? enumerate_structures(m, kbound, *nmax) : first_minima(m, minima, kbound);
  }
  for (const auto& s : sols) {
    out << m << " " << s.minimum_index << " " << s.lexical_index << " " << s.N;
    for (int i = general ? 0 : 1; i <= 6; ++i) out << " " << s.structure[i];
    out << " " << s.v << "\n";
  }
  return ok;
}

int cmd_lowerbound(int m, int max, const Globals& gl, std::ostream& out) {
  if (m < 0 && max < 0) throw UsageError("lowerbound: give --m or --max");
  const int lo = m >= 0 ? m : 1;
  const int hi = m >= 0 ? m : max;
  if (lo < 1) throw UsageError("lowerbound: m must be >= 1");
  for (int k = lo; k <= hi; ++k) {
    const auto r = lp_lower_bound(k);
    if (gl.machine()) {
      out << k << " " << format_double(r.N_lb);
      for (int i = 1; i <= 6; ++i) out << " " << format_double(r.fractional_K[std::size_t(i)]);
      out << "\n";
    } else {
      out << "m = " << k << "  N_lb = " << fixed(r.N_lb, 10) << "  K = (";
      for (int i = 1; i <= 6; ++i) out << (i > 1 ? ", " : "") << fixed(r.fractional_K[std::size_t(i)], 6);
      out << ")\n";
    }
  }
  return ok;
}

int cmd_moments(int m, const Globals& gl, std::ostream& out) {
  if (m < 1) throw UsageError("moments: --m must be >= 1");
  for (const auto& [key, mom] : moment_table(m)) {
    if (gl.machine()) {
      out << key[0] << " " << key[1] << " " << key[2] << " " << mom.numerator << " " << mom.denominator << "\n";
    } else {
      out << "I[x^" << 2 * key[0] << " y^" << 2 * key[1] << " z^" << 2 * key[2] << "] = " << mom.to_string()
          << "\n";
    }
  }
  return ok;
}

int cmd_star(int m, const std::string& structure, bool latex, std::ostream& out) {
  if (m < 1) throw UsageError("star: --m must be >= 1");
  out << render_star(assemble(m, parse_structure(structure)), latex);
  return ok;
}

CubatureRule named(CubatureRule rule, std::ostream& err, const Globals& gl) {
  if (const auto loc = locate(rule.m, rule.structure)) {
    rule.name = rule_name(rule, loc->minimum_index, loc->lexical_index);
  } else {
    rule.name = rule_name(rule, 0, 0);
    if (!gl.quiet) err << "note: " << rule.structure.u3_string() << " is not feasible for m = " << rule.m << "\n";
  }
  return rule;
}

int cmd_solve(int m, const std::string& structure, int restarts, int max_iterations, int collect,
              const std::string& out_path, const Globals& gl, std::ostream& out, std::ostream& err) {
  if (m < 1) throw UsageError("solve: --m must be >= 1");
  if (restarts < 1 || max_iterations < 1 || collect < 1) throw UsageError("solve: counts must be positive");
  const auto sys = assemble(m, parse_structure(structure));
  SolveConfig cfg;
  cfg.seed = gl.seed;
  cfg.restarts = restarts;
  cfg.max_iterations = max_iterations;
  if (gl.tol) cfg.residual_tol = *gl.tol;

  std::vector<SolveOutcome> found;
  if (collect > 1) {
    found = solve_collect(sys, cfg, collect);
  } else {
    auto best = solve(sys, cfg);
    if (!best.converged) {
      err << "solve: no converged solution in " << restarts << " restarts (best residual "
          << fixed(best.best_residual_norm, 3) << " at restart " << best.restart_index << ")\n";
      return failure;
    }
    found.push_back(std::move(best));
  }
  if (found.empty()) {
    err << "solve: no converged solution in " << restarts << " restarts\n";
    return failure;
  }
  for (std::size_t k = 0; k < found.size(); ++k) {
    const auto& o = found[k];
    const CubatureRule rule = named(unpack(sys, o.best_x, cfg.degenerate_gap), err, gl);
    const Goodness g = classify(rule, gl.tol.value_or(1e-12));
    if (!gl.quiet && !gl.machine())
      out << "# solution " << k + 1 << ": restart " << o.restart_index << ", residual "
          << fixed(o.best_residual_norm, 3) << "\n";
    print_rule(rule, g, gl, out);
    if (k == 0 && !out_path.empty()) write_rule(rule, out_path, out);
  }
  return ok;
}

int cmd_verify(const std::string& ref, std::optional<int> degree, const Globals& gl, std::ostream& out) {
  const AnyRule any = resolve_rule(ref);
  PointRule pts;
  std::optional<CubatureRule> gen;
  if (const auto* c = std::get_if<CubatureRule>(&any)) {
    gen = *c;
    pts = expand(*c);
  } else {
    pts = std::get<PointRule>(any);
  }
  const int d = degree.value_or(pts.degree);
  if (d < 1 || d % 2 == 0) throw UsageError("verify: give an odd --degree (the rule file has none)");
  const auto rep = verify(pts, d, gl.tol.value_or(kDefaultVerifyTolerance));
  print_report(rep, pts.size(), pts.name, gl, out);
  if (gen) {
    const Goodness g = classify(*gen, 1e-12);
    if (gl.machine()) {
      out << "good " << (g.good ? 1 : 0) << "\n";
    } else {
      out << "good:               " << (g.good ? "yes" : "no");
      for (const auto& o : g.offending) out << " (" << o << ")";
      out << "\n";
    }
  }
  return rep.passes ? ok : failure;
}

int cmd_product(int m, const std::string& out_path, const Globals& gl, std::ostream& out) {
  if (m < 1) throw UsageError("product: --m must be >= 1");
  write_rule(u3_product_rule(m), out_path, out);
  if (!out_path.empty() && out_path != "-" && !gl.quiet)
    out << "wrote " << 2 * m * m << "-point rule of degree " << 2 * m - 1 << " to " << out_path << "\n";
  return ok;
}

int cmd_integrate(const std::string& ref, const std::string& function, const Globals& gl, std::ostream& out) {
  const AnyRule any = resolve_rule(ref);
  const PointRule pts = std::visit(
      [](const auto& r) -> PointRule {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, CubatureRule>) return expand(r);
        else return r;
      },
      any);
  Integrand f;
  std::optional<double> exact;
  if (function == "constant") {
    f = [](const Vec3&) { return 1.0; };
    exact = 4.0 * std::numbers::pi;
  } else if (function == "exp") {
    f = [](const Vec3& p) { return std::exp(p[0] + p[1] + p[2]); };
    // The integral depends only on |(1,1,1)| = sqrt(3): 4 pi sinh(r) / r.
    const double r = std::sqrt(3.0);
    exact = 4.0 * std::numbers::pi * std::sinh(r) / r;
  } else if (function.rfind("monomial:", 0) == 0) {
    std::array<int, 3> e{};
    char c1 = 0, c2 = 0;
    std::istringstream is(function.substr(9));
    if (!(is >> e[0] >> c1 >> e[1] >> c2 >> e[2]) || c1 != ',' || c2 != ',' || !is.eof() ||
        std::any_of(e.begin(), e.end(), [](int v) { return v < 0; }))
      throw UsageError("--function monomial:a,b,c needs three nonnegative integers");
    f = [e](const Vec3& p) { return std::pow(p[0], e[0]) * std::pow(p[1], e[1]) * std::pow(p[2], e[2]); };
    exact = moment_value(e[0], e[1], e[2]);
  } else {
    throw UsageError("--function must be constant, exp or monomial:a,b,c");
  }
  const double v = integrate(pts, f);
  if (gl.machine()) {
    out << format_double(v) << " " << format_double(*exact) << " " << format_double(std::abs(v - *exact)) << "\n";
  } else {
    out << "integral = " << fixed(v, 17) << "\n";
    out << "exact    = " << fixed(*exact, 17) << "\n";
    out << "error    = " << fixed(std::abs(v - *exact), 3) << "\n";
  }
  return ok;
}

int cmd_rules(const std::string& action, const std::string& key, const std::string& out_path, const Globals& gl,
              std::ostream& out) {
  if (action == "list") {
    for (const auto& r : builtin_rules()) {
      const Goodness g = classify(r);
      if (gl.machine()) {
        out << builtin_key(r) << " " << r.name << " " << r.degree() << " " << cost(r.structure) << " "
            << (g.good ? 1 : 0) << "\n";
      } else {
        out << std::left << std::setw(16) << builtin_key(r) << std::setw(30) << r.name << std::right << " degree "
            << std::setw(2) << r.degree() << "  N = " << std::setw(3) << cost(r.structure)
            << (g.good ? "  good" : "  not good") << "\n";
      }
    }
    return ok;
  }
  if (action == "export") {
    if (key.empty()) throw UsageError("rules export: give --key (e.g. bundled:m5)");
    const auto r = find_builtin(key);
    if (!r) throw UsageError("unknown bundled rule '" + key + "'");
    write_rule(*r, out_path, out);
    return ok;
  }
  throw UsageError("rules: action must be list or export");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fully symmetric cubature rules on the unit sphere"};
  app.name("sphcub");
  app.require_subcommand(1);
  app.fallthrough();

  Globals gl;
  double tol = 0.0;
  app.add_option("--seed", gl.seed, "Random seed for the solver")->capture_default_str();
  auto* tol_opt = app.add_option("--tol", tol, "Tolerance (verify: error bound, solve: residual bound)")
                      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", gl.quiet, "Suppress informational output");
  app.add_option("--format", gl.format, "Output format")
      ->check(CLI::IsMember({"text", "machine", "table"}))
      ->capture_default_str();

  int n = -1, max = -1;
  bool brute = false;
  auto* classes = app.add_subcommand("classes", "Number of equivalence class types in n dimensions");
  classes->add_option("--n", n, "Dimension");
  classes->add_option("--max", max, "Print n = 1..max");
  classes->add_flag("--brute", brute, "Count by exhaustive enumeration");

  int m = -1, kbound = 20, minima = 5;
  std::optional<int> nmax;
  bool general = false;
  auto* search = app.add_subcommand("search", "Integer structures satisfying the consistency constraints");
  search->add_option("--m", m, "Rule of degree 2m+1")->required();
  search->add_option("--kbound", kbound, "Bound on K3, K5, K6 (general: all counts)")->capture_default_str();
  search->add_option("--nmax", nmax, "Largest point count to enumerate (default: first --minima minima)");
  search->add_option("--minima", minima, "Number of consecutive minima")->capture_default_str();
  search->add_flag("--general3d", general, "Use the general 3D constraints (prints K0 too)");

  auto* lower = app.add_subcommand("lowerbound", "LP relaxation lower bound on the point count");
  lower->add_option("--m", m, "Rule of degree 2m+1");
  lower->add_option("--max", max, "Print m = 1..max");

  auto* moments = app.add_subcommand("moments", "Exact moments of even monomials");
  moments->add_option("--m", m, "Largest j1+j2+j3")->required();

  std::string structure;
  bool latex = false;
  auto* star = app.add_subcommand("star", "List the moment equations for a structure");
  star->add_option("--m", m, "Rule of degree 2m+1")->required();
  star->add_option("--structure", structure, "K1,K2,K3,K4,K5,K6")->required();
  star->add_flag("--latex", latex, "Emit an eqnarray* block");

  int restarts = 100, max_iterations = 10000, collect = 1;
  std::string out_path;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the moment equations for a structure");
  solve_cmd->add_option("--m", m, "Rule of degree 2m+1")->required();
  solve_cmd->add_option("--structure", structure, "K1,K2,K3,K4,K5,K6")->required();
  solve_cmd->add_option("--restarts", restarts, "Random starts")->capture_default_str();
  solve_cmd->add_option("--max-iterations", max_iterations, "Iterations per start")->capture_default_str();
  solve_cmd->add_option("--collect", collect, "Keep up to this many distinct solutions")->capture_default_str();
  solve_cmd->add_option("--out", out_path, "Write the (first) rule to this file");

  std::string rule_ref;
  std::optional<int> degree;
  auto* verify_cmd = app.add_subcommand("verify", "Check a rule against exact moments");
  verify_cmd->add_option("--rule", rule_ref, "Rule file, bundled:mK or a bundled rule name")->required();
  verify_cmd->add_option("--degree", degree, "Claimed degree (default: from the rule)");

  auto* product = app.add_subcommand("product", "Product rule with 2m^2 points");
  product->add_option("--m", m, "Number of Gauss-Legendre nodes")->required();
  product->add_option("--out", out_path, "Output file (default: standard output)");

  std::string function;
  auto* integrate_cmd = app.add_subcommand("integrate", "Apply a rule to a test integrand");
  integrate_cmd->add_option("--rule", rule_ref, "Rule file, bundled:mK or a bundled rule name")->required();
  integrate_cmd->add_option("--function", function, "constant | exp | monomial:a,b,c")->required();

  std::string action, key;
  auto* rules = app.add_subcommand("rules", "List or export the bundled rules");
  rules->add_option("action", action, "list | export")->required();
  rules->add_option("--key", key, "Rule to export");
  rules->add_option("--out", out_path, "Output file (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? ok : usage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? ok : usage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage;
  }
  if (tol_opt->count() > 0) gl.tol = tol;
  if (gl.format == "table") gl.format = "text";

  try {
    if (classes->parsed()) return cmd_classes(n, max, brute, gl, out);
    if (search->parsed()) return cmd_search(m, kbound, nmax, minima, general, gl, out);
    if (lower->parsed()) return cmd_lowerbound(m, max, gl, out);
    if (moments->parsed()) return cmd_moments(m, gl, out);
    if (star->parsed()) return cmd_star(m, structure, latex, out);
    if (solve_cmd->parsed())
      return cmd_solve(m, structure, restarts, max_iterations, collect, out_path, gl, out, err);
    if (verify_cmd->parsed()) return cmd_verify(rule_ref, degree, gl, out);
    if (product->parsed()) return cmd_product(m, out_path, gl, out);
    if (integrate_cmd->parsed()) return cmd_integrate(rule_ref, function, gl, out);
    if (rules->parsed()) return cmd_rules(action, key, out_path, gl, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return failure;
  }
  return usage;
}

}  // namespace sphcub::cli
