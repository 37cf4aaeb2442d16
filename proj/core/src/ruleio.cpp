#include "sphcub/ruleio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sphcub/moments.hpp"

namespace sphcub {

using nlohmann::json;

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::bundled: return "bundled";
    case Provenance::solved: return "solved";
    case Provenance::imported: return "imported";
  }
  return "imported";
}

Provenance provenance_from_string(std::string_view s) {
  if (s == "bundled") return Provenance::bundled;
  if (s == "solved") return Provenance::solved;
  if (s == "imported") return Provenance::imported;
  throw std::invalid_argument("unknown provenance '" + std::string(s) + "'");
}

namespace {

double norm(const Vec3& p) { return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); }

void check_block(const WeightedGenerator& b, double sphere_tol) {
  validate(b.generator);
  if (!std::isfinite(b.weight)) throw std::invalid_argument("weight is not finite");
  const double dev = std::abs(norm(b.generator.point()) - 1.0);
  if (!(dev <= sphere_tol)) {
    std::ostringstream os;
    os.precision(3);
    os << "generator " << generator_type(b.generator.type).label << " lies off the unit sphere by " << dev;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

void check(const CubatureRule& rule, double sphere_tol) {
  if (rule.m < 1) throw std::invalid_argument("rule: m must be >= 1");
  if (!rule.structure.is_u3())
    throw std::invalid_argument("rule: " + rule.structure.u3_string() + " is not a U3 structure");
  std::array<int, 7> counts{};
  int last = 0;
  for (std::size_t k = 0; k < rule.blocks.size(); ++k) {
    const int t = static_cast<int>(rule.blocks[k].generator.type);
    if (t < last) throw std::invalid_argument("rule: blocks are not grouped by ascending class");
    last = t;
    ++counts[std::size_t(t)];
    try {
      check_block(rule.blocks[k], sphere_tol);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("rule: block " + std::to_string(k) + ": " + e.what());
    }
  }
  if (counts != rule.structure.k)
    throw std::invalid_argument("rule: blocks do not match structure " + rule.structure.u3_string());
}

std::vector<WeightedGenerator> blocks_of(const CubatureRule& rule, ClassType t) {
  std::vector<WeightedGenerator> out;
  for (const auto& b : rule.blocks)
    if (b.generator.type == t) out.push_back(b);
  return out;
}

std::string rule_name(const CubatureRule& rule, int i, int j) {
  return "U3:" + std::to_string(rule.degree()) + "-" + std::to_string(i) + "." + std::to_string(j) +
         rule.structure.u3_string() + "-" + std::to_string(cost(rule.structure));
}

PointRule expand(const CubatureRule& rule) {
  PointRule out;
  out.degree = rule.degree();
  out.name = rule.name;
  for (const auto& b : rule.blocks) {
    const Orbit pts = orbit(b.generator);
    if (static_cast<int>(pts.size()) != generator_type(b.generator.type).orbit_size)
      throw std::invalid_argument("expand: degenerate generator in class " +
                                  std::string(generator_type(b.generator.type).label));
    out.points.insert(out.points.end(), pts.begin(), pts.end());
    out.weights.insert(out.weights.end(), pts.size(), b.weight);
  }
  return out;
}

double integrate(const PointRule& rule, const Integrand& f) {
  if (rule.points.size() != rule.weights.size())
    throw std::invalid_argument("integrate: points and weights differ in length");
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const double term = rule.weights[i] * f(rule.points[i]);
    if (!std::isfinite(term))
      throw EvaluationError("integrate: non-finite value at node " + std::to_string(i), i);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

}  // namespace

double integrate_monomial(const PointRule& rule, int a, int b, int c) {
  return integrate(rule, [=](const Vec3& p) { return ipow(p[0], a) * ipow(p[1], b) * ipow(p[2], c); });
}

VerificationReport verify(const PointRule& rule, int claimed_degree, double tolerance) {
  if (claimed_degree < 1 || claimed_degree % 2 == 0)
    throw std::invalid_argument("verify: claimed degree must be a positive odd number");
  VerificationReport rep;
  rep.degree = claimed_degree;
  rep.tolerance = tolerance;
  for (int a = 0; a <= claimed_degree; ++a)
    for (int b = 0; a + b <= claimed_degree; ++b)
      for (int c = 0; a + b + c <= claimed_degree; ++c) {
        const bool even = a % 2 == 0 && b % 2 == 0 && c % 2 == 0;
        if (even && a + b + c > claimed_degree - 1) continue;
        const double err = std::abs(integrate_monomial(rule, a, b, c) - moment_value(a, b, c));
        if (even) {
          if (err > rep.max_even_error) {
            rep.max_even_error = err;
            rep.worst_even = {a, b, c};
          }
        } else {
          rep.max_odd_error = std::max(rep.max_odd_error, err);
        }
      }
  rep.weight_min = rule.weights.empty() ? 0.0 : *std::min_element(rule.weights.begin(), rule.weights.end());
  for (const Vec3& p : rule.points) rep.max_norm_deviation = std::max(rep.max_norm_deviation, std::abs(norm(p) - 1.0));
  rep.passes = rep.max_even_error <= tolerance && rep.max_odd_error <= tolerance;
  return rep;
}

// Persistence

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

namespace {

std::string class_label(ClassType t) { return std::string(generator_type(t).label); }

ClassType class_from_label(std::string_view s) {
  for (const auto& g : kGeneratorTypes)
    if (g.label == s) return static_cast<ClassType>(g.class_index);
  throw std::invalid_argument("unknown class '" + std::string(s) + "'");
}

json to_json(const CubatureRule& rule) {
  json j;
  j["kind"] = "generator";
  j["m"] = rule.m;
  j["degree"] = rule.degree();
  j["structure"] = std::vector<int>(rule.structure.k.begin() + 1, rule.structure.k.end());
  j["name"] = rule.name;
  j["provenance"] = to_string(rule.provenance);
  json blocks = json::array();
  for (const auto& b : rule.blocks) {
    json params = json::array();
    for (double v : b.generator.values()) params.push_back(format_double(v));
    blocks.push_back({{"class", class_label(b.generator.type)}, {"weight", format_double(b.weight)}, {"params", params}});
  }
  j["blocks"] = blocks;
  return j;
}

json to_json(const PointRule& rule) {
  json j;
  j["kind"] = "points";
  j["degree"] = rule.degree;
  j["name"] = rule.name;
  json pts = json::array();
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const auto& p = rule.points[i];
    pts.push_back({format_double(p[0]), format_double(p[1]), format_double(p[2]), format_double(rule.weights[i])});
  }
  j["points"] = pts;
  return j;
}

// Field access that reports the path of whatever is missing or malformed.
class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    std::string where = "field '" + path + "'";
    if (const auto line = line_of(path)) where += " (line " + std::to_string(*line) + ")";
    throw RuleFormatError("rule file: " + where + ": " + msg);
  }

  const json& at(const json& obj, const std::string& key, const std::string& path) const {
    if (!obj.is_object() || !obj.contains(key)) fail(path + "/" + key, "missing");
    return obj.at(key);
  }

  int integer(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<int>();
  }

  std::string text(const json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  double number(const json& v, const std::string& path) const {
    if (v.is_number()) return v.get<double>();
    if (!v.is_string()) fail(path, "expected a decimal string");
    const auto s = v.get<std::string>();
    double out = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(out))
      fail(path, "'" + s + "' is not a finite decimal number");
    return out;
  }

  const json& array(const json& v, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected an array");
    return v;
  }

 private:
  // Line of the first occurrence of the last named key in the path.
  std::optional<int> line_of(const std::string& path) const {
    std::string key;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      if (*it == '/') {
        const std::string seg(it.base(), path.end());
        if (!seg.empty() && !std::isdigit(static_cast<unsigned char>(seg[0]))) {
          key = seg.substr(0, seg.find('/'));
          break;
        }
      }
    }
    if (key.empty()) return std::nullopt;
    const auto pos = text_.find("\"" + key + "\"");
    if (pos == std::string::npos) return std::nullopt;
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }

  const std::string& text_;
};

CubatureRule generator_rule_from_json(const json& j, const Reader& rd) {
  CubatureRule rule;
  rule.m = rd.integer(rd.at(j, "m", ""), "/m");
  if (rule.m < 1) rd.fail("/m", "must be >= 1");
  if (j.contains("degree") && rd.integer(j["degree"], "/degree") != rule.degree())
    rd.fail("/degree", "must equal 2m+1 = " + std::to_string(rule.degree()));
  const json& st = rd.array(rd.at(j, "structure", ""), "/structure");
  if (st.size() != 6) rd.fail("/structure", "expected six counts K1..K6");
  for (std::size_t i = 0; i < 6; ++i) rule.structure.k[i + 1] = rd.integer(st[i], "/structure/" + std::to_string(i));
  if (!rule.structure.is_u3()) rd.fail("/structure", rule.structure.u3_string() + " is not a U3 structure");
  if (j.contains("name")) rule.name = rd.text(j["name"], "/name");
  rule.provenance = Provenance::imported;
  if (j.contains("provenance")) {
    try {
      rule.provenance = provenance_from_string(rd.text(j["provenance"], "/provenance"));
    } catch (const std::invalid_argument& e) {
      rd.fail("/provenance", e.what());
    }
  }
  const json& blocks = rd.array(rd.at(j, "blocks", ""), "/blocks");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::string path = "/blocks/" + std::to_string(k);
    const json& b = blocks[k];
    ClassType t{};
    try {
      t = class_from_label(rd.text(rd.at(b, "class", path), path + "/class"));
    } catch (const std::invalid_argument& e) {
      rd.fail(path + "/class", e.what());
    }
    const double w = rd.number(rd.at(b, "weight", path), path + "/weight");
    const json& ps = rd.array(rd.at(b, "params", path), path + "/params");
    std::vector<double> params;
    for (std::size_t q = 0; q < ps.size(); ++q) params.push_back(rd.number(ps[q], path + "/params/" + std::to_string(q)));
    WeightedGenerator wg;
    wg.weight = w;
    try {
      if (static_cast<int>(params.size()) != generator_type(t).param_count)
        throw std::invalid_argument("expected " + std::to_string(generator_type(t).param_count) + " parameters");
      // Stored parameters are already canonical; keep them bit-exact.
      wg.generator.type = t;
      std::copy(params.begin(), params.end(), wg.generator.params.begin());
      check_block(wg, 1e-12);
    } catch (const std::invalid_argument& e) {
      rd.fail(path, e.what());
    }
    rule.blocks.push_back(wg);
  }
  try {
    check(rule);
  } catch (const std::invalid_argument& e) {
    rd.fail("/blocks", e.what());
  }
  return rule;
}

PointRule point_rule_from_json(const json& j, const Reader& rd) {
  PointRule rule;
  if (j.contains("degree")) rule.degree = rd.integer(j["degree"], "/degree");
  if (j.contains("name")) rule.name = rd.text(j["name"], "/name");
  const json& pts = rd.array(rd.at(j, "points", ""), "/points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string path = "/points/" + std::to_string(i);
    const json& row = rd.array(pts[i], path);
    if (row.size() != 4) rd.fail(path, "expected [x, y, z, w]");
    Vec3 p{};
    for (std::size_t k = 0; k < 3; ++k) p[k] = rd.number(row[k], path + "/" + std::to_string(k));
    rule.points.push_back(p);
    rule.weights.push_back(rd.number(row[3], path + "/3"));
  }
  return rule;
}

}  // namespace

void save(const CubatureRule& rule, std::ostream& out) { out << to_json(rule).dump(2) << "\n"; }
void save(const PointRule& rule, std::ostream& out) { out << to_json(rule).dump(2) << "\n"; }

void save(const AnyRule& rule, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  std::visit([&](const auto& r) { save(r, out); }, rule);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

AnyRule load(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw RuleFormatError("rule file: line " + std::to_string(line) + ": malformed JSON");
  }
  const Reader rd(text);
  const std::string kind = rd.text(rd.at(j, "kind", ""), "/kind");
  if (kind == "generator") return generator_rule_from_json(j, rd);
  if (kind == "points") return point_rule_from_json(j, rd);
  rd.fail("/kind", "expected 'generator' or 'points'");
}

AnyRule load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load(in);
}

// Bundled rules

namespace {

// Evaluates the small closed forms used in the reference data: decimals,
// pi, sqrt(), + - * / and parentheses.
class Expr {
 public:
  explicit Expr(std::string_view s) : s_(s) {}

  double eval() {
    const double v = sum();
    skip();
    if (pos_ != s_.size()) throw std::logic_error("bad expression: " + std::string(s_));
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double sum() {
    double v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  double product() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    return atom();
  }
  double atom() {
    skip();
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) throw std::logic_error("bad expression: " + std::string(s_));
      return v;
    }
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return std::numbers::pi;
    }
    if (s_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!eat('(')) throw std::logic_error("bad expression: " + std::string(s_));
      const double v = sum();
      if (!eat(')')) throw std::logic_error("bad expression: " + std::string(s_));
      return std::sqrt(v);
    }
    double v = 0.0;
    const auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (res.ec != std::errc()) throw std::logic_error("bad expression: " + std::string(s_));
    pos_ = static_cast<std::size_t>(res.ptr - s_.data());
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct BlockDef {
  ClassType type;
  const char* weight;
  std::array<const char*, 3> params;
};

struct RuleDef {
  const char* key;
  int m;
  std::array<int, 6> k;
  int i, j;
  std::vector<BlockDef> blocks;
};

using C = ClassType;

std::vector<RuleDef> reference_data() {
  return {
      {"m1", 1, {1, 0, 0, 0, 0, 0}, 1, 1, {{C::axis, "2*pi/3", {"1"}}}},
      {"m2", 2, {1, 0, 0, 1, 0, 0}, 1, 1,
       {{C::axis, "4*pi/15", {"1"}}, {C::vertex, "3*pi/10", {"1/sqrt(3)"}}}},
      {"m3", 3, {1, 1, 0, 1, 0, 0}, 1, 1,
       {{C::axis, "4*pi/21", {"1"}}, {C::edge, "16*pi/105", {"1/sqrt(2)"}},
        {C::vertex, "9*pi/70", {"1/sqrt(3)"}}}},
      {"m4", 4, {1, 0, 1, 1, 0, 0}, 1, 2,
       {{C::axis, "4*pi/105", {"1"}},
        {C::edge_pair, "4*pi/35", {"sqrt((1 - 1/sqrt(3))/2)", "sqrt((1 + 1/sqrt(3))/2)"}},
        {C::vertex, "9*pi/70", {"1/sqrt(3)"}}}},
      {"m5", 5, {1, 1, 0, 1, 1, 0}, 1, 1,
       {{C::axis, "16*pi/315", {"1"}}, {C::edge, "256*pi/2835", {"1/sqrt(2)"}},
        {C::vertex, "27*pi/320", {"1/sqrt(3)"}},
        {C::face, "14641*pi/181440", {"1/sqrt(11)", "3/sqrt(11)"}}}},
      {"m6fsm", 6, {1, 1, 1, 1, 1, 0}, 1, 1,
       {{C::axis, "0.00644739233053", {"1"}},
        {C::edge, "0.20865289186971", {"1/sqrt(2)"}},
        {C::edge_pair, "0.20762372406088", {"0.32077264898077", "0.94715622136259"}},
        {C::vertex, "-0.37178913059595", {"1/sqrt(3)"}},
        {C::face, "0.33396646771858", {"0.48038446141531", "0.73379938570528"}}}},
      {"m6", 6, {1, 0, 1, 0, 2, 0}, 2, 1,
       {{C::axis, "0.05571838151106", {"1"}},
        {C::edge_pair, "0.18861500631211", {"0.33370053800545", "0.94267913466612"}},
        {C::face, "0.12537551702973", {"0.70117074174860", "0.12930267526790"}},
        {C::face, "0.19567865687870", {"0.43948383947130", "0.78339511722191"}}}},
      {"m7", 7, {1, 0, 1, 1, 2, 0}, 1, 1,
       {{C::axis, "0.14506632743849", {"1"}},
        {C::edge_pair, "0.14843778669299", {"0.92733065715117", "0.37424303909034"}},
        {C::vertex, "0.15009158815708", {"1/sqrt(3)"}},
        {C::face, "0.13961936079093", {"0.36960284645415", "0.85251831170127"}},
        {C::face, "0.14924451686907", {"0.69435400660267", "0.18906355288540"}}}},
      {"m8", 8, {1, 0, 1, 1, 3, 0}, 1, 1,
       {{C::axis, "0.04810746585109", {"1"}},
        {C::edge_pair, "0.12183091738552", {"0.87815891060407", "0.47836902881214"}},
        {C::vertex, "0.12307173528176", {"1/sqrt(3)"}},
        {C::face, "0.10319173408833", {"0.18511563534456", "0.96512403508666"}},
        // (zeta, eta) order matters: only zeta = 0.3956... satisfies
        // 2 zeta^2 + eta^2 = 1.
        {C::face, "0.12058024902856", {"0.39568947305584", "0.82876998125269"}},
        {C::face, "0.12494509687253", {"0.69042104838229", "0.21595729184587"}}}},
  };
}

struct Builtin {
  std::string key;
  CubatureRule rule;
};

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> all = [] {
    std::vector<Builtin> out;
    for (const RuleDef& def : reference_data()) {
      CubatureRule rule;
      rule.m = def.m;
      rule.structure = RuleStructure::u3(def.k[0], def.k[1], def.k[2], def.k[3], def.k[4], def.k[5]);
      rule.provenance = Provenance::bundled;
      for (const BlockDef& b : def.blocks) {
        std::vector<double> params;
        for (int q = 0; q < generator_type(b.type).param_count; ++q)
          params.push_back(Expr(b.params[std::size_t(q)]).eval());
        rule.blocks.push_back({Expr(b.weight).eval(), make_generator(b.type, params)});
      }
      rule.name = rule_name(rule, def.i, def.j);
      check(rule);
      out.push_back({std::string("bundled:") + def.key, std::move(rule)});
    }
    return out;
  }();
  return all;
}

}  // namespace

const std::vector<CubatureRule>& builtin_rules() {
  static const std::vector<CubatureRule> rules = [] {
    std::vector<CubatureRule> out;
    for (const auto& b : builtins()) out.push_back(b.rule);
    return out;
  }();
  return rules;
}

std::optional<CubatureRule> find_builtin(std::string_view key) {
  for (const auto& b : builtins())
    if (b.key == key || b.rule.name == key) return b.rule;
  return std::nullopt;
}

std::string builtin_key(const CubatureRule& rule) {
  for (const auto& b : builtins())
    if (b.rule.name == rule.name) return b.key;
  return {};
}

}  // namespace sphcub
