#pragma once

// Naming, expansion, integration, exactness checks and persistence of
// rules, plus the bundled reference rules for m = 1..8.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sphcub/rule.hpp"

namespace sphcub {

/// "U3:(2m+1)-i.j(K1,K2,K3,K4,K5,K6)-N".
std::string rule_name(const CubatureRule& rule, int i, int j);

/// All orbit points of the rule, each carrying its generator's weight.
PointRule expand(const CubatureRule& rule);

/// Thrown by integrate when the integrand is not finite at some node.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

using Integrand = std::function<double(const Vec3&)>;

/// Weighted sum over the nodes, with Neumaier compensation.
double integrate(const PointRule& rule, const Integrand& f);

/// Weighted sum of x^a y^b z^c over the nodes.
double integrate_monomial(const PointRule& rule, int a, int b, int c);

inline constexpr double kDefaultVerifyTolerance = 1e-10 * 12.566370614359172;

/// Checks every even monomial of total degree <= claimed_degree - 1 and
/// every monomial with an odd exponent of total degree <= claimed_degree.
/// Throws std::invalid_argument if claimed_degree is not a positive odd
/// number.
VerificationReport verify(const PointRule& rule, int claimed_degree,
                          double tolerance = kDefaultVerifyTolerance);

// Persistence

using AnyRule = std::variant<CubatureRule, PointRule>;

/// Thrown for malformed rule files; `where` names the offending field and,
/// when known, its line.
class RuleFormatError : public std::runtime_error {
 public:
  explicit RuleFormatError(const std::string& what) : std::runtime_error(what) {}
};

void save(const CubatureRule& rule, std::ostream& out);
void save(const PointRule& rule, std::ostream& out);
void save(const AnyRule& rule, const std::filesystem::path& path);

AnyRule load(std::istream& in);
AnyRule load(const std::filesystem::path& path);

/// Decimal text that reads back as exactly `v`.
std::string format_double(double v);

// Bundled rules

/// The nine reference rules: m = 1..8 plus the second m = 6 rule, which
/// has a negative weight. Ordered by m; the m = 6 entry with the negative
/// weight comes first.
const std::vector<CubatureRule>& builtin_rules();

/// Resolves "bundled:mK", "bundled:m6fsm" or a full rule name.
std::optional<CubatureRule> find_builtin(std::string_view key);

/// Short key ("bundled:m6") of a bundled rule.
std::string builtin_key(const CubatureRule& rule);

}  // namespace sphcub
