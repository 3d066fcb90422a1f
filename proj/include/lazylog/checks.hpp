#pragma once

#include <string>
#include <vector>

#include "lazylog/database.hpp"

namespace lazylog {

// Sufficient conditions for a rule set to behave as a confluent functional
// program. Each check reports diagnostics; none of them blocks loading.

/// Function symbols (or lambdas/eta terms) inside the left side's arguments.
std::vector<Diagnostic> check_constructor_discipline(const RewriteRule& rule,
                                                     const Database& db);
/// A variable occurring twice on the left side.
std::vector<Diagnostic> check_left_linearity(const RewriteRule& rule, const Database& db);
/// A right-side variable that does not occur on the left side.
std::vector<Diagnostic> check_term_rewriting(const RewriteRule& rule, const Database& db);

/// Syntactic unifiability of two left sides after renaming apart, treating
/// function symbols inside them as constructors.
bool lhs_unifiable(const RewriteRule& a, const RewriteRule& b);

/// One diagnostic per unifiable pair of rules of `fun`.
std::vector<Diagnostic> check_overlap(const FunDef& fun, const Database& db);

/// Argument pattern as seen by the exhaustiveness check.
struct Pattern {
  enum class Kind { Any, Ctor, Int };
  Kind kind = Kind::Any;
  Symbol name;
  std::int64_t value = 0;
  std::vector<Pattern> args;
  TypePtr type; ///< type of the position

  static Pattern any(TypePtr type);
};
using PatternTuple = std::vector<Pattern>;

struct ExhaustiveResult {
  bool exhaustive = true;
  std::vector<PatternTuple> missing;
};

/// Patterns of one left side; variables (repeated or not) become Any.
PatternTuple lhs_patterns(const RewriteRule& rule, const FunDef& fun, const Database& db);

/// Start from a tuple of variables and, rule by rule, specialise the
/// candidates so that none of them is matched by the rule; what survives is
/// missing. A position is only split into constructors when a rule has a
/// constructor there, and only for declared data types: int, function and
/// polymorphic positions are never exhausted except by a variable.
ExhaustiveResult check_exhaustive(const std::vector<PatternTuple>& rows,
                                  const std::vector<TypePtr>& arg_types,
                                  const Database& db);
ExhaustiveResult check_exhaustive(const FunDef& fun, const Database& db);

std::string format_pattern(const Pattern& p, const Database& db);
std::string format_pattern_tuple(const PatternTuple& t, const Database& db);

/// All rule checks over the non-prelude functions of `db`.
std::vector<Diagnostic> run_rule_checks(const Database& db);

} // namespace lazylog
