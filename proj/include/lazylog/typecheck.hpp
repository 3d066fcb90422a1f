#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lazylog/database.hpp"
#include "lazylog/types.hpp"

namespace lazylog {

class TypeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Declaration-directed checking of clauses, rules and queries. Each
/// occurrence of a predicate, function or constructor gets a fresh copy of
/// its declared type; variables are monomorphic within one clause. Heads
/// and left sides are checked against the declaration with its type
/// variables held rigid, so a clause cannot be less general than declared.
///
/// As a side effect every `eq` application is annotated (Term::hint) with
/// the type of its operands, which the runtime needs to enumerate
/// disequalities.
class TypeChecker {
public:
  explicit TypeChecker(const Database& db) : db_(db) {}

  /// Returns the type of each clause variable (index = template var id).
  std::vector<TypePtr> check_clause(const PredDef& pred, const Clause& clause);
  std::vector<TypePtr> check_rule(const FunDef& fun, const RewriteRule& rule);
  /// Goal of a query with `var_count` template variables.
  std::vector<TypePtr> check_goal(Term* goal, std::uint32_t var_count);
  /// Type of an expression, e.g. a term given to normalize.
  TypePtr check_expr(Term* expr, std::uint32_t var_count,
                     std::vector<TypePtr>* var_types = nullptr);

private:
  const Database& db_;
};

} // namespace lazylog
