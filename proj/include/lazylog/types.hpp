#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace lazylog {

struct TypeExpr;
using TypePtr = std::shared_ptr<const TypeExpr>;

/// int and bool are nullary applications; `[T1..Tn] =>> T` is Fun.
struct TypeExpr {
  enum class Kind { Var, App, Fun };
  Kind kind = Kind::App;
  std::string name;          ///< type constructor, or variable display name
  int var_id = -1;           ///< Var only
  bool rigid = false;        ///< Var only: behaves as a constant while checking
  std::vector<TypePtr> args; ///< App arguments, or Fun parameters
  TypePtr result;            ///< Fun only

  bool is_var() const { return kind == Kind::Var; }
  bool is_app(std::string_view n) const { return kind == Kind::App && name == n; }
};

TypePtr ty_var(int id, std::string name = {}, bool rigid = false);
TypePtr ty_app(std::string name, std::vector<TypePtr> args = {});
TypePtr ty_fun(std::vector<TypePtr> params, TypePtr result);
TypePtr ty_int();
TypePtr ty_bool();

std::string format_type(const TypePtr& t);

/// A declared signature: variables 0..arity-1 of `vars` are quantified.
struct TypeScheme {
  std::vector<std::string> vars;
  std::vector<TypePtr> params; ///< argument types (empty for a plain type)
  TypePtr result;              ///< function result / constructed type
};

/// Idempotent-on-read substitution over flexible type variables.
class TypeSubst {
public:
  TypePtr apply(const TypePtr& t) const;
  /// Most general extension making a and b equal; false on clash or occurs.
  bool unify(const TypePtr& a, const TypePtr& b);
  bool empty() const { return map_.empty(); }
  std::optional<TypePtr> lookup(int id) const;

private:
  TypePtr walk(TypePtr t) const;
  bool occurs(int id, const TypePtr& t) const;
  std::unordered_map<int, TypePtr> map_;
};

std::optional<TypeSubst> unify_types(const TypePtr& a, const TypePtr& b,
                                     TypeSubst subst = {});

/// Fresh type-variable ids for one checking session.
class TypeVarSupply {
public:
  int next() { return next_++; }

private:
  int next_ = 1000;
};

/// Replace the scheme's quantified variables (ids 0..n-1) by fresh flexible
/// variables, or by rigid ones (declared-generality checks of heads).
struct InstantiatedScheme {
  std::vector<TypePtr> params;
  TypePtr result;
};
InstantiatedScheme instantiate_scheme(const TypeScheme& scheme, TypeVarSupply& supply,
                                      bool rigid);

/// Substitute variable id i by args[i] (used for constructor argument types).
TypePtr substitute_params(const TypePtr& t, const std::vector<TypePtr>& args);

bool type_contains_vars(const TypePtr& t);

} // namespace lazylog
