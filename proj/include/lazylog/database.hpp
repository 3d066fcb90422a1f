#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lazylog/arena.hpp"
#include "lazylog/operators.hpp"
#include "lazylog/reader.hpp"
#include "lazylog/term.hpp"
#include "lazylog/types.hpp"

namespace lazylog {

struct NameArity {
  Symbol name;
  std::uint32_t arity = 0;
  friend bool operator==(const NameArity&, const NameArity&) = default;
};

struct NameArityHash {
  std::size_t operator()(const NameArity& k) const noexcept {
    return (static_cast<std::size_t>(k.name.id()) << 8) ^ k.arity;
  }
};

std::string format_name_arity(const NameArity& k);

struct Diagnostic {
  enum class Severity { Warning, Error };
  Severity severity = Severity::Warning;
  std::string check; ///< e.g. "left_linearity", "type", "undeclared"
  std::string item;  ///< offending item in source syntax
  std::string message;
  SourceLoc loc;

  /// `warning(<check>): <item>` (errors also carry the message).
  std::string to_string() const;
};

class LoadError : public std::runtime_error {
public:
  explicit LoadError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
  std::vector<Diagnostic> diagnostics_;
};

enum class BuiltinFun {
  None,
  Add, Sub, Mul, Div, Mod, Abs, Neg,
  Lt, Gt, Le, Ge,
  Eq,
  Apply,
};

enum class BuiltinPred { None, True, Fail, Unify, Write, Nl, Conj };

struct TypeDef {
  Symbol name;
  std::vector<std::string> params;
  std::vector<NameArity> ctors; ///< declaration order
  SourceLoc loc;
};

struct CtorDef {
  NameArity key;
  Symbol type;
  std::size_t index = 0; ///< position within the type's constructor list
  TypeScheme scheme;     ///< params = argument types, result = the type
};

struct FunDef {
  NameArity key;
  TypeScheme scheme;
  BuiltinFun builtin = BuiltinFun::None;
  std::vector<RewriteRule> rules;
  bool from_prelude = false;
  SourceLoc loc;
};

struct PredDef {
  NameArity key;
  TypeScheme scheme;
  BuiltinPred builtin = BuiltinPred::None;
  std::vector<Clause> clauses;
  SourceLoc loc;
};

/// A loaded program. Immutable once built; safe to share between solver runs.
class Database {
public:
  Database();

  const OperatorTable& ops() const { return ops_; }

  const PredDef* pred(Symbol name, std::uint32_t arity) const;
  const FunDef* fun(Symbol name, std::uint32_t arity) const;
  const CtorDef* ctor(Symbol name, std::uint32_t arity) const;
  const TypeDef* type(Symbol name) const;

  /// Arities under which `name` is a function, most recently declared last.
  const std::vector<std::uint32_t>* function_arities(Symbol name) const;

  /// User predicates/functions/types in declaration order.
  const std::vector<NameArity>& pred_order() const { return pred_order_; }
  const std::vector<NameArity>& fun_order() const { return fun_order_; }
  const std::vector<Symbol>& type_order() const { return type_order_; }

  /// Constructor argument types for a value of type `type` built with `c`.
  /// Unknown type arguments come back as the scheme's own variables.
  std::vector<TypePtr> ctor_arg_types(const CtorDef& c, const TypeExpr* type) const;

  /// Keep a type alive for the lifetime of the database; returns a stable
  /// pointer suitable for Term::hint.
  const TypeExpr* intern(TypePtr t) const;

  Arena& arena() const { return *arena_; }

  /// Print a stored template term with its source variable names.
  std::string format(Term* t) const;
  std::string format_rule(const RewriteRule& r) const;
  std::string format_clause(const Clause& c) const;

private:
  friend class DatabaseBuilder;
  friend class Loader;

  OperatorTable ops_;
  std::unordered_map<NameArity, PredDef, NameArityHash> preds_;
  std::unordered_map<NameArity, FunDef, NameArityHash> funs_;
  std::unordered_map<NameArity, CtorDef, NameArityHash> ctors_;
  std::unordered_map<Symbol, TypeDef> types_;
  std::unordered_map<Symbol, std::vector<std::uint32_t>> fun_arities_;
  std::vector<NameArity> pred_order_;
  std::vector<NameArity> fun_order_;
  std::vector<Symbol> type_order_;
  std::shared_ptr<Arena> arena_;
  mutable std::vector<TypePtr> type_pool_;
};

struct LoadResult {
  std::shared_ptr<const Database> db; ///< null when an error was reported
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return db != nullptr; }
};

/// Source of the built-in declarations every program starts from.
std::string_view prelude_source();

/// Builds a Database from parsed program parts (prelude first, then files
/// in order). Declarations are collected from all parts before any clause
/// or rule is elaborated.
class DatabaseBuilder {
public:
  explicit DatabaseBuilder(bool with_prelude = true);

  /// Parse `text` with the operator table accumulated so far and add it.
  void add_source(std::string_view text);
  void add(ParsedProgram program);

  /// Operator table in force after the parts added so far.
  const OperatorTable& ops() const { return ops_; }

  LoadResult finish();

private:
  std::vector<ParsedProgram> parts_;
  std::vector<bool> prelude_part_;
  OperatorTable ops_;
  bool pending_prelude_ = false;
};

/// Convenience: prelude + one program text. Throws SyntaxError.
LoadResult load_source(std::string_view text);

/// Convenience: prelude + files. Throws SyntaxError or std::runtime_error
/// for unreadable files.
LoadResult load_files(const std::vector<std::string>& paths);

/// Classify a raw parsed term against the database: functions become Fun
/// nodes, constructors Ctor nodes, lambda/eta their own kinds. `goal` says
/// whether `t` is in goal position. Throws LoadError on undeclared names.
struct Elaborator {
  const Database& db;
  Arena& arena;
  std::vector<Term*> vars; ///< template variable i, created on demand
  std::vector<Symbol> names;

  Elaborator(const Database& db, Arena& arena, const VarTable& table);
  Term* expr(Term* raw);
  Term* goal(Term* raw);
  Term* var(Term* raw);
};

} // namespace lazylog
