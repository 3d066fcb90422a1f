#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lazylog/arena.hpp"
#include "lazylog/symbol.hpp"

namespace lazylog {

struct TypeExpr;

enum class TermKind : std::uint8_t {
  Var,    ///< logic variable; `ref` holds its binding
  Int,    ///< integer leaf
  Ctor,   ///< constructor application (also goal atoms)
  Fun,    ///< defined-function application; `ref` is the call-by-need memo
  FunRef, ///< a function name used as a value, e.g. the `+` in apply(+,[1,2])
  Lambda, ///< args = params..., body
  Eta,    ///< args = {var, goal}; `ref` is the memo like Fun
};

/// A term node. Nodes are arena-allocated and trivially destructible.
///
/// Variables and function applications carry one mutable slot (`ref`): the
/// binding of a variable, or the rewritten value of an application. Both are
/// only ever written through BindingState so they can be untrailed.
struct Term {
  TermKind kind = TermKind::Ctor;
  bool ground = false; ///< no Var, Fun, Eta or Lambda anywhere below
  std::uint32_t arity = 0;
  Symbol name;            ///< functor, or display name of a variable
  std::int64_t value = 0; ///< integer value, or variable id
  Term* ref = nullptr;
  const TypeExpr* hint = nullptr; ///< operand type of an `eq` application
  Term** args = nullptr;

  std::span<Term* const> arguments() const { return {args, arity}; }
  Term* arg(std::size_t i) const { return args[i]; }

  bool is_var() const { return kind == TermKind::Var; }
  bool is_int() const { return kind == TermKind::Int; }
  bool is_ctor() const { return kind == TermKind::Ctor; }
  bool is_fun() const { return kind == TermKind::Fun; }
  bool is_lambda() const { return kind == TermKind::Lambda; }
  bool is_eta() const { return kind == TermKind::Eta; }
  bool is_funref() const { return kind == TermKind::FunRef; }
  /// Fun or Eta: something that narrowing can rewrite.
  bool is_reducible() const {
    return kind == TermKind::Fun || kind == TermKind::Eta;
  }
  bool is_atom(Symbol s) const {
    return kind == TermKind::Ctor && arity == 0 && name == s;
  }

  std::uint64_t var_id() const { return static_cast<std::uint64_t>(value); }

  std::span<Term* const> lambda_params() const { return {args, arity - 1}; }
  Term* lambda_body() const { return args[arity - 1]; }
};

// Construction ---------------------------------------------------------------

Term* make_var(Arena& arena, std::uint64_t id, Symbol name = {});
Term* make_int(Arena& arena, std::int64_t value);
Term* make_ctor(Arena& arena, Symbol name, std::span<Term* const> args = {});
Term* make_fun(Arena& arena, Symbol name, std::span<Term* const> args);
Term* make_funref(Arena& arena, Symbol name);
Term* make_lambda(Arena& arena, std::span<Term* const> params, Term* body);
Term* make_eta(Arena& arena, Term* var, Term* goal);
Term* make_list(Arena& arena, std::span<Term* const> items, Term* tail = nullptr);
Term* make_node(Arena& arena, TermKind kind, Symbol name,
                std::span<Term* const> args);

/// Shared constant nodes: [], true, false.
Term* nil_term();
Term* true_term();
Term* false_term();

// Dereferencing --------------------------------------------------------------

/// Follow variable bindings and filled memo slots until the head is neither a
/// bound variable nor an evaluated application. Never rewrites anything.
inline Term* resolve(Term* t) {
  while (t->ref != nullptr &&
         (t->kind == TermKind::Var || t->kind == TermKind::Fun ||
          t->kind == TermKind::Eta))
    t = t->ref;
  return t;
}

/// Fully dereferenced structural equality (no rewriting).
bool identical(Term* a, Term* b);

/// True when the resolved term contains no Var, Fun, Eta or Lambda.
bool resolved_ground(Term* t);

/// Collect distinct unbound variables in order of first occurrence.
void collect_vars(Term* t, std::vector<Term*>& out);

/// Does any defined function application (unevaluated) remain in t?
bool contains_reducible(Term* t);

// Clauses and rules ----------------------------------------------------------

struct SourceLoc {
  int line = 0;
  int column = 0;
};

/// Stored clause template. Variables are numbered 0..var_count-1 in `value`.
struct Clause {
  Term* head = nullptr;
  std::vector<Term*> body;
  std::uint32_t var_count = 0;
  std::vector<Symbol> var_names;
  SourceLoc loc;
};

/// Stored rewrite rule template, lhs ->> rhs.
struct RewriteRule {
  Term* lhs = nullptr;
  Term* rhs = nullptr;
  std::uint32_t var_count = 0;
  std::vector<Symbol> var_names;
  SourceLoc loc;
};

/// Produces fresh variables for one solver run.
class VarSupply {
public:
  explicit VarSupply(std::uint64_t first = 1) : next_(first) {}
  std::uint64_t next() { return next_++; }
  std::uint64_t peek() const { return next_; }

private:
  std::uint64_t next_;
};

/// Copy a template term, replacing template variable i by fresh[i] (created
/// on demand). Ground subterms are shared.
Term* instantiate(Arena& arena, Term* tmpl, std::span<Term*> fresh,
                  VarSupply& supply, std::span<const Symbol> names = {});

struct RenamedClause {
  Term* head;
  std::vector<Term*> body;
};
struct RenamedRule {
  Term* lhs;
  Term* rhs;
};

RenamedClause rename_apart(Arena& arena, const Clause& clause, VarSupply& supply);
RenamedRule rename_apart(Arena& arena, const RewriteRule& rule, VarSupply& supply);

/// Copy `t` (resolving bindings) while replacing the variables in `from` by
/// the corresponding terms in `to`. Applications containing a replaced
/// variable get fresh memo slots; other subterms are shared.
Term* substitute(Arena& arena, Term* t, std::span<Term* const> from,
                 std::span<Term* const> to);

/// Deep copy of the resolved term into another arena. Unbound variables are
/// mapped consistently through `var_map` (old node -> new node).
Term* export_term(Arena& arena, Term* t, std::vector<std::pair<Term*, Term*>>& var_map);

} // namespace lazylog
