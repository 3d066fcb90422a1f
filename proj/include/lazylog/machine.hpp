#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "lazylog/arena.hpp"
#include "lazylog/binding_state.hpp"
#include "lazylog/database.hpp"
#include "lazylog/term.hpp"

namespace lazylog {

/// Errors that abort a search (as opposed to failure, which backtracks).
class RuntimeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class GoalKind : std::uint8_t {
  Call,       ///< a: goal atom
  Unify,      ///< a = b, semantically
  Force,      ///< rewrite a (Fun or Eta) one step and fill its memo
  Hnf,        ///< rewrite a until its head is not a function application
  RuleDone,   ///< a: application, b: instantiated right side; commit check
  SetMemo,    ///< a := b
  Arith,      ///< a: builtin application whose arguments are in head form
  EqStart,    ///< a: eq application
  Disagree,   ///< make a and b differ; type: operand type (may be null)
  ApplyGo,    ///< a: apply application whose first argument is in head form
  Normalize,  ///< force every function application below a
  Solution,   ///< all query goals solved: window check, switch to normalizing
  Yield,      ///< hand control back to the caller
};

struct Goal {
  GoalKind kind;
  Goal* next = nullptr;
  Term* a = nullptr;
  Term* b = nullptr;
  const TypeExpr* type = nullptr;
  // RuleDone bookkeeping
  std::uint32_t cp_index = 0;
  std::uint64_t cp_serial = 0;
  std::size_t trail_mark = 0;
  std::uint64_t var_mark = 0;
};

enum class ChoiceKind : std::uint8_t {
  Clauses,       ///< a: goal atom; pred
  Rules,         ///< a: application; fun
  IntEnum,       ///< a: builtin application; b, c: the unbound variables
  Eq,            ///< a: eq application
  DisagreeArgs,  ///< a, b: constructor terms with equal heads
  DisagreeVar,   ///< a: variable, b: constructor term or integer
  DisagreeVars,  ///< a, b: distinct variables of a known type
};

struct ChoicePoint {
  ChoiceKind kind;
  bool dead = false;
  bool normalizing = false;
  std::uint32_t depth_used = 0;
  std::uint64_t norm_steps = 0;
  std::size_t trail_mark = 0;
  Arena::Mark heap;
  Goal* cont = nullptr; ///< what runs after the alternative's own goals
  std::uint64_t serial = 0;
  Term* a = nullptr;
  Term* b = nullptr;
  Term* c = nullptr;
  const TypeExpr* type = nullptr;
  const PredDef* pred = nullptr;
  const FunDef* fun = nullptr;
  std::uint64_t next_alt = 0;
};

struct MachineConfig {
  /// Rewrite steps allowed while normalizing one answer.
  std::uint64_t max_rewrites = 100000;
  /// Cut clause/rule alternatives whose head clashes with the call before
  /// charging for them.
  bool prefilter = true;
};

struct MachineStats {
  std::uint64_t steps = 0;
  std::uint64_t clause_tries = 0;
  std::uint64_t rewrites = 0;
  std::uint64_t backtracks = 0;
};

/// Goal-stack machine for SLD resolution with lazy narrowing.
///
/// The continuation is a persistent linked list of goals, so a choicepoint
/// only needs to remember the list head. Variable bindings and memo slots
/// are trailed in a BindingState; terms and goals are bump-allocated in an
/// arena that is cut back to the choicepoint's mark on backtracking.
class Machine {
public:
  Machine(const Database& db, MachineConfig config = {}, std::ostream* out = nullptr);
  Machine(const Machine&) = delete;
  Machine& operator=(const Machine&) = delete;

  /// Discard all state and prepare for a new search.
  void reset();

  Arena& arena() { return arena_; }
  BindingState& state() { return bs_; }
  VarSupply& vars() { return vars_; }
  const Database& db() const { return db_; }
  const MachineStats& stats() const { return stats_; }

  Term* fresh_var(Symbol name = {});

  // Goal construction (allocated in the machine arena).
  Goal* goal(GoalKind kind, Term* a = nullptr, Term* b = nullptr, Goal* next = nullptr);
  /// Goals for a query conjunction followed by `tail`.
  Goal* call_goals(Term* goal_term, Goal* tail);

  /// Start running `goals`. Returns true when a Yield goal is reached,
  /// false when the search space is exhausted.
  bool start(Goal* goals);
  /// Backtrack into the most recent alternative and continue.
  bool resume();

  /// Depth window for Solution goals: solutions with depth <= window_low
  /// were already reported by an earlier iteration and are rejected.
  std::int64_t window_low = -1;
  /// depth_used at the most recent accepted Solution.
  std::uint32_t found_depth = 0;
  bool normalizing() const { return normalizing_; }

  /// Drop every pending alternative (bindings stay as they are).
  void discard_choices() { cps_.clear(); }
  std::size_t choice_count() const { return cps_.size(); }

  /// Extended occurs check: copy `value` so that it no longer mentions
  /// `var`, replacing each function application that does by a fresh
  /// variable recorded in `pairs` as (fresh, application). Returns null if
  /// `var` occurs outside any function application.
  Term* occurs_copy(Term* var, Term* value, std::vector<std::pair<Term*, Term*>>& pairs);

private:
  bool run();
  bool step(Goal* g);
  bool backtrack();
  bool retry(std::size_t index);
  ChoicePoint& push_choice(ChoiceKind kind);
  void pop_choice();

  bool charge(std::uint32_t cost);

  bool do_call(Goal* g);
  bool do_unify(Term* a, Term* b);
  bool bind_checked(Term* var, Term* value);
  bool do_force(Term* f);
  bool do_hnf(Term* t);
  bool do_rule_done(Goal* g);
  bool fill_memo(Term* app, Term* value);
  bool do_arith(Term* f);
  bool do_eq_start(Term* f);
  bool do_disagree(Term* a, Term* b, const TypeExpr* type);
  bool do_apply(Term* f);
  bool do_normalize(Term* t);
  bool do_solution();

  bool try_clause(std::size_t cp_index);
  bool try_rule(std::size_t cp_index);
  bool try_int_enum(std::size_t cp_index);
  bool try_eq(std::size_t cp_index);
  bool try_disagree_args(std::size_t cp_index);
  bool try_disagree_var(std::size_t cp_index);
  bool try_disagree_vars(std::size_t cp_index);

  bool eval_arith(Term* f, std::int64_t x, std::int64_t y, Term*& result);
  Term* ctor_skeleton(const CtorDef& c);
  const TypeExpr* type_of_ctor_term(Term* t);
  std::vector<TypePtr> arg_types(Term* ctor_term, const TypeExpr* type);

  void push_front(Goal* g) {
    g->next = cont_;
    cont_ = g;
  }

  const Database& db_;
  MachineConfig config_;
  std::ostream* out_;
  Arena arena_;
  BindingState bs_;
  VarSupply vars_;
  Goal* cont_ = nullptr;
  std::vector<ChoicePoint> cps_;
  std::uint64_t next_serial_ = 1;
  bool normalizing_ = false;
  bool yielded_ = false;
  std::uint64_t norm_steps_ = 0;
  MachineStats stats_;
  std::vector<TypePtr> type_pool_;
  const TypeExpr* int_type_;
};

/// Fair enumeration order of the integers: 0, 1, -1, 2, -2, ...
std::int64_t int_at(std::uint64_t index);
/// Position in that order.
std::uint64_t int_index(std::int64_t value);
/// Pairs (x, y) with max(|x|,|y|) == ring, in a fixed order.
std::vector<std::pair<std::int64_t, std::int64_t>> int_ring(std::int64_t ring);

} // namespace lazylog
