#include "lazylog/machine.hpp"

#include <cstdlib>
#include <map>

#include "lazylog/printer.hpp"

namespace lazylog {

std::int64_t int_at(std::uint64_t index) {
  if (index == 0)
    return 0;
  auto half = static_cast<std::int64_t>((index + 1) / 2);
  return (index % 2 == 1) ? half : -half;
}

std::uint64_t int_index(std::int64_t value) {
  if (value == 0)
    return 0;
  if (value > 0)
    return static_cast<std::uint64_t>(2 * value - 1);
  return static_cast<std::uint64_t>(-2 * value);
}

std::vector<std::pair<std::int64_t, std::int64_t>> int_ring(std::int64_t ring) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  if (ring == 0) {
    out.emplace_back(0, 0);
    return out;
  }
  auto span = static_cast<std::uint64_t>(2 * ring + 1);
  for (std::uint64_t ix = 0; ix < span; ++ix) {
    std::int64_t x = int_at(ix);
    if (std::llabs(x) == ring) {
      for (std::uint64_t iy = 0; iy < span; ++iy)
        out.emplace_back(x, int_at(iy));
    } else {
      out.emplace_back(x, ring);
      out.emplace_back(x, -ring);
    }
  }
  return out;
}

namespace {

/// Ring and offset of the k-th pair in ring order.
std::pair<std::int64_t, std::uint64_t> ring_of(std::uint64_t k) {
  if (k == 0)
    return {0, 0};
  k -= 1;
  std::int64_t r = 1;
  for (;;) {
    auto size = static_cast<std::uint64_t>(8 * r);
    if (k < size)
      return {r, k};
    k -= size;
    ++r;
  }
}

bool contains_var(Term* t, Term* v) {
  t = resolve(t);
  if (t == v)
    return true;
  if (t->ground)
    return false;
  for (Term* a : t->arguments())
    if (contains_var(a, v))
      return true;
  return false;
}

bool head_clash(Term* call_arg, Term* pattern) {
  Term* r = resolve(call_arg);
  bool rc = r->is_ctor() || r->is_int();
  bool pc = pattern->is_ctor() || pattern->is_int();
  if (!rc || !pc)
    return false;
  if (r->kind != pattern->kind)
    return true;
  if (r->is_int())
    return r->value != pattern->value;
  return r->name != pattern->name || r->arity != pattern->arity;
}

bool args_clash(Term* call, Term* head) {
  for (std::uint32_t i = 0; i < call->arity; ++i)
    if (head_clash(call->args[i], head->args[i]))
      return true;
  return false;
}

std::int64_t floor_div(std::int64_t x, std::int64_t y) {
  std::int64_t q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0)))
    --q;
  return q;
}

} // namespace

Machine::Machine(const Database& db, MachineConfig config, std::ostream* out)
    : db_(db), config_(config), out_(out) {
  type_pool_.push_back(ty_int());
  int_type_ = type_pool_.back().get();
}

void Machine::reset() {
  bs_.undo_to(0);
  arena_.clear();
  cps_.clear();
  cont_ = nullptr;
  bs_.depth_used = 0;
  bs_.limit_hit = false;
  normalizing_ = false;
  yielded_ = false;
  norm_steps_ = 0;
  found_depth = 0;
  window_low = -1;
}

Term* Machine::fresh_var(Symbol name) { return make_var(arena_, vars_.next(), name); }

Goal* Machine::goal(GoalKind kind, Term* a, Term* b, Goal* next) {
  Goal* g = arena_.make<Goal>();
  g->kind = kind;
  g->a = a;
  g->b = b;
  g->next = next;
  return g;
}

Goal* Machine::call_goals(Term* goal_term, Goal* tail) {
  return goal(GoalKind::Call, goal_term, nullptr, tail);
}

bool Machine::start(Goal* goals) {
  cont_ = goals;
  return run();
}

bool Machine::resume() {
  if (!backtrack())
    return false;
  return run();
}

bool Machine::run() {
  for (;;) {
    if (cont_ == nullptr)
      return true;
    Goal* g = cont_;
    cont_ = g->next;
    ++stats_.steps;
    if (!step(g)) {
      if (!backtrack())
        return false;
      continue;
    }
    if (yielded_) {
      yielded_ = false;
      return true;
    }
  }
}

bool Machine::step(Goal* g) {
  switch (g->kind) {
  case GoalKind::Call:
    return do_call(g);
  case GoalKind::Unify:
    return do_unify(g->a, g->b);
  case GoalKind::Force:
    return do_force(g->a);
  case GoalKind::Hnf:
    return do_hnf(g->a);
  case GoalKind::RuleDone:
    return do_rule_done(g);
  case GoalKind::SetMemo:
    return fill_memo(g->a, g->b);
  case GoalKind::Arith:
    return do_arith(g->a);
  case GoalKind::EqStart:
    return do_eq_start(g->a);
  case GoalKind::Disagree:
    return do_disagree(g->a, g->b, g->type);
  case GoalKind::ApplyGo:
    return do_apply(g->a);
  case GoalKind::Normalize:
    return do_normalize(g->a);
  case GoalKind::Solution:
    return do_solution();
  case GoalKind::Yield:
    yielded_ = true;
    return true;
  }
  return false;
}

// Choicepoints -------------------------------------------------------------------

ChoicePoint& Machine::push_choice(ChoiceKind kind) {
  ChoicePoint& cp = cps_.emplace_back();
  cp.kind = kind;
  cp.normalizing = normalizing_;
  cp.depth_used = bs_.depth_used;
  cp.norm_steps = norm_steps_;
  cp.trail_mark = bs_.checkpoint();
  cp.heap = arena_.mark();
  cp.cont = cont_;
  cp.serial = next_serial_++;
  return cp;
}

void Machine::pop_choice() { cps_.pop_back(); }

bool Machine::backtrack() {
  while (!cps_.empty()) {
    std::size_t i = cps_.size() - 1;
    ChoicePoint& cp = cps_[i];
    if (cp.dead) {
      pop_choice();
      continue;
    }
    bs_.undo_to(cp.trail_mark);
    arena_.release(cp.heap);
    cont_ = cp.cont;
    bs_.depth_used = cp.depth_used;
    normalizing_ = cp.normalizing;
    norm_steps_ = cp.norm_steps;
    ++stats_.backtracks;
    if (retry(i))
      return true;
  }
  return false;
}

bool Machine::retry(std::size_t i) {
  switch (cps_[i].kind) {
  case ChoiceKind::Clauses:
    return try_clause(i);
  case ChoiceKind::Rules:
    return try_rule(i);
  case ChoiceKind::IntEnum:
    return try_int_enum(i);
  case ChoiceKind::Eq:
    return try_eq(i);
  case ChoiceKind::DisagreeArgs:
    return try_disagree_args(i);
  case ChoiceKind::DisagreeVar:
    return try_disagree_var(i);
  case ChoiceKind::DisagreeVars:
    return try_disagree_vars(i);
  }
  return false;
}

bool Machine::charge(std::uint32_t cost) {
  if (normalizing_) {
    norm_steps_ += cost;
    if (norm_steps_ > config_.max_rewrites)
      throw RuntimeError("normalization exceeded " + std::to_string(config_.max_rewrites) +
                         " rewrite steps (the answer may be infinite)");
    return true;
  }
  return bs_.charge(cost);
}

// Predicates -----------------------------------------------------------------------

bool Machine::do_call(Goal* g) {
  Term* atom = g->a;
  const PredDef* p = db_.pred(atom->name, atom->arity);
  if (p == nullptr)
    throw RuntimeError("unknown predicate " + format_name_arity({atom->name, atom->arity}));
  switch (p->builtin) {
  case BuiltinPred::Conj:
    push_front(goal(GoalKind::Call, atom->args[1]));
    push_front(goal(GoalKind::Call, atom->args[0]));
    return true;
  case BuiltinPred::True:
    return true;
  case BuiltinPred::Fail:
    return false;
  case BuiltinPred::Unify:
    return do_unify(atom->args[0], atom->args[1]);
  case BuiltinPred::Write:
    if (out_ != nullptr)
      *out_ << format_term(atom->args[0], db_.ops()) << std::flush;
    return true;
  case BuiltinPred::Nl:
    if (out_ != nullptr)
      *out_ << '\n' << std::flush;
    return true;
  case BuiltinPred::None:
    break;
  }
  if (p->clauses.empty())
    return false;
  ChoicePoint& cp = push_choice(ChoiceKind::Clauses);
  cp.a = atom;
  cp.pred = p;
  return try_clause(cps_.size() - 1);
}

bool Machine::try_clause(std::size_t i) {
  ChoicePoint& cp = cps_[i];
  Term* atom = cp.a;
  const auto& clauses = cp.pred->clauses;
  auto usable = [&](std::size_t k) {
    return !config_.prefilter || !args_clash(atom, clauses[k].head);
  };
  std::size_t k = cp.next_alt;
  while (k < clauses.size() && !usable(k))
    ++k;
  if (k >= clauses.size()) {
    pop_choice();
    return false;
  }
  std::size_t next = k + 1;
  while (next < clauses.size() && !usable(next))
    ++next;
  if (next >= clauses.size())
    pop_choice();
  else
    cp.next_alt = next;

  if (!charge(1)) {
    // Every remaining clause costs the same.
    if (i < cps_.size())
      pop_choice();
    return false;
  }
  ++stats_.clause_tries;
  RenamedClause c = rename_apart(arena_, clauses[k], vars_);
  Goal* tail = cont_;
  for (auto it = c.body.rbegin(); it != c.body.rend(); ++it)
    tail = goal(GoalKind::Call, *it, nullptr, tail);
  for (std::uint32_t j = atom->arity; j-- > 0;)
    tail = goal(GoalKind::Unify, atom->args[j], c.head->args[j], tail);
  cont_ = tail;
  return true;
}

// Unification ----------------------------------------------------------------------

bool Machine::do_unify(Term* a, Term* b) {
  a = resolve(a);
  b = resolve(b);
  if (a == b)
    return true;
  if (a->ground && b->ground)
    return identical(a, b);
  if (a->is_var()) {
    if (b->is_var()) {
      if (a->var_id() < b->var_id())
        bs_.bind(b, a);
      else
        bs_.bind(a, b);
      return true;
    }
    return bind_checked(a, b);
  }
  if (b->is_var())
    return bind_checked(b, a);
  if (!a->is_reducible() && !b->is_reducible()) {
    if (a->kind != b->kind)
      return false;
    switch (a->kind) {
    case TermKind::Int:
      return a->value == b->value;
    case TermKind::FunRef:
      return a->name == b->name;
    case TermKind::Lambda:
      return false;
    default:
      break;
    }
    if (a->name != b->name || a->arity != b->arity)
      return false;
    for (std::uint32_t j = a->arity; j-- > 0;)
      if (a->args[j] != b->args[j])
        push_front(goal(GoalKind::Unify, a->args[j], b->args[j]));
    return true;
  }
  Term* f = a->is_reducible() ? a : b;
  push_front(goal(GoalKind::Unify, a, b));
  push_front(goal(GoalKind::Force, f));
  return true;
}

namespace {

struct OccursCopy {
  Arena& arena;
  Machine& m;
  Term* v;
  std::vector<std::pair<Term*, Term*>> pairs;
  bool failed = false;

  Term* copy(Term* t) {
    Term* r = resolve(t);
    if (r == v) {
      failed = true;
      return r;
    }
    if (r->ground)
      return r;
    switch (r->kind) {
    case TermKind::Var:
    case TermKind::Int:
    case TermKind::FunRef:
      return r;
    case TermKind::Fun:
    case TermKind::Eta:
      if (contains_var(r, v)) {
        Term* w = m.fresh_var();
        pairs.emplace_back(w, r);
        return w;
      }
      return r;
    case TermKind::Lambda:
      if (contains_var(r, v))
        failed = true;
      return r;
    case TermKind::Ctor:
      break;
    }
    std::vector<Term*> args;
    for (std::uint32_t i = 0; i < r->arity; ++i) {
      Term* a = copy(r->args[i]);
      if (failed)
        return r;
      if (a != r->args[i] && args.empty()) {
        args.assign(r->args, r->args + i);
      }
      if (!args.empty())
        args.push_back(a);
    }
    if (args.empty())
      return r;
    return make_ctor(arena, r->name, args);
  }
};

} // namespace

Term* Machine::occurs_copy(Term* var, Term* value,
                          std::vector<std::pair<Term*, Term*>>& pairs) {
  OccursCopy oc{arena_, *this, var, {}};
  Term* t = oc.copy(value);
  if (oc.failed)
    return nullptr;
  pairs = std::move(oc.pairs);
  return t;
}

bool Machine::bind_checked(Term* var, Term* value) {
  std::vector<std::pair<Term*, Term*>> pairs;
  Term* t = occurs_copy(var, value, pairs);
  if (t == nullptr)
    return false;
  bs_.bind(var, t);
  for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
    push_front(goal(GoalKind::Unify, it->first, it->second));
    push_front(goal(GoalKind::Force, it->second));
  }
  return true;
}

// Rewriting --------------------------------------------------------------------------

bool Machine::do_force(Term* f) {
  Term* r = resolve(f);
  if (!r->is_reducible())
    return true;
  if (r->is_eta()) {
    if (!charge(1))
      return false;
    ++stats_.rewrites;
    Term* x = resolve(r->args[0]);
    Term* g = r->args[1];
    if (x->is_var()) {
      Term* local = fresh_var(x->name);
      Term* from[] = {x};
      Term* to[] = {local};
      g = substitute(arena_, g, from, to);
      x = local;
    }
    push_front(goal(GoalKind::SetMemo, r, x));
    push_front(goal(GoalKind::Call, g));
    return true;
  }
  const FunDef* def = db_.fun(r->name, r->arity);
  if (def == nullptr)
    throw RuntimeError("unknown function " + format_name_arity({r->name, r->arity}));
  switch (def->builtin) {
  case BuiltinFun::None: {
    if (def->rules.empty())
      return false;
    ChoicePoint& cp = push_choice(ChoiceKind::Rules);
    cp.a = r;
    cp.fun = def;
    return try_rule(cps_.size() - 1);
  }
  case BuiltinFun::Eq:
    push_front(goal(GoalKind::EqStart, r));
    return true;
  case BuiltinFun::Apply:
    push_front(goal(GoalKind::ApplyGo, r));
    push_front(goal(GoalKind::Hnf, r->args[0]));
    return true;
  default:
    push_front(goal(GoalKind::Arith, r));
    for (std::uint32_t j = r->arity; j-- > 0;)
      push_front(goal(GoalKind::Hnf, r->args[j]));
    return true;
  }
}

bool Machine::try_rule(std::size_t i) {
  ChoicePoint& cp = cps_[i];
  Term* app = cp.a;
  const auto& rules = cp.fun->rules;
  auto usable = [&](std::size_t k) {
    return !config_.prefilter || !args_clash(app, rules[k].lhs);
  };
  std::size_t k = cp.next_alt;
  while (k < rules.size() && !usable(k))
    ++k;
  if (k >= rules.size()) {
    pop_choice();
    return false;
  }
  std::size_t next = k + 1;
  while (next < rules.size() && !usable(next))
    ++next;
  std::uint64_t serial = cp.serial;
  if (next >= rules.size())
    pop_choice();
  else
    cp.next_alt = next;

  if (!charge(1)) {
    if (i < cps_.size())
      pop_choice();
    return false;
  }
  ++stats_.rewrites;
  Goal* done = goal(GoalKind::RuleDone, app);
  done->cp_index = static_cast<std::uint32_t>(i);
  done->cp_serial = serial;
  done->trail_mark = bs_.checkpoint();
  done->var_mark = vars_.peek();
  RenamedRule r = rename_apart(arena_, rules[k], vars_);
  done->b = r.rhs;
  done->next = cont_;
  Goal* tail = done;
  for (std::uint32_t j = app->arity; j-- > 0;)
    tail = goal(GoalKind::Unify, app->args[j], r.lhs->args[j], tail);
  cont_ = tail;
  return true;
}

bool Machine::do_rule_done(Goal* g) {
  std::size_t i = g->cp_index;
  if (i < cps_.size() && cps_[i].serial == g->cp_serial && !cps_[i].dead) {
    // A rule that applied without instantiating any variable of the call
    // excludes the others (the rules do not overlap): commit to it.
    bool instantiated = false;
    for (Term* w : bs_.written_since(g->trail_mark))
      if (w->is_var() && w->var_id() < g->var_mark) {
        instantiated = true;
        break;
      }
    if (!instantiated)
      cps_[i].dead = true;
  }
  return fill_memo(g->a, g->b);
}

bool Machine::fill_memo(Term* app, Term* value) {
  if (app->ref == nullptr) {
    if (resolve(value) == app)
      return true;
    bs_.set_memo(app, value);
    return true;
  }
  push_front(goal(GoalKind::Unify, app->ref, value));
  return true;
}

bool Machine::do_hnf(Term* t) {
  Term* r = resolve(t);
  if (r->is_reducible()) {
    push_front(goal(GoalKind::Hnf, r));
    push_front(goal(GoalKind::Force, r));
  }
  return true;
}

// Arithmetic ---------------------------------------------------------------------------

bool Machine::eval_arith(Term* f, std::int64_t x, std::int64_t y, Term*& result) {
  const FunDef* def = db_.fun(f->name, f->arity);
  std::int64_t v = 0;
  auto boolean = [&](bool b) {
    result = b ? true_term() : false_term();
    return true;
  };
  switch (def->builtin) {
  case BuiltinFun::Add:
    if (__builtin_add_overflow(x, y, &v))
      throw RuntimeError("integer overflow in " + format_term(f, db_.ops()));
    break;
  case BuiltinFun::Sub:
    if (__builtin_sub_overflow(x, y, &v))
      throw RuntimeError("integer overflow in " + format_term(f, db_.ops()));
    break;
  case BuiltinFun::Mul:
    if (__builtin_mul_overflow(x, y, &v))
      throw RuntimeError("integer overflow in " + format_term(f, db_.ops()));
    break;
  case BuiltinFun::Div:
  case BuiltinFun::Mod:
    if (y == 0)
      return false;
    v = floor_div(x, y);
    if (def->builtin == BuiltinFun::Mod)
      v = x - v * y;
    break;
  case BuiltinFun::Abs:
    v = x < 0 ? -x : x;
    break;
  case BuiltinFun::Neg:
    v = -x;
    break;
  case BuiltinFun::Lt:
    return boolean(x < y);
  case BuiltinFun::Gt:
    return boolean(x > y);
  case BuiltinFun::Le:
    return boolean(x <= y);
  case BuiltinFun::Ge:
    return boolean(x >= y);
  default:
    throw RuntimeError("not an arithmetic function: " + format_term(f, db_.ops()));
  }
  result = make_int(arena_, v);
  return true;
}

bool Machine::do_arith(Term* f) {
  if (f->ref != nullptr)
    return true;
  Term* x = resolve(f->args[0]);
  Term* y = f->arity > 1 ? resolve(f->args[1]) : nullptr;
  for (Term* a : {x, y})
    if (a != nullptr && !a->is_int() && !a->is_var())
      throw RuntimeError("arithmetic on a non-integer: " + format_term(f, db_.ops()));
  bool x_var = x->is_var();
  bool y_var = y != nullptr && y->is_var();
  if (!x_var && !y_var) {
    if (!charge(1))
      return false;
    ++stats_.rewrites;
    Term* result = nullptr;
    if (!eval_arith(f, x->value, y != nullptr ? y->value : 0, result))
      throw RuntimeError("division by zero in " + format_term(f, db_.ops()));
    return fill_memo(f, result);
  }
  // Unbound arguments: behave like the infinite family of rules
  // n+m ->> k, choosing the instances in a fair order.
  ChoicePoint& cp = push_choice(ChoiceKind::IntEnum);
  cp.a = f;
  if (x_var && y_var && x != y) {
    cp.b = x;
    cp.c = y;
  } else {
    cp.b = x_var ? x : y;
  }
  return try_int_enum(cps_.size() - 1);
}

bool Machine::try_int_enum(std::size_t i) {
  ChoicePoint& cp = cps_[i];
  Term* f = cp.a;
  for (;;) {
    std::uint64_t k = cp.next_alt++;
    std::int64_t level = 0;
    std::int64_t vx = 0, vy = 0;
    if (cp.c == nullptr) {
      vx = int_at(k);
      level = std::llabs(vx);
    } else {
      auto [ring, offset] = ring_of(k);
      auto pairs = int_ring(ring);
      vx = pairs[offset].first;
      vy = pairs[offset].second;
      level = ring;
    }
    if (!charge(static_cast<std::uint32_t>(1 + level))) {
      pop_choice();
      return false;
    }
    bs_.bind(cp.b, make_int(arena_, vx));
    if (cp.c != nullptr)
      bs_.bind(cp.c, make_int(arena_, vy));
    Term* x = resolve(f->args[0]);
    Term* y = f->arity > 1 ? resolve(f->args[1]) : nullptr;
    Term* result = nullptr;
    if (!eval_arith(f, x->value, y != nullptr ? y->value : 0, result)) {
      // zero divisor: not an instance of any rule; try the next one
      bs_.undo_to(cp.trail_mark);
      bs_.depth_used = cp.depth_used;
      norm_steps_ = cp.norm_steps;
      continue;
    }
    ++stats_.rewrites;
    return fill_memo(f, result);
  }
}

// Equality -------------------------------------------------------------------------------

bool Machine::do_eq_start(Term* f) {
  if (f->ref != nullptr)
    return true;
  Term* a = resolve(f->args[0]);
  Term* b = resolve(f->args[1]);
  if (resolved_ground(a) && resolved_ground(b)) {
    if (!charge(1))
      return false;
    ++stats_.rewrites;
    return fill_memo(f, identical(a, b) ? true_term() : false_term());
  }
  if (a->is_reducible() && !b->is_var()) {
    push_front(goal(GoalKind::EqStart, f));
    push_front(goal(GoalKind::Force, a));
    return true;
  }
  if (b->is_reducible() && !a->is_var()) {
    push_front(goal(GoalKind::EqStart, f));
    push_front(goal(GoalKind::Force, b));
    return true;
  }
  ChoicePoint& cp = push_choice(ChoiceKind::Eq);
  cp.a = f;
  return try_eq(cps_.size() - 1);
}

bool Machine::try_eq(std::size_t i) {
  ChoicePoint& cp = cps_[i];
  Term* f = cp.a;
  std::uint64_t k = cp.next_alt++;
  if (k >= 1)
    pop_choice();
  if (!charge(1)) {
    if (k == 0)
      pop_choice();
    return false;
  }
  ++stats_.rewrites;
  if (k == 0) {
    push_front(goal(GoalKind::SetMemo, f, true_term()));
    push_front(goal(GoalKind::Unify, f->args[0], f->args[1]));
  } else {
    push_front(goal(GoalKind::SetMemo, f, false_term()));
    Goal* d = goal(GoalKind::Disagree, f->args[0], f->args[1]);
    d->type = f->hint;
    push_front(d);
  }
  return true;
}

std::vector<TypePtr> Machine::arg_types(Term* ctor_term, const TypeExpr* type) {
  const CtorDef* c = db_.ctor(ctor_term->name, ctor_term->arity);
  if (c == nullptr)
    return std::vector<TypePtr>(ctor_term->arity);
  const TypeExpr* t = nullptr;
  if (type != nullptr && type->kind == TypeExpr::Kind::App && type->name == c->type.str())
    t = type;
  return db_.ctor_arg_types(*c, t);
}

const TypeExpr* Machine::type_of_ctor_term(Term* t) {
  if (t->is_int())
    return int_type_;
  return nullptr;
}

Term* Machine::ctor_skeleton(const CtorDef& c) {
  if (c.key.arity == 0) {
    if (c.key.name == sym::nil())
      return nil_term();
    return make_ctor(arena_, c.key.name);
  }
  std::vector<Term*> args;
  for (std::uint32_t j = 0; j < c.key.arity; ++j)
    args.push_back(fresh_var());
  return make_ctor(arena_, c.key.name, args);
}

bool Machine::do_disagree(Term* a, Term* b, const TypeExpr* type) {
  a = resolve(a);
  b = resolve(b);
  if (a == b)
    return false;
  if (a->is_reducible() || b->is_reducible()) {
    Goal* again = goal(GoalKind::Disagree, a, b);
    again->type = type;
    push_front(again);
    push_front(goal(GoalKind::Force, a->is_reducible() ? a : b));
    return true;
  }
  if (a->is_var() && b->is_var()) {
    if (type == nullptr)
      return false;
    bool ints = type->kind == TypeExpr::Kind::App && type->name == "int";
    bool data = type->kind == TypeExpr::Kind::App && db_.type(Symbol(type->name)) != nullptr;
    if (!ints && !data)
      return false; // operand type unknown: no disequality can be enumerated
    ChoicePoint& cp = push_choice(ChoiceKind::DisagreeVars);
    cp.a = a;
    cp.b = b;
    cp.type = type;
    return try_disagree_vars(cps_.size() - 1);
  }
  if (a->is_var() || b->is_var()) {
    ChoicePoint& cp = push_choice(ChoiceKind::DisagreeVar);
    cp.a = a->is_var() ? a : b;
    cp.b = a->is_var() ? b : a;
    cp.type = type;
    return try_disagree_var(cps_.size() - 1);
  }
  if (a->kind != b->kind)
    return true;
  switch (a->kind) {
  case TermKind::Int:
    return a->value != b->value;
  case TermKind::FunRef:
    return a->name != b->name;
  case TermKind::Lambda:
    return false;
  default:
    break;
  }
  if (a->name != b->name || a->arity != b->arity)
    return true;
  if (a->arity == 0)
    return false;
  if (resolved_ground(a) && resolved_ground(b))
    return !identical(a, b);
  ChoicePoint& cp = push_choice(ChoiceKind::DisagreeArgs);
  cp.a = a;
  cp.b = b;
  cp.type = type;
  return try_disagree_args(cps_.size() - 1);
}

bool Machine::try_disagree_args(std::size_t i) {
  ChoicePoint& cp = cps_[i];
  Term* a = cp.a;
  Term* b = cp.b;
  const TypeExpr* type = cp.type;
  std::uint64_t k = cp.next_alt++;
  if (k + 1 >= a->arity)
    pop_choice();
  if (k >= a->arity)
    return false;
  std::vector<TypePtr> types = arg_types(a, type);
  Goal* d = goal(GoalKind::Disagree, a->args[k], b->args[k]);
  if (types[k]) {
    type_pool_.push_back(types[k]);
    d->type = type_pool_.back().get();
  }
  push_front(d);
  for (std::uint64_t j = k; j-- > 0;)
    push_front(goal(GoalKind::Unify, a->args[j], b->args[j]));
  return true;
}

bool Machine::try_disagree_var(std::size_t i) {
  ChoicePoint& cp = cps_[i];
  Term* v = cp.a;
  Term* c = cp.b;
  if (c->is_int()) {
    for (;;) {
      std::int64_t value = int_at(cp.next_alt++);
      if (value == c->value)
        continue;
      if (!charge(static_cast<std::uint32_t>(1 + std::llabs(value)))) {
        pop_choice();
        return false;
      }
      bs_.bind(v, make_int(arena_, value));
      return true;
    }
  }
  const CtorDef* def = db_.ctor(c->name, c->arity);
  if (def == nullptr) {
    pop_choice();
    return false;
  }
  const TypeDef* tdef = db_.type(def->type);
  const TypeExpr* type = cp.type;
  for (;;) {
    std::uint64_t k = cp.next_alt++;
    if (k >= tdef->ctors.size()) {
      pop_choice();
      return false;
    }
    const CtorDef* other = db_.ctor(tdef->ctors[k].name, tdef->ctors[k].arity);
    if (other == def) {
      if (def->key.arity == 0)
        continue;
      Term* skel = ctor_skeleton(*def);
      bs_.bind(v, skel);
      Goal* d = goal(GoalKind::Disagree, skel, c);
      d->type = type;
      push_front(d);
      return true;
    }
    bs_.bind(v, ctor_skeleton(*other));
    return true;
  }
}

bool Machine::try_disagree_vars(std::size_t i) {
  ChoicePoint& cp = cps_[i];
  Term* a = cp.a;
  Term* b = cp.b;
  const TypeExpr* type = cp.type;
  if (type->name == "int") {
    for (;;) {
      auto [ring, offset] = ring_of(cp.next_alt++);
      auto pairs = int_ring(ring);
      auto [x, y] = pairs[offset];
      if (x == y)
        continue;
      if (!charge(static_cast<std::uint32_t>(1 + ring))) {
        pop_choice();
        return false;
      }
      bs_.bind(a, make_int(arena_, x));
      bs_.bind(b, make_int(arena_, y));
      return true;
    }
  }
  const TypeDef* tdef = db_.type(Symbol(type->name));
  std::uint64_t m = tdef->ctors.size();
  std::uint64_t k = cp.next_alt++;
  auto ctor = [&](std::uint64_t idx) {
    return db_.ctor(tdef->ctors[idx].name, tdef->ctors[idx].arity);
  };
  if (k < m * (m - 1)) {
    std::uint64_t p = k / (m - 1);
    std::uint64_t q = k % (m - 1);
    if (q >= p)
      ++q;
    bs_.bind(a, ctor_skeleton(*ctor(p)));
    bs_.bind(b, ctor_skeleton(*ctor(q)));
    return true;
  }
  std::uint64_t j = k - m * (m - 1);
  for (std::uint64_t p = 0; p < m; ++p) {
    const CtorDef* c = ctor(p);
    if (c->key.arity == 0)
      continue;
    if (j-- != 0)
      continue;
    if (!charge(1)) {
      pop_choice();
      return false;
    }
    Term* sa = ctor_skeleton(*c);
    Term* sb = ctor_skeleton(*c);
    bs_.bind(a, sa);
    bs_.bind(b, sb);
    Goal* d = goal(GoalKind::Disagree, sa, sb);
    d->type = type;
    push_front(d);
    return true;
  }
  pop_choice();
  return false;
}

// apply ------------------------------------------------------------------------------------

bool Machine::do_apply(Term* f) {
  if (f->ref != nullptr)
    return true;
  Term* fn = resolve(f->args[0]);
  std::vector<Term*> items;
  Term* cell = resolve(f->args[1]);
  while (cell->is_ctor() && cell->name == sym::cons() && cell->arity == 2) {
    items.push_back(cell->args[0]);
    cell = resolve(cell->args[1]);
  }
  if (cell->is_reducible()) {
    push_front(goal(GoalKind::ApplyGo, f));
    push_front(goal(GoalKind::Force, cell));
    return true;
  }
  if (!cell->is_atom(sym::nil()))
    throw RuntimeError("apply: second argument is not a list: " + format_term(f, db_.ops()));
  if (fn->is_funref()) {
    auto n = static_cast<std::uint32_t>(items.size());
    const FunDef* def = db_.fun(fn->name, n);
    if (def == nullptr || def->builtin == BuiltinFun::Apply)
      throw RuntimeError("apply: no function " + format_name_arity({fn->name, n}));
    if (!charge(1))
      return false;
    ++stats_.rewrites;
    return fill_memo(f, make_fun(arena_, fn->name, items));
  }
  if (fn->is_lambda()) {
    auto params = fn->lambda_params();
    if (params.size() != items.size())
      throw RuntimeError("apply: lambda expects " + std::to_string(params.size()) +
                         " argument(s): " + format_term(f, db_.ops()));
    if (!charge(1))
      return false;
    ++stats_.rewrites;
    return fill_memo(f, substitute(arena_, fn->lambda_body(), params, items));
  }
  throw RuntimeError("apply: first argument is not a function or lambda "
                     "(no higher-order unification): " +
                     format_term(f, db_.ops()));
}

// Answers ----------------------------------------------------------------------------------

bool Machine::do_normalize(Term* t) {
  Term* r = resolve(t);
  if (r->ground)
    return true;
  if (r->is_reducible()) {
    push_front(goal(GoalKind::Normalize, r));
    push_front(goal(GoalKind::Force, r));
    return true;
  }
  if (r->is_ctor())
    for (std::uint32_t j = r->arity; j-- > 0;)
      push_front(goal(GoalKind::Normalize, r->args[j]));
  return true;
}

bool Machine::do_solution() {
  if (static_cast<std::int64_t>(bs_.depth_used) <= window_low)
    return false; // reported by an earlier iteration
  found_depth = bs_.depth_used;
  normalizing_ = true;
  norm_steps_ = 0;
  return true;
}

} // namespace lazylog
