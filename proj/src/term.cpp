#include "lazylog/term.hpp"

#include <algorithm>

namespace lazylog {

Term* make_node(Arena& arena, TermKind kind, Symbol name,
                std::span<Term* const> args) {
  Term* t = arena.make<Term>();
  t->kind = kind;
  t->name = name;
  t->arity = static_cast<std::uint32_t>(args.size());
  t->args = arena.make_array<Term*>(args.size());
  bool ground = kind == TermKind::Ctor;
  for (std::size_t i = 0; i < args.size(); ++i) {
    t->args[i] = args[i];
    ground = ground && args[i]->ground;
  }
  t->ground = ground;
  return t;
}

Term* make_var(Arena& arena, std::uint64_t id, Symbol name) {
  Term* t = arena.make<Term>();
  t->kind = TermKind::Var;
  t->value = static_cast<std::int64_t>(id);
  t->name = name;
  return t;
}

Term* make_int(Arena& arena, std::int64_t value) {
  Term* t = arena.make<Term>();
  t->kind = TermKind::Int;
  t->value = value;
  t->ground = true;
  return t;
}

Term* make_ctor(Arena& arena, Symbol name, std::span<Term* const> args) {
  return make_node(arena, TermKind::Ctor, name, args);
}

Term* make_fun(Arena& arena, Symbol name, std::span<Term* const> args) {
  return make_node(arena, TermKind::Fun, name, args);
}

Term* make_funref(Arena& arena, Symbol name) {
  Term* t = make_node(arena, TermKind::FunRef, name, {});
  t->ground = true;
  return t;
}

Term* make_lambda(Arena& arena, std::span<Term* const> params, Term* body) {
  std::vector<Term*> args(params.begin(), params.end());
  args.push_back(body);
  return make_node(arena, TermKind::Lambda, sym::lambda(), args);
}

Term* make_eta(Arena& arena, Term* var, Term* goal) {
  Term* args[] = {var, goal};
  return make_node(arena, TermKind::Eta, sym::eta(), args);
}

Term* make_list(Arena& arena, std::span<Term* const> items, Term* tail) {
  Term* list = tail != nullptr ? tail : nil_term();
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    Term* cell[] = {*it, list};
    list = make_ctor(arena, sym::cons(), cell);
  }
  return list;
}

namespace {
Arena& constant_arena() {
  static Arena arena(4096);
  return arena;
}
} // namespace

Term* nil_term() {
  static Term* t = make_ctor(constant_arena(), sym::nil());
  return t;
}
Term* true_term() {
  static Term* t = make_ctor(constant_arena(), sym::true_());
  return t;
}
Term* false_term() {
  static Term* t = make_ctor(constant_arena(), sym::false_());
  return t;
}

bool identical(Term* a, Term* b) {
  a = resolve(a);
  b = resolve(b);
  if (a == b)
    return true;
  if (a->kind != b->kind)
    return false;
  switch (a->kind) {
  case TermKind::Var:
    return false;
  case TermKind::Int:
    return a->value == b->value;
  case TermKind::FunRef:
    return a->name == b->name;
  default:
    break;
  }
  if (a->name != b->name || a->arity != b->arity)
    return false;
  for (std::uint32_t i = 0; i < a->arity; ++i)
    if (!identical(a->args[i], b->args[i]))
      return false;
  return true;
}

bool resolved_ground(Term* t) {
  t = resolve(t);
  if (t->ground)
    return true;
  switch (t->kind) {
  case TermKind::Int:
  case TermKind::FunRef:
    return true;
  case TermKind::Ctor:
    return std::all_of(t->args, t->args + t->arity, resolved_ground);
  default:
    return false;
  }
}

void collect_vars(Term* t, std::vector<Term*>& out) {
  t = resolve(t);
  if (t->ground)
    return;
  if (t->is_var()) {
    if (std::find(out.begin(), out.end(), t) == out.end())
      out.push_back(t);
    return;
  }
  for (Term* a : t->arguments())
    collect_vars(a, out);
}

bool contains_reducible(Term* t) {
  t = resolve(t);
  if (t->ground)
    return false;
  if (t->is_reducible())
    return true;
  if (t->is_lambda())
    return false;
  return std::any_of(t->args, t->args + t->arity, contains_reducible);
}

Term* instantiate(Arena& arena, Term* tmpl, std::span<Term*> fresh,
                  VarSupply& supply, std::span<const Symbol> names) {
  if (tmpl->ground)
    return tmpl;
  switch (tmpl->kind) {
  case TermKind::Var: {
    auto index = static_cast<std::size_t>(tmpl->value);
    Term*& slot = fresh[index];
    if (slot == nullptr)
      slot = make_var(arena, supply.next(),
                      index < names.size() ? names[index] : tmpl->name);
    return slot;
  }
  case TermKind::Int:
  case TermKind::FunRef:
    return tmpl;
  default:
    break;
  }
  Term* copy = arena.make<Term>();
  copy->kind = tmpl->kind;
  copy->name = tmpl->name;
  copy->arity = tmpl->arity;
  copy->value = tmpl->value;
  copy->hint = tmpl->hint;
  copy->ground = false;
  copy->args = arena.make_array<Term*>(tmpl->arity);
  for (std::uint32_t i = 0; i < tmpl->arity; ++i)
    copy->args[i] = instantiate(arena, tmpl->args[i], fresh, supply, names);
  return copy;
}

RenamedClause rename_apart(Arena& arena, const Clause& clause, VarSupply& supply) {
  std::vector<Term*> fresh(clause.var_count, nullptr);
  RenamedClause out;
  out.head = instantiate(arena, clause.head, fresh, supply, clause.var_names);
  out.body.reserve(clause.body.size());
  for (Term* g : clause.body)
    out.body.push_back(instantiate(arena, g, fresh, supply, clause.var_names));
  return out;
}

RenamedRule rename_apart(Arena& arena, const RewriteRule& rule, VarSupply& supply) {
  std::vector<Term*> fresh(rule.var_count, nullptr);
  Term* lhs = instantiate(arena, rule.lhs, fresh, supply, rule.var_names);
  Term* rhs = instantiate(arena, rule.rhs, fresh, supply, rule.var_names);
  return {lhs, rhs};
}

namespace {

bool mentions(Term* t, std::span<Term* const> vars) {
  t = resolve(t);
  if (t->ground)
    return false;
  if (t->is_var())
    return std::find(vars.begin(), vars.end(), t) != vars.end();
  return std::any_of(t->args, t->args + t->arity,
                     [&](Term* a) { return mentions(a, vars); });
}

} // namespace

Term* substitute(Arena& arena, Term* t, std::span<Term* const> from,
                 std::span<Term* const> to) {
  t = resolve(t);
  if (t->ground)
    return t;
  if (t->is_var()) {
    for (std::size_t i = 0; i < from.size(); ++i)
      if (from[i] == t)
        return to[i];
    return t;
  }
  if (t->arity == 0 || !mentions(t, from))
    return t;
  std::vector<Term*> args(t->arity);
  for (std::uint32_t i = 0; i < t->arity; ++i)
    args[i] = substitute(arena, t->args[i], from, to);
  Term* copy = make_node(arena, t->kind, t->name, args);
  copy->hint = t->hint;
  return copy;
}

Term* export_term(Arena& arena, Term* t,
                  std::vector<std::pair<Term*, Term*>>& var_map) {
  t = resolve(t);
  switch (t->kind) {
  case TermKind::Var: {
    for (auto& [from, to] : var_map)
      if (from == t)
        return to;
    Term* v = make_var(arena, t->var_id(), t->name);
    var_map.emplace_back(t, v);
    return v;
  }
  case TermKind::Int:
    return make_int(arena, t->value);
  case TermKind::FunRef:
    return make_funref(arena, t->name);
  default:
    break;
  }
  std::vector<Term*> args(t->arity);
  for (std::uint32_t i = 0; i < t->arity; ++i)
    args[i] = export_term(arena, t->args[i], var_map);
  Term* copy = make_node(arena, t->kind, t->name, args);
  copy->hint = t->hint;
  return copy;
}

} // namespace lazylog
