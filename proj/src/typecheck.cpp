#include "lazylog/typecheck.hpp"

#include "lazylog/printer.hpp"

namespace lazylog {

namespace {

class Session {
public:
  Session(const Database& db, std::uint32_t var_count, std::string where)
      : db_(db), where_(std::move(where)) {
    var_types_.reserve(var_count);
    for (std::uint32_t i = 0; i < var_count; ++i)
      var_types_.push_back(ty_var(supply_.next()));
  }

  void expect(Term* t, const TypePtr& expected) {
    TypePtr actual = infer(t);
    if (!subst_.unify(actual, expected))
      clash(t, actual, expected);
  }

  TypePtr infer(Term* t) {
    switch (t->kind) {
    case TermKind::Var:
      return var_type(t);
    case TermKind::Int:
      return ty_int();
    case TermKind::Ctor: {
      const CtorDef* c = db_.ctor(t->name, t->arity);
      if (c == nullptr)
        fail("unknown constructor " + format_name_arity({t->name, t->arity}));
      auto inst = instantiate_scheme(c->scheme, supply_, false);
      for (std::uint32_t i = 0; i < t->arity; ++i)
        expect(t->args[i], inst.params[i]);
      return inst.result;
    }
    case TermKind::Fun:
      return infer_app(t);
    case TermKind::FunRef:
      return funref_type(t);
    case TermKind::Lambda: {
      std::vector<TypePtr> params;
      for (Term* p : t->lambda_params())
        params.push_back(var_type(p));
      return ty_fun(std::move(params), infer(t->lambda_body()));
    }
    case TermKind::Eta:
      goal(t->args[1]);
      return var_type(t->args[0]);
    }
    fail("malformed term");
  }

  void goal(Term* g) {
    if (g->kind != TermKind::Ctor)
      fail("goal is not an atom: " + show(g));
    const PredDef* p = db_.pred(g->name, g->arity);
    if (p == nullptr)
      fail("unknown predicate " + format_name_arity({g->name, g->arity}));
    switch (p->builtin) {
    case BuiltinPred::Conj:
      goal(g->args[0]);
      goal(g->args[1]);
      return;
    case BuiltinPred::Unify: {
      TypePtr left = infer(g->args[0]);
      expect(g->args[1], left);
      return;
    }
    case BuiltinPred::Write:
      infer(g->args[0]);
      return;
    case BuiltinPred::True:
    case BuiltinPred::Fail:
    case BuiltinPred::Nl:
      return;
    case BuiltinPred::None:
      break;
    }
    auto inst = instantiate_scheme(p->scheme, supply_, false);
    for (std::uint32_t i = 0; i < g->arity; ++i)
      expect(g->args[i], inst.params[i]);
  }

  /// Head or left side: arguments against the declaration, type variables rigid.
  TypePtr rigid_head(Term* head, const TypeScheme& scheme) {
    auto inst = instantiate_scheme(scheme, supply_, true);
    for (std::uint32_t i = 0; i < head->arity; ++i)
      expect(head->args[i], inst.params[i]);
    return inst.result;
  }

  /// Write resolved operand types into the eq nodes seen.
  void annotate() {
    for (auto& [node, type] : eq_nodes_)
      node->hint = db_.intern(subst_.apply(type));
  }

  std::vector<TypePtr> var_types() const {
    std::vector<TypePtr> out;
    out.reserve(var_types_.size());
    for (const auto& t : var_types_)
      out.push_back(subst_.apply(t));
    return out;
  }

  TypePtr apply(const TypePtr& t) const { return subst_.apply(t); }

  [[noreturn]] void fail(const std::string& what) const {
    throw TypeError("type error in " + where_ + ": " + what);
  }

private:
  TypePtr var_type(Term* v) {
    auto i = static_cast<std::size_t>(v->value);
    while (i >= var_types_.size())
      var_types_.push_back(ty_var(supply_.next()));
    return var_types_[i];
  }

  TypePtr infer_app(Term* t) {
    const FunDef* f = db_.fun(t->name, t->arity);
    if (f == nullptr)
      fail("unknown function " + format_name_arity({t->name, t->arity}));
    if (f->builtin == BuiltinFun::Apply)
      return infer_apply(t);
    auto inst = instantiate_scheme(f->scheme, supply_, false);
    for (std::uint32_t i = 0; i < t->arity; ++i)
      expect(t->args[i], inst.params[i]);
    if (f->builtin == BuiltinFun::Eq) {
      TypePtr operand = subst_.apply(inst.params[0]);
      if (operand->kind == TypeExpr::Kind::Fun)
        fail("eq is not defined on function type " + format_type(operand));
      eq_nodes_.emplace_back(t, inst.params[0]);
    }
    return inst.result;
  }

  TypePtr infer_apply(Term* t) {
    std::vector<Term*> items;
    Term* list = t->args[1];
    while (list->is_ctor() && list->name == sym::cons() && list->arity == 2) {
      items.push_back(list->args[0]);
      list = list->args[1];
    }
    if (!list->is_atom(sym::nil()))
      fail("second argument of apply must be a list of arguments: " + show(t));
    std::vector<TypePtr> params;
    for (Term* item : items)
      params.push_back(infer(item));
    TypePtr result = ty_var(supply_.next());
    expect(t->args[0], ty_fun(std::move(params), result));
    return result;
  }

  TypePtr funref_type(Term* t) {
    const auto* arities = db_.function_arities(t->name);
    if (arities == nullptr || arities->empty())
      fail("unknown function " + std::string(t->name.str()));
    std::uint32_t arity = arities->front();
    for (std::uint32_t a : *arities)
      if (a == 2)
        arity = a;
    const FunDef* f = db_.fun(t->name, arity);
    if (f->builtin == BuiltinFun::Apply)
      fail("apply cannot be passed as a value");
    auto inst = instantiate_scheme(f->scheme, supply_, false);
    return ty_fun(std::move(inst.params), inst.result);
  }

  [[noreturn]] void clash(Term* t, const TypePtr& actual, const TypePtr& expected) {
    fail(show(t) + " has type " + format_type(subst_.apply(actual)) +
         " but type " + format_type(subst_.apply(expected)) + " is expected");
  }

  std::string show(Term* t) const { return format_term(t, db_.ops(), source_var_name); }

  const Database& db_;
  std::string where_;
  TypeVarSupply supply_;
  TypeSubst subst_;
  std::vector<TypePtr> var_types_;
  std::vector<std::pair<Term*, TypePtr>> eq_nodes_;
};

} // namespace

std::vector<TypePtr> TypeChecker::check_clause(const PredDef& pred, const Clause& clause) {
  Session s(db_, clause.var_count, "clause `" + db_.format_clause(clause) + "`");
  s.rigid_head(clause.head, pred.scheme);
  for (Term* g : clause.body)
    s.goal(g);
  s.annotate();
  return s.var_types();
}

std::vector<TypePtr> TypeChecker::check_rule(const FunDef& fun, const RewriteRule& rule) {
  Session s(db_, rule.var_count, "rule `" + db_.format_rule(rule) + "`");
  TypePtr result = s.rigid_head(rule.lhs, fun.scheme);
  s.expect(rule.rhs, result);
  s.annotate();
  return s.var_types();
}

std::vector<TypePtr> TypeChecker::check_goal(Term* goal, std::uint32_t var_count) {
  Session s(db_, var_count, "query `" + db_.format(goal) + "`");
  s.goal(goal);
  s.annotate();
  return s.var_types();
}

TypePtr TypeChecker::check_expr(Term* expr, std::uint32_t var_count,
                                std::vector<TypePtr>* var_types) {
  Session s(db_, var_count, "term `" + db_.format(expr) + "`");
  TypePtr t = s.infer(expr);
  s.annotate();
  if (var_types != nullptr)
    *var_types = s.var_types();
  return s.apply(t);
}

} // namespace lazylog
