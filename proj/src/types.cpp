#include "lazylog/types.hpp"

namespace lazylog {

TypePtr ty_var(int id, std::string name, bool rigid) {
  auto t = std::make_shared<TypeExpr>();
  t->kind = TypeExpr::Kind::Var;
  t->var_id = id;
  t->name = std::move(name);
  t->rigid = rigid;
  return t;
}

TypePtr ty_app(std::string name, std::vector<TypePtr> args) {
  auto t = std::make_shared<TypeExpr>();
  t->kind = TypeExpr::Kind::App;
  t->name = std::move(name);
  t->args = std::move(args);
  return t;
}

TypePtr ty_fun(std::vector<TypePtr> params, TypePtr result) {
  auto t = std::make_shared<TypeExpr>();
  t->kind = TypeExpr::Kind::Fun;
  t->args = std::move(params);
  t->result = std::move(result);
  return t;
}

TypePtr ty_int() {
  static const TypePtr t = ty_app("int");
  return t;
}

TypePtr ty_bool() {
  static const TypePtr t = ty_app("bool");
  return t;
}

std::string format_type(const TypePtr& t) {
  switch (t->kind) {
  case TypeExpr::Kind::Var:
    if (!t->name.empty())
      return t->name;
    return "_T" + std::to_string(t->var_id);
  case TypeExpr::Kind::App: {
    std::string out = t->name;
    if (!t->args.empty()) {
      out += '(';
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i != 0)
          out += ',';
        out += format_type(t->args[i]);
      }
      out += ')';
    }
    return out;
  }
  case TypeExpr::Kind::Fun: {
    std::string out = "[";
    for (std::size_t i = 0; i < t->args.size(); ++i) {
      if (i != 0)
        out += ',';
      out += format_type(t->args[i]);
    }
    return out + "]=>>" + format_type(t->result);
  }
  }
  return "?";
}

TypePtr TypeSubst::walk(TypePtr t) const {
  while (t->is_var() && !t->rigid) {
    auto it = map_.find(t->var_id);
    if (it == map_.end())
      break;
    t = it->second;
  }
  return t;
}

std::optional<TypePtr> TypeSubst::lookup(int id) const {
  auto it = map_.find(id);
  if (it == map_.end())
    return std::nullopt;
  return it->second;
}

TypePtr TypeSubst::apply(const TypePtr& t0) const {
  TypePtr t = walk(t0);
  switch (t->kind) {
  case TypeExpr::Kind::Var:
    return t;
  case TypeExpr::Kind::App: {
    if (t->args.empty())
      return t;
    std::vector<TypePtr> args;
    args.reserve(t->args.size());
    for (const auto& a : t->args)
      args.push_back(apply(a));
    return ty_app(t->name, std::move(args));
  }
  case TypeExpr::Kind::Fun: {
    std::vector<TypePtr> params;
    for (const auto& a : t->args)
      params.push_back(apply(a));
    return ty_fun(std::move(params), apply(t->result));
  }
  }
  return t;
}

bool TypeSubst::occurs(int id, const TypePtr& t0) const {
  TypePtr t = walk(t0);
  if (t->is_var())
    return !t->rigid && t->var_id == id;
  for (const auto& a : t->args)
    if (occurs(id, a))
      return true;
  return t->result && occurs(id, t->result);
}

bool TypeSubst::unify(const TypePtr& a0, const TypePtr& b0) {
  TypePtr a = walk(a0);
  TypePtr b = walk(b0);
  if (a == b)
    return true;
  if (a->is_var() && !a->rigid) {
    if (b->is_var() && !b->rigid && b->var_id == a->var_id)
      return true;
    if (occurs(a->var_id, b))
      return false;
    map_[a->var_id] = b;
    return true;
  }
  if (b->is_var() && !b->rigid)
    return unify(b, a);
  if (a->is_var() || b->is_var()) // rigid against something else
    return a->is_var() && b->is_var() && a->var_id == b->var_id;
  if (a->kind != b->kind)
    return false;
  if (a->kind == TypeExpr::Kind::App && a->name != b->name)
    return false;
  if (a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!unify(a->args[i], b->args[i]))
      return false;
  if (a->kind == TypeExpr::Kind::Fun)
    return unify(a->result, b->result);
  return true;
}

std::optional<TypeSubst> unify_types(const TypePtr& a, const TypePtr& b, TypeSubst subst) {
  if (!subst.unify(a, b))
    return std::nullopt;
  return subst;
}

TypePtr substitute_params(const TypePtr& t, const std::vector<TypePtr>& args) {
  switch (t->kind) {
  case TypeExpr::Kind::Var:
    if (t->var_id >= 0 && static_cast<std::size_t>(t->var_id) < args.size() &&
        args[t->var_id])
      return args[t->var_id];
    return t;
  case TypeExpr::Kind::App: {
    if (t->args.empty())
      return t;
    std::vector<TypePtr> out;
    for (const auto& a : t->args)
      out.push_back(substitute_params(a, args));
    return ty_app(t->name, std::move(out));
  }
  case TypeExpr::Kind::Fun: {
    std::vector<TypePtr> out;
    for (const auto& a : t->args)
      out.push_back(substitute_params(a, args));
    return ty_fun(std::move(out), substitute_params(t->result, args));
  }
  }
  return t;
}

InstantiatedScheme instantiate_scheme(const TypeScheme& scheme, TypeVarSupply& supply,
                                      bool rigid) {
  std::vector<TypePtr> fresh;
  fresh.reserve(scheme.vars.size());
  for (const auto& name : scheme.vars)
    fresh.push_back(ty_var(supply.next(), name, rigid));
  InstantiatedScheme out;
  for (const auto& p : scheme.params)
    out.params.push_back(substitute_params(p, fresh));
  if (scheme.result)
    out.result = substitute_params(scheme.result, fresh);
  return out;
}

bool type_contains_vars(const TypePtr& t) {
  if (t->is_var())
    return true;
  for (const auto& a : t->args)
    if (type_contains_vars(a))
      return true;
  return t->result && type_contains_vars(t->result);
}

} // namespace lazylog
