#include "lazylog/database.hpp"

#include <fstream>
#include <sstream>

#include "lazylog/checks.hpp"
#include "lazylog/printer.hpp"
#include "lazylog/typecheck.hpp"

namespace lazylog {

std::string format_name_arity(const NameArity& k) {
  return format_atom(k.name) + "/" + std::to_string(k.arity);
}

std::string Diagnostic::to_string() const {
  std::string out = severity == Severity::Warning ? "warning(" : "error(";
  out += check;
  out += "): ";
  out += item;
  if (severity == Severity::Error && !message.empty()) {
    out += ": ";
    out += message;
  }
  return out;
}

namespace {
std::string join_diagnostics(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty())
      out += '\n';
    out += d.to_string();
  }
  return out;
}
} // namespace

LoadError::LoadError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

// Database ---------------------------------------------------------------------

namespace {

TypeScheme scheme(std::vector<std::string> vars, std::vector<TypePtr> params,
                  TypePtr result) {
  return TypeScheme{std::move(vars), std::move(params), std::move(result)};
}

} // namespace

Database::Database() : arena_(std::make_shared<Arena>()) {
  auto add_pred = [&](std::string_view name, std::uint32_t arity, BuiltinPred b,
                      TypeScheme s) {
    NameArity key{Symbol(name), arity};
    preds_[key] = PredDef{key, std::move(s), b, {}, {}};
  };
  TypePtr a = ty_var(0, "A");
  add_pred(",", 2, BuiltinPred::Conj, {});
  add_pred("true", 0, BuiltinPred::True, {});
  add_pred("fail", 0, BuiltinPred::Fail, {});
  add_pred("nl", 0, BuiltinPred::Nl, {});
  add_pred("write", 1, BuiltinPred::Write, scheme({"A"}, {a}, nullptr));
  add_pred("=", 2, BuiltinPred::Unify, scheme({"A"}, {a, a}, nullptr));

  auto add_fun = [&](std::string_view name, std::uint32_t arity, BuiltinFun b,
                     TypeScheme s) {
    NameArity key{Symbol(name), arity};
    FunDef f;
    f.key = key;
    f.scheme = std::move(s);
    f.builtin = b;
    funs_[key] = std::move(f);
    fun_arities_[key.name].push_back(arity);
  };
  TypePtr i = ty_int();
  TypePtr b = ty_bool();
  add_fun("+", 2, BuiltinFun::Add, scheme({}, {i, i}, i));
  add_fun("-", 2, BuiltinFun::Sub, scheme({}, {i, i}, i));
  add_fun("*", 2, BuiltinFun::Mul, scheme({}, {i, i}, i));
  add_fun("div", 2, BuiltinFun::Div, scheme({}, {i, i}, i));
  add_fun("mod", 2, BuiltinFun::Mod, scheme({}, {i, i}, i));
  add_fun("abs", 1, BuiltinFun::Abs, scheme({}, {i}, i));
  add_fun("-", 1, BuiltinFun::Neg, scheme({}, {i}, i));
  add_fun("<", 2, BuiltinFun::Lt, scheme({}, {i, i}, b));
  add_fun(">", 2, BuiltinFun::Gt, scheme({}, {i, i}, b));
  add_fun("=<", 2, BuiltinFun::Le, scheme({}, {i, i}, b));
  add_fun("<=", 2, BuiltinFun::Le, scheme({}, {i, i}, b));
  add_fun(">=", 2, BuiltinFun::Ge, scheme({}, {i, i}, b));
  add_fun("eq", 2, BuiltinFun::Eq, scheme({"A"}, {a, a}, b));
  add_fun("apply", 2, BuiltinFun::Apply, {});
}

const PredDef* Database::pred(Symbol name, std::uint32_t arity) const {
  auto it = preds_.find({name, arity});
  return it == preds_.end() ? nullptr : &it->second;
}

const FunDef* Database::fun(Symbol name, std::uint32_t arity) const {
  auto it = funs_.find({name, arity});
  return it == funs_.end() ? nullptr : &it->second;
}

const CtorDef* Database::ctor(Symbol name, std::uint32_t arity) const {
  auto it = ctors_.find({name, arity});
  return it == ctors_.end() ? nullptr : &it->second;
}

const TypeDef* Database::type(Symbol name) const {
  auto it = types_.find(name);
  return it == types_.end() ? nullptr : &it->second;
}

const std::vector<std::uint32_t>* Database::function_arities(Symbol name) const {
  auto it = fun_arities_.find(name);
  return it == fun_arities_.end() ? nullptr : &it->second;
}

std::vector<TypePtr> Database::ctor_arg_types(const CtorDef& c, const TypeExpr* type) const {
  std::vector<TypePtr> args;
  if (type != nullptr && type->kind == TypeExpr::Kind::App &&
      type->args.size() == c.scheme.vars.size())
    args = type->args;
  std::vector<TypePtr> out;
  for (const auto& p : c.scheme.params)
    out.push_back(args.empty() ? p : substitute_params(p, args));
  return out;
}

const TypeExpr* Database::intern(TypePtr t) const {
  type_pool_.push_back(std::move(t));
  return type_pool_.back().get();
}

std::string Database::format(Term* t) const {
  return format_term(t, ops_, source_var_name);
}

std::string Database::format_rule(const RewriteRule& r) const {
  return format_term(r.lhs, ops_, source_var_name, 1199) + " ->> " +
         format_term(r.rhs, ops_, source_var_name, 1199);
}

std::string Database::format_clause(const Clause& c) const {
  std::string out = format_term(c.head, ops_, source_var_name, 1199);
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    out += i == 0 ? " :- " : ", ";
    out += format_term(c.body[i], ops_, source_var_name, 999);
  }
  return out;
}

// Elaboration -------------------------------------------------------------------

namespace {

[[noreturn]] void undeclared(const std::string& what, const std::string& item) {
  Diagnostic d;
  d.severity = Diagnostic::Severity::Error;
  d.check = "undeclared";
  d.item = item;
  d.message = what;
  throw LoadError({d});
}

} // namespace

Elaborator::Elaborator(const Database& db, Arena& arena, const VarTable& table)
    : db(db), arena(arena), vars(table.count, nullptr), names(table.names) {}

Term* Elaborator::var(Term* raw) {
  auto i = static_cast<std::size_t>(raw->value);
  if (i >= vars.size())
    vars.resize(i + 1, nullptr);
  if (vars[i] == nullptr)
    vars[i] = make_var(arena, i, i < names.size() ? names[i] : raw->name);
  return vars[i];
}

Term* Elaborator::expr(Term* raw) {
  switch (raw->kind) {
  case TermKind::Var:
    return var(raw);
  case TermKind::Int:
    return make_int(arena, raw->value);
  case TermKind::Ctor:
    break;
  default:
    return raw; // already elaborated
  }
  Symbol name = raw->name;
  std::uint32_t arity = raw->arity;
  if (name == sym::lambda() && arity == 2) {
    std::vector<Term*> params;
    Term* list = raw->args[0];
    while (list->is_ctor() && list->name == sym::cons() && list->arity == 2) {
      if (!list->args[0]->is_var())
        break;
      params.push_back(var(list->args[0]));
      list = list->args[1];
    }
    if (list->is_atom(sym::nil()))
      return make_lambda(arena, params, expr(raw->args[1]));
  }
  if (name == sym::eta() && arity == 2 && raw->args[0]->is_var())
    return make_eta(arena, var(raw->args[0]), goal(raw->args[1]));

  std::vector<Term*> args(arity);
  auto elaborate_args = [&] {
    for (std::uint32_t i = 0; i < arity; ++i)
      args[i] = expr(raw->args[i]);
  };
  if (db.fun(name, arity) != nullptr) {
    elaborate_args();
    return make_fun(arena, name, args);
  }
  if (db.ctor(name, arity) != nullptr) {
    if (arity == 0) {
      if (name == sym::nil())
        return nil_term();
      if (name == sym::true_())
        return true_term();
      if (name == sym::false_())
        return false_term();
    }
    elaborate_args();
    return make_ctor(arena, name, args);
  }
  if (arity == 0 && db.function_arities(name) != nullptr)
    return make_funref(arena, name);
  undeclared("unknown constructor or function " + format_name_arity({name, arity}),
             format_term(raw, db.ops(), source_var_name));
}

Term* Elaborator::goal(Term* raw) {
  if (!raw->is_ctor())
    undeclared("goal must be an atom", format_term(raw, db.ops(), source_var_name));
  const PredDef* p = db.pred(raw->name, raw->arity);
  if (p == nullptr)
    undeclared("unknown predicate " + format_name_arity({raw->name, raw->arity}),
               format_term(raw, db.ops(), source_var_name));
  std::vector<Term*> args(raw->arity);
  for (std::uint32_t i = 0; i < raw->arity; ++i)
    args[i] = p->builtin == BuiltinPred::Conj ? goal(raw->args[i]) : expr(raw->args[i]);
  return make_ctor(arena, raw->name, args);
}

// Loading -----------------------------------------------------------------------

std::string_view prelude_source() {
  return R"(constructors bool => true, false.
constructors list(A) => [], [A|list(A)].
function and(bool,bool) =>> bool.
function or(bool,bool) =>> bool.
true and B ->> B.
false and B ->> false.
true or B ->> true.
false or B ->> B.
)";
}

DatabaseBuilder::DatabaseBuilder(bool with_prelude) : ops_(OperatorTable::defaults()) {
  if (with_prelude) {
    pending_prelude_ = true;
    add_source(prelude_source());
    pending_prelude_ = false;
  }
}

void DatabaseBuilder::add_source(std::string_view text) {
  add(parse_program(text, ops_));
}

void DatabaseBuilder::add(ParsedProgram program) {
  ops_ = program.ops;
  prelude_part_.push_back(pending_prelude_);
  parts_.push_back(std::move(program));
}

namespace {

struct DeclError {
  std::string message;
};

} // namespace

class Loader {
public:
  Loader(std::vector<ParsedProgram>& parts, const std::vector<bool>& prelude,
         const OperatorTable& ops)
      : parts_(parts), prelude_(prelude), db_(std::make_shared<Database>()) {
    db_->ops_ = ops;
  }

  LoadResult run() {
    for (auto& part : parts_)
      for (auto& w : part.warnings) {
        Diagnostic d;
        d.check = "syntax";
        d.item = w;
        diags_.push_back(std::move(d));
      }
    each<CtorDecl>([&](const CtorDecl& d, bool) { declare_type(d); });
    each<CtorDecl>([&](const CtorDecl& d, bool) { declare_ctors(d); });
    each<PredDecl>([&](const PredDecl& d, bool) { declare_pred(d); });
    each<FunDecl>([&](const FunDecl& d, bool pre) { declare_fun(d, pre); });
    check_name_classes();
    if (!has_errors()) {
      each<ClauseItem>([&](const ClauseItem& c, bool) { add_clause(c); });
      each<RuleItem>([&](const RuleItem& r, bool) { add_rule(r); });
    }
    if (!has_errors())
      typecheck();
    if (!has_errors())
      for (auto& d : run_rule_checks(*db_))
        diags_.push_back(std::move(d));
    LoadResult result;
    result.diagnostics = std::move(diags_);
    if (!has_errors(result.diagnostics))
      result.db = db_;
    return result;
  }

private:
  template <class Item, class F> void each(F&& f) {
    for (std::size_t p = 0; p < parts_.size(); ++p)
      for (auto& item : parts_[p].items)
        if (auto* x = std::get_if<Item>(&item)) {
          try {
            f(*x, prelude_[p]);
          } catch (const DeclError& e) {
            error("declaration", format_item(item, db_->ops()), e.message, x->loc);
          } catch (const LoadError& e) {
            for (auto d : e.diagnostics()) {
              d.loc = x->loc;
              diags_.push_back(std::move(d));
            }
          }
        }
  }

  void error(std::string check, std::string item, std::string message, SourceLoc loc) {
    Diagnostic d;
    d.severity = Diagnostic::Severity::Error;
    d.check = std::move(check);
    d.item = std::move(item);
    while (!d.item.empty() && (d.item.back() == '\n'))
      d.item.pop_back();
    d.message = std::move(message);
    d.loc = loc;
    diags_.push_back(std::move(d));
  }

  static bool has_errors(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds)
      if (d.severity == Diagnostic::Severity::Error)
        return true;
    return false;
  }
  bool has_errors() const { return has_errors(diags_); }

  // Types ------------------------------------------------------------------

  TypePtr to_type(Term* raw, const VarTable& vars) {
    if (raw->is_var()) {
      auto i = static_cast<std::size_t>(raw->value);
      return ty_var(static_cast<int>(i), std::string(vars.names[i].str()));
    }
    if (!raw->is_ctor())
      throw DeclError{"not a type: " + db_->format(raw)};
    std::string name(raw->name.str());
    if (name == "=>>" && raw->arity == 2) {
      std::vector<TypePtr> params;
      Term* list = raw->args[0];
      while (list->is_ctor() && list->name == sym::cons() && list->arity == 2) {
        params.push_back(to_type(list->args[0], vars));
        list = list->args[1];
      }
      if (!list->is_atom(sym::nil()))
        throw DeclError{"function type needs a list of argument types"};
      return ty_fun(std::move(params), to_type(raw->args[1], vars));
    }
    if (name == "int" && raw->arity == 0)
      return ty_int();
    const TypeDef* def = db_->type(raw->name);
    if (def == nullptr)
      throw DeclError{"unknown type " + name};
    if (def->params.size() != raw->arity)
      throw DeclError{"type " + name + " expects " + std::to_string(def->params.size()) +
                      " argument(s)"};
    std::vector<TypePtr> args;
    for (Term* a : raw->arguments())
      args.push_back(to_type(a, vars));
    return ty_app(std::move(name), std::move(args));
  }

  static std::vector<std::string> var_names(const VarTable& vars) {
    std::vector<std::string> out;
    for (Symbol s : vars.names)
      out.emplace_back(s.str());
    return out;
  }

  /// Canonical text of a scheme, independent of variable spelling.
  static std::string canonical(const std::vector<TypePtr>& params, const TypePtr& result) {
    auto rename = [](const TypePtr& t) {
      std::vector<TypePtr> anon;
      for (int i = 0; i < 64; ++i)
        anon.push_back(ty_var(i, "T" + std::to_string(i)));
      return format_type(substitute_params(t, anon));
    };
    std::string out;
    for (const auto& p : params)
      out += rename(p) + ",";
    if (result)
      out += "->" + rename(result);
    return out;
  }

  void declare_type(const CtorDecl& d) {
    Term* pattern = d.type_pattern;
    if (!pattern->is_ctor())
      throw DeclError{"type pattern must be a name applied to variables"};
    std::vector<std::string> params;
    for (std::uint32_t i = 0; i < pattern->arity; ++i) {
      Term* a = pattern->args[i];
      if (!a->is_var() || a->value != static_cast<std::int64_t>(i))
        throw DeclError{"type parameters must be distinct variables"};
      params.emplace_back(d.vars.names[i].str());
    }
    if (pattern->name.str() == "int")
      throw DeclError{"int is a built-in type"};
    if (db_->types_.contains(pattern->name))
      return; // compared in declare_ctors
    TypeDef def;
    def.name = pattern->name;
    def.params = std::move(params);
    def.loc = d.loc;
    db_->types_[def.name] = std::move(def);
    db_->type_order_.push_back(pattern->name);
  }

  void declare_ctors(const CtorDecl& d) {
    Symbol type = d.type_pattern->name;
    std::string signature;
    std::vector<CtorDef> defs;
    std::vector<TypePtr> params;
    for (std::uint32_t i = 0; i < d.type_pattern->arity; ++i)
      params.push_back(ty_var(static_cast<int>(i), std::string(d.vars.names[i].str())));
    TypePtr result = ty_app(std::string(type.str()), params);
    for (Term* c : d.ctors) {
      if (!c->is_ctor())
        throw DeclError{"constructor must be a name or a name applied to types"};
      CtorDef def;
      def.key = {c->name, c->arity};
      def.type = type;
      def.scheme.vars = var_names(d.vars);
      def.scheme.vars.resize(d.type_pattern->arity);
      for (Term* a : c->arguments()) {
        TypePtr at = to_type(a, d.vars);
        check_vars_bound(at, d.type_pattern->arity);
        def.scheme.params.push_back(std::move(at));
      }
      def.scheme.result = result;
      signature += format_name_arity(def.key) + ":" + canonical(def.scheme.params, nullptr) + ";";
      defs.push_back(std::move(def));
    }
    auto known = signatures_.find(type);
    if (known != signatures_.end()) {
      if (known->second != signature)
        throw DeclError{"conflicting redeclaration of type " + std::string(type.str())};
      return; // identical redeclaration
    }
    signatures_[type] = signature;
    TypeDef& tdef = db_->types_.at(type);
    for (auto& def : defs) {
      if (db_->ctors_.contains(def.key))
        throw DeclError{"constructor " + format_name_arity(def.key) +
                        " already belongs to another type"};
      def.index = tdef.ctors.size();
      tdef.ctors.push_back(def.key);
      db_->ctors_[def.key] = std::move(def);
    }
  }

  static void check_vars_bound(const TypePtr& t, std::uint32_t count) {
    if (t->is_var()) {
      if (t->var_id >= static_cast<int>(count))
        throw DeclError{"type variable " + t->name + " is not a parameter of the type"};
      return;
    }
    for (const auto& a : t->args)
      check_vars_bound(a, count);
    if (t->result)
      check_vars_bound(t->result, count);
  }

  void declare_pred(const PredDecl& d) {
    NameArity key{d.name, static_cast<std::uint32_t>(d.arg_types.size())};
    TypeScheme s;
    s.vars = var_names(d.vars);
    for (Term* a : d.arg_types)
      s.params.push_back(to_type(a, d.vars));
    if (auto it = db_->preds_.find(key); it != db_->preds_.end()) {
      if (it->second.builtin != BuiltinPred::None)
        throw DeclError{"cannot redeclare built-in predicate " + format_name_arity(key)};
      if (canonical(it->second.scheme.params, nullptr) != canonical(s.params, nullptr))
        throw DeclError{"conflicting declaration of predicate " + format_name_arity(key)};
      return;
    }
    PredDef def;
    def.key = key;
    def.scheme = std::move(s);
    def.loc = d.loc;
    db_->preds_[key] = std::move(def);
    db_->pred_order_.push_back(key);
  }

  void declare_fun(const FunDecl& d, bool prelude) {
    NameArity key{d.name, static_cast<std::uint32_t>(d.arg_types.size())};
    TypeScheme s;
    s.vars = var_names(d.vars);
    for (Term* a : d.arg_types)
      s.params.push_back(to_type(a, d.vars));
    s.result = to_type(d.result, d.vars);
    if (auto it = db_->funs_.find(key); it != db_->funs_.end()) {
      if (it->second.builtin != BuiltinFun::None)
        throw DeclError{"cannot redeclare built-in function " + format_name_arity(key)};
      if (canonical(it->second.scheme.params, it->second.scheme.result) !=
          canonical(s.params, s.result))
        throw DeclError{"conflicting declaration of function " + format_name_arity(key)};
      return;
    }
    FunDef def;
    def.key = key;
    def.scheme = std::move(s);
    def.from_prelude = prelude;
    def.loc = d.loc;
    db_->funs_[key] = std::move(def);
    db_->fun_arities_[key.name].push_back(key.arity);
    db_->fun_order_.push_back(key);
  }

  void check_name_classes() {
    for (const auto& [key, c] : db_->ctors_)
      if (db_->fun_arities_.contains(key.name))
        error("declaration", format_name_arity(key),
              "name is declared both as a constructor and as a function", {});
  }

  // Clauses and rules ----------------------------------------------------------

  void add_clause(const ClauseItem& c) {
    Term* head = c.head;
    std::string text = db_->format(head);
    if (!head->is_ctor())
      throw DeclError{"clause head must be an atom"};
    auto it = db_->preds_.find({head->name, head->arity});
    if (it == db_->preds_.end())
      undeclared("clause for undeclared predicate " +
                     format_name_arity({head->name, head->arity}),
                 text);
    if (it->second.builtin != BuiltinPred::None)
      throw DeclError{"cannot add clauses to a built-in predicate"};
    Elaborator el(*db_, db_->arena(), c.vars);
    Clause clause;
    std::vector<Term*> args;
    for (Term* a : head->arguments())
      args.push_back(el.expr(a));
    clause.head = make_ctor(db_->arena(), head->name, args);
    for (Term* g : c.body)
      clause.body.push_back(el.goal(g));
    clause.var_count = static_cast<std::uint32_t>(el.vars.size());
    clause.var_names = el.names;
    clause.var_names.resize(clause.var_count);
    clause.loc = c.loc;
    it->second.clauses.push_back(std::move(clause));
  }

  void add_rule(const RuleItem& r) {
    Term* lhs = r.lhs;
    std::string text = db_->format(lhs);
    if (!lhs->is_ctor())
      throw DeclError{"left side of a rule must be a function application"};
    auto it = db_->funs_.find({lhs->name, lhs->arity});
    if (it == db_->funs_.end())
      undeclared("rule for undeclared function " +
                     format_name_arity({lhs->name, lhs->arity}),
                 text);
    if (it->second.builtin != BuiltinFun::None)
      throw DeclError{"cannot add rules to a built-in function"};
    Elaborator el(*db_, db_->arena(), r.vars);
    RewriteRule rule;
    std::vector<Term*> args;
    for (Term* a : lhs->arguments())
      args.push_back(el.expr(a));
    rule.lhs = make_fun(db_->arena(), lhs->name, args);
    rule.rhs = el.expr(r.rhs);
    rule.var_count = static_cast<std::uint32_t>(el.vars.size());
    rule.var_names = el.names;
    rule.var_names.resize(rule.var_count);
    rule.loc = r.loc;
    it->second.rules.push_back(std::move(rule));
  }

  void typecheck() {
    TypeChecker checker(*db_);
    for (const NameArity& key : db_->pred_order_) {
      const PredDef& p = db_->preds_.at(key);
      for (const Clause& c : p.clauses) {
        try {
          checker.check_clause(p, c);
        } catch (const TypeError& e) {
          error("type", db_->format_clause(c), e.what(), c.loc);
        }
      }
    }
    for (const NameArity& key : db_->fun_order_) {
      const FunDef& f = db_->funs_.at(key);
      for (const RewriteRule& r : f.rules) {
        try {
          checker.check_rule(f, r);
        } catch (const TypeError& e) {
          error("type", db_->format_rule(r), e.what(), r.loc);
        }
      }
    }
  }

  std::vector<ParsedProgram>& parts_;
  const std::vector<bool>& prelude_;
  std::shared_ptr<Database> db_;
  std::vector<Diagnostic> diags_;
  std::unordered_map<Symbol, std::string> signatures_;
};


LoadResult DatabaseBuilder::finish() {
  Loader loader(parts_, prelude_part_, ops_);
  return loader.run();
}

LoadResult load_source(std::string_view text) {
  DatabaseBuilder builder;
  builder.add_source(text);
  return builder.finish();
}

LoadResult load_files(const std::vector<std::string>& paths) {
  DatabaseBuilder builder;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw std::runtime_error("cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    try {
      builder.add_source(text.str());
    } catch (const SyntaxError& e) {
      throw std::runtime_error(path + ": " + e.what());
    }
  }
  return builder.finish();
}

} // namespace lazylog
