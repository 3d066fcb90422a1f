#include "lazylog/checks.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "lazylog/printer.hpp"

namespace lazylog {

namespace {

Diagnostic warning(std::string check, const RewriteRule& rule, const Database& db,
                   std::string message) {
  Diagnostic d;
  d.severity = Diagnostic::Severity::Warning;
  d.check = std::move(check);
  d.item = db.format_rule(rule);
  d.message = std::move(message);
  d.loc = rule.loc;
  return d;
}

void visit_vars(Term* t, const std::function<void(Term*)>& f, bool skip_binders) {
  if (t->is_var()) {
    f(t);
    return;
  }
  if (skip_binders && (t->is_lambda() || t->is_eta()))
    return;
  for (Term* a : t->arguments())
    visit_vars(a, f, skip_binders);
}

void find_non_constructors(Term* t, std::vector<Term*>& out) {
  switch (t->kind) {
  case TermKind::Fun:
  case TermKind::FunRef:
  case TermKind::Lambda:
  case TermKind::Eta:
    out.push_back(t);
    return;
  default:
    break;
  }
  for (Term* a : t->arguments())
    find_non_constructors(a, out);
}

} // namespace

std::vector<Diagnostic> check_constructor_discipline(const RewriteRule& rule,
                                                     const Database& db) {
  std::vector<Term*> found;
  for (Term* a : rule.lhs->arguments())
    find_non_constructors(a, found);
  std::vector<Diagnostic> out;
  for (Term* f : found)
    out.push_back(warning("constructor_discipline", rule, db,
                          "function " + db.format(f) + " in the left side"));
  return out;
}

std::vector<Diagnostic> check_left_linearity(const RewriteRule& rule, const Database& db) {
  std::unordered_map<std::int64_t, int> count;
  visit_vars(rule.lhs, [&](Term* v) { ++count[v->value]; }, false);
  std::vector<Diagnostic> out;
  std::vector<std::int64_t> reported;
  visit_vars(
      rule.lhs,
      [&](Term* v) {
        if (count[v->value] > 1 &&
            std::find(reported.begin(), reported.end(), v->value) == reported.end()) {
          reported.push_back(v->value);
          out.push_back(warning("left_linearity", rule, db,
                                "variable " + std::string(v->name.str()) +
                                    " occurs more than once in the left side"));
        }
      },
      false);
  return out;
}

std::vector<Diagnostic> check_term_rewriting(const RewriteRule& rule, const Database& db) {
  std::vector<std::int64_t> lhs_vars;
  visit_vars(rule.lhs, [&](Term* v) { lhs_vars.push_back(v->value); }, false);
  std::vector<Diagnostic> out;
  std::vector<std::int64_t> reported;
  // Lambda parameters and eta-bound variables are local to the right side.
  visit_vars(
      rule.rhs,
      [&](Term* v) {
        if (std::find(lhs_vars.begin(), lhs_vars.end(), v->value) == lhs_vars.end() &&
            std::find(reported.begin(), reported.end(), v->value) == reported.end()) {
          reported.push_back(v->value);
          out.push_back(warning("term_rewriting", rule, db,
                                "variable " + std::string(v->name.str()) +
                                    " occurs on the right side only"));
        }
      },
      true);
  return out;
}

namespace {

/// Syntactic unifier over template terms; variables keyed by (side, index).
class TemplateUnifier {
public:
  bool unify(Term* a, int sa, Term* b, int sb) {
    auto [ra, ka] = walk(a, sa);
    auto [rb, kb] = walk(b, sb);
    if (ra->is_var() && rb->is_var() && ka == kb && ra->value == rb->value)
      return true;
    if (ra->is_var()) {
      if (occurs(ra->value, ka, rb, kb))
        return false;
      map_[key(ra->value, ka)] = {rb, kb};
      return true;
    }
    if (rb->is_var())
      return unify(rb, kb, ra, ka);
    if (ra->kind != rb->kind)
      return false;
    if (ra->is_int())
      return ra->value == rb->value;
    if (ra->name != rb->name || ra->arity != rb->arity)
      return false;
    for (std::uint32_t i = 0; i < ra->arity; ++i)
      if (!unify(ra->args[i], ka, rb->args[i], kb))
        return false;
    return true;
  }

private:
  static std::uint64_t key(std::int64_t v, int side) {
    return (static_cast<std::uint64_t>(v) << 1) | static_cast<std::uint64_t>(side);
  }

  std::pair<Term*, int> walk(Term* t, int side) const {
    while (t->is_var()) {
      auto it = map_.find(key(t->value, side));
      if (it == map_.end())
        break;
      t = it->second.first;
      side = it->second.second;
    }
    return {t, side};
  }

  bool occurs(std::int64_t v, int side, Term* t, int ts) const {
    auto [r, k] = walk(t, ts);
    if (r->is_var())
      return r->value == v && k == side;
    for (Term* a : r->arguments())
      if (occurs(v, side, a, k))
        return true;
    return false;
  }

  std::unordered_map<std::uint64_t, std::pair<Term*, int>> map_;
};

} // namespace

bool lhs_unifiable(const RewriteRule& a, const RewriteRule& b) {
  if (a.lhs->arity != b.lhs->arity || a.lhs->name != b.lhs->name)
    return false;
  TemplateUnifier u;
  return u.unify(a.lhs, 0, b.lhs, 1);
}

std::vector<Diagnostic> check_overlap(const FunDef& fun, const Database& db) {
  std::vector<Diagnostic> out;
  for (std::size_t j = 1; j < fun.rules.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (lhs_unifiable(fun.rules[i], fun.rules[j]))
        out.push_back(warning("non_overlapping", fun.rules[j], db,
                              "left side overlaps with `" +
                                  db.format_rule(fun.rules[i]) + "`"));
  return out;
}

// Exhaustiveness ---------------------------------------------------------------

Pattern Pattern::any(TypePtr type) {
  Pattern p;
  p.kind = Kind::Any;
  p.type = std::move(type);
  return p;
}

namespace {

Pattern to_pattern(Term* t) {
  Pattern p;
  if (t->is_var())
    return p;
  if (t->is_int()) {
    p.kind = Pattern::Kind::Int;
    p.value = t->value;
    return p;
  }
  p.kind = Pattern::Kind::Ctor;
  p.name = t->name;
  for (Term* a : t->arguments())
    p.args.push_back(to_pattern(a));
  return p;
}

using Path = std::vector<std::size_t>;

enum class Relation { Disjoint, Covered, Split };

/// Compare candidate c with row pattern p. On Split, `path` locates the
/// first Any in c where p is more specific.
Relation relate(const Pattern& c, const Pattern& p, Path& path) {
  if (p.kind == Pattern::Kind::Any)
    return Relation::Covered;
  if (c.kind == Pattern::Kind::Any)
    return Relation::Split;
  if (c.kind != p.kind)
    return Relation::Disjoint;
  if (c.kind == Pattern::Kind::Int)
    return c.value == p.value ? Relation::Covered : Relation::Disjoint;
  if (c.name != p.name || c.args.size() != p.args.size())
    return Relation::Disjoint;
  Relation result = Relation::Covered;
  Path first_split;
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    Path sub;
    Relation r = relate(c.args[i], p.args[i], sub);
    if (r == Relation::Disjoint)
      return Relation::Disjoint;
    if (r == Relation::Split && result != Relation::Split) {
      result = Relation::Split;
      first_split.push_back(i);
      first_split.insert(first_split.end(), sub.begin(), sub.end());
    }
  }
  if (result == Relation::Split)
    path.insert(path.end(), first_split.begin(), first_split.end());
  return result;
}

Relation relate_tuple(const PatternTuple& c, const PatternTuple& p, Path& path) {
  Relation result = Relation::Covered;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Path sub;
    Relation r = relate(c[i], p[i], sub);
    if (r == Relation::Disjoint)
      return Relation::Disjoint;
    if (r == Relation::Split && result != Relation::Split) {
      result = Relation::Split;
      path.push_back(i);
      path.insert(path.end(), sub.begin(), sub.end());
    }
  }
  return result;
}

Pattern& locate(PatternTuple& t, const Path& path) {
  Pattern* p = &t[path[0]];
  for (std::size_t k = 1; k < path.size(); ++k)
    p = &p->args[path[k]];
  return *p;
}

/// Constructor skeletons for a splittable type; empty if it cannot be split.
std::vector<Pattern> skeletons(const TypePtr& type, const Database& db) {
  std::vector<Pattern> out;
  if (!type || type->kind != TypeExpr::Kind::App)
    return out;
  const TypeDef* def = db.type(Symbol(type->name));
  if (def == nullptr)
    return out;
  for (const NameArity& k : def->ctors) {
    const CtorDef* c = db.ctor(k.name, k.arity);
    Pattern p;
    p.kind = Pattern::Kind::Ctor;
    p.name = k.name;
    p.type = type;
    for (TypePtr& at : db.ctor_arg_types(*c, type.get()))
      p.args.push_back(Pattern::any(std::move(at)));
    out.push_back(std::move(p));
  }
  return out;
}

void subtract(const PatternTuple& c, const PatternTuple& row, const Database& db,
              std::vector<PatternTuple>& out) {
  Path path;
  switch (relate_tuple(c, row, path)) {
  case Relation::Disjoint:
    out.push_back(c);
    return;
  case Relation::Covered:
    return;
  case Relation::Split:
    break;
  }
  PatternTuple copy = c;
  TypePtr type = locate(copy, path).type;
  std::vector<Pattern> options = skeletons(type, db);
  if (options.empty()) {
    // int, function or polymorphic position: the row covers part of c that
    // cannot be described, so c stays missing as a whole.
    out.push_back(c);
    return;
  }
  for (Pattern& option : options) {
    locate(copy, path) = std::move(option);
    subtract(copy, row, db, out);
  }
}

} // namespace

PatternTuple lhs_patterns(const RewriteRule& rule, const FunDef&, const Database&) {
  PatternTuple out;
  for (Term* a : rule.lhs->arguments())
    out.push_back(to_pattern(a));
  return out;
}

ExhaustiveResult check_exhaustive(const std::vector<PatternTuple>& rows,
                                  const std::vector<TypePtr>& arg_types,
                                  const Database& db) {
  std::vector<PatternTuple> candidates;
  PatternTuple start;
  for (const auto& t : arg_types)
    start.push_back(Pattern::any(t));
  candidates.push_back(std::move(start));
  for (const PatternTuple& row : rows) {
    std::vector<PatternTuple> next;
    for (const PatternTuple& c : candidates)
      subtract(c, row, db, next);
    candidates = std::move(next);
    if (candidates.empty())
      break;
  }
  ExhaustiveResult result;
  result.exhaustive = candidates.empty();
  result.missing = std::move(candidates);
  return result;
}

ExhaustiveResult check_exhaustive(const FunDef& fun, const Database& db) {
  std::vector<PatternTuple> rows;
  for (const RewriteRule& r : fun.rules)
    rows.push_back(lhs_patterns(r, fun, db));
  return check_exhaustive(rows, fun.scheme.params, db);
}

std::string format_pattern(const Pattern& p, const Database& db) {
  switch (p.kind) {
  case Pattern::Kind::Any:
    return "_";
  case Pattern::Kind::Int:
    return std::to_string(p.value);
  case Pattern::Kind::Ctor:
    break;
  }
  if (p.name == sym::cons() && p.args.size() == 2)
    return "[" + format_pattern(p.args[0], db) + "|" + format_pattern(p.args[1], db) + "]";
  std::string out = format_atom(p.name);
  if (!p.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < p.args.size(); ++i) {
      if (i != 0)
        out += ',';
      out += format_pattern(p.args[i], db);
    }
    out += ')';
  }
  return out;
}

std::string format_pattern_tuple(const PatternTuple& t, const Database& db) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i != 0)
      out += ',';
    out += format_pattern(t[i], db);
  }
  return out + ")";
}

std::vector<Diagnostic> run_rule_checks(const Database& db) {
  std::vector<Diagnostic> out;
  auto append = [&](std::vector<Diagnostic> ds) {
    for (auto& d : ds)
      out.push_back(std::move(d));
  };
  for (const NameArity& key : db.fun_order()) {
    const FunDef* fun = db.fun(key.name, key.arity);
    if (fun == nullptr || fun->from_prelude || fun->builtin != BuiltinFun::None)
      continue;
    bool discipline_ok = true;
    for (const RewriteRule& r : fun->rules) {
      auto cd = check_constructor_discipline(r, db);
      discipline_ok = discipline_ok && cd.empty();
      append(std::move(cd));
      append(check_left_linearity(r, db));
      append(check_term_rewriting(r, db));
    }
    append(check_overlap(*fun, db));
    // Left sides with functions in them are not patterns; skip them here.
    if (!discipline_ok || fun->rules.empty())
      continue;
    ExhaustiveResult ex = check_exhaustive(*fun, db);
    for (const PatternTuple& m : ex.missing) {
      Diagnostic d;
      d.check = "exhaustiveness";
      d.item = format_atom(key.name) + format_pattern_tuple(m, db);
      d.message = "no rule matches these arguments";
      d.loc = fun->loc;
      out.push_back(std::move(d));
    }
  }
  return out;
}

} // namespace lazylog
