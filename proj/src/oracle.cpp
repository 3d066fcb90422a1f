#include "lazylog/oracle.hpp"

#include <map>
#include <stdexcept>

#include "lazylog/machine.hpp"
#include "lazylog/printer.hpp"
#include "lazylog/typecheck.hpp"

namespace lazylog {

AtomSet GroundRuleSet::universe() const {
  AtomSet u;
  for (const auto& r : rules) {
    u.insert(r.conclusion);
    u.insert(r.premises.begin(), r.premises.end());
  }
  return u;
}

AtomSet phi_step(const GroundRuleSet& rs, const AtomSet& y) {
  AtomSet out;
  for (const auto& r : rs.rules) {
    bool ok = true;
    for (const auto& p : r.premises)
      if (!y.contains(p)) {
        ok = false;
        break;
      }
    if (ok)
      out.insert(r.conclusion);
  }
  return out;
}

AtomSet lfp(const GroundRuleSet& rs) {
  AtomSet y;
  for (;;) {
    AtomSet next = phi_step(rs, y);
    next.insert(y.begin(), y.end());
    if (next.size() == y.size())
      return y;
    y = std::move(next);
  }
}

bool is_closed(const GroundRuleSet& rs, const AtomSet& y) {
  for (const auto& a : phi_step(rs, y))
    if (!y.contains(a))
      return false;
  return true;
}

AtomSet closed_intersection(const GroundRuleSet& rs) {
  AtomSet u = rs.universe();
  if (u.size() > 20)
    throw std::invalid_argument("universe too large for subset enumeration");
  std::vector<Atom> atoms(u.begin(), u.end());
  const std::uint32_t n = static_cast<std::uint32_t>(atoms.size());
  AtomSet result = u; // the universe itself is closed
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    AtomSet y;
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i))
        y.insert(atoms[i]);
    if (!is_closed(rs, y))
      continue;
    AtomSet keep;
    for (const auto& a : result)
      if (y.contains(a))
        keep.insert(a);
    result = std::move(keep);
  }
  return result;
}

namespace {

bool has_eta(Term* t) {
  if (t->is_eta())
    return true;
  for (Term* a : t->arguments())
    if (has_eta(a))
      return true;
  return false;
}

/// Ground constructor terms of one type, up to a nesting depth.
class GroundTerms {
public:
  GroundTerms(const Database& db, Arena& arena, const OracleConfig& config)
      : db_(db), arena_(arena), config_(config) {}

  /// Null when the type is not enumerable (variable or function type).
  const std::vector<Term*>* of(const TypePtr& type, std::uint32_t depth) {
    std::string key = format_type(type) + "/" + std::to_string(depth);
    auto it = memo_.find(key);
    if (it != memo_.end())
      return it->second.ok ? &it->second.terms : nullptr;
    Entry e;
    e.ok = build(type, depth, e.terms);
    auto [pos, _] = memo_.emplace(key, std::move(e));
    return pos->second.ok ? &pos->second.terms : nullptr;
  }

private:
  struct Entry {
    bool ok = false;
    std::vector<Term*> terms;
  };

  bool build(const TypePtr& type, std::uint32_t depth, std::vector<Term*>& out) {
    if (type->kind != TypeExpr::Kind::App)
      return false;
    if (type->is_app("int")) {
      for (std::int64_t v = -config_.int_range; v <= config_.int_range; ++v)
        out.push_back(make_int(arena_, v));
      return true;
    }
    const TypeDef* def = db_.type(Symbol(type->name));
    if (def == nullptr)
      return false;
    for (const NameArity& c : def->ctors) {
      if (c.arity == 0) {
        out.push_back(make_ctor(arena_, c.name));
        continue;
      }
      if (depth == 0)
        continue;
      const CtorDef* cd = db_.ctor(c.name, c.arity);
      std::vector<TypePtr> arg_types = db_.ctor_arg_types(*cd, type.get());
      std::vector<const std::vector<Term*>*> choices;
      for (const auto& at : arg_types) {
        const auto* ts = of(at, depth - 1);
        if (ts == nullptr)
          return false;
        choices.push_back(ts);
      }
      std::vector<std::size_t> idx(choices.size(), 0);
      bool empty = false;
      for (const auto* ch : choices)
        empty = empty || ch->empty();
      if (empty)
        continue;
      for (;;) {
        std::vector<Term*> args;
        for (std::size_t i = 0; i < idx.size(); ++i)
          args.push_back((*choices[i])[idx[i]]);
        out.push_back(make_ctor(arena_, c.name, args));
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == choices[k]->size())
          idx[k++] = 0;
        if (k == idx.size())
          break;
      }
    }
    return true;
  }

  const Database& db_;
  Arena& arena_;
  const OracleConfig& config_;
  std::map<std::string, Entry> memo_;
};

enum class GoalClass { Atom, Unify, Skip, Fail };

GoalClass classify(const Database& db, Term* g) {
  const PredDef* p = db.pred(g->name, g->arity);
  if (p == nullptr)
    return GoalClass::Atom;
  switch (p->builtin) {
  case BuiltinPred::Unify:
    return GoalClass::Unify;
  case BuiltinPred::True:
  case BuiltinPred::Write:
  case BuiltinPred::Nl:
    return GoalClass::Skip;
  case BuiltinPred::Fail:
    return GoalClass::Fail;
  default:
    return GoalClass::Atom;
  }
}

} // namespace

GroundRuleSet ground_instances(const Database& db, const OracleConfig& config,
                               std::vector<std::string>* warnings) {
  auto warn = [&](std::string msg) {
    if (warnings != nullptr)
      warnings->push_back(std::move(msg));
  };
  Arena arena(1 << 16);
  GroundTerms universe(db, arena, config);
  Machine machine(db, MachineConfig{config.max_rewrites, true}, nullptr);
  TypeChecker checker(db);
  std::set<GroundRule> rules;

  for (const NameArity& key : db.pred_order()) {
    const PredDef* pred = db.pred(key.name, key.arity);
    for (const Clause& clause : pred->clauses) {
      const std::string text = db.format_clause(clause);
      bool eta = has_eta(clause.head);
      for (Term* g : clause.body)
        eta = eta || has_eta(g);
      if (eta) {
        warn("skipped (eta description): " + text);
        continue;
      }
      std::vector<TypePtr> types = checker.check_clause(*pred, clause);
      std::vector<const std::vector<Term*>*> choices;
      bool ok = true;
      std::size_t total = 1;
      for (std::uint32_t i = 0; i < clause.var_count; ++i) {
        const auto* ts = universe.of(types[i], config.depth);
        if (ts == nullptr) {
          warn("skipped (variable " + std::string(clause.var_names[i].str()) + " of type " +
               format_type(types[i]) + "): " + text);
          ok = false;
          break;
        }
        choices.push_back(ts);
        total = ts->empty() ? 0 : (total > config.max_instances ? total : total * ts->size());
      }
      if (!ok || total == 0)
        continue;
      if (total > config.max_instances) {
        warn("skipped (too many instances): " + text);
        continue;
      }

      std::vector<std::size_t> idx(choices.size(), 0);
      for (;;) {
        machine.reset();
        std::vector<Term*> fresh(clause.var_count);
        for (std::size_t i = 0; i < idx.size(); ++i)
          fresh[i] = (*choices[i])[idx[i]];
        Term* head = instantiate(machine.arena(), clause.head, fresh, machine.vars());
        std::vector<Term*> body;
        for (Term* g : clause.body)
          body.push_back(instantiate(machine.arena(), g, fresh, machine.vars()));

        Goal* goals = machine.goal(GoalKind::Yield);
        for (auto it = body.rbegin(); it != body.rend(); ++it)
          goals = machine.goal(GoalKind::Normalize, *it, nullptr, goals);
        goals = machine.goal(GoalKind::Normalize, head, nullptr, goals);
        goals = machine.goal(GoalKind::Solution, nullptr, nullptr, goals);

        bool evaluated = false;
        try {
          evaluated = machine.start(goals);
        } catch (const RuntimeError& e) {
          warn(std::string("instance dropped (") + e.what() + "): " + text);
        }
        if (evaluated) {
          GroundRule rule;
          rule.conclusion = format_term(head, db.ops());
          bool keep = true;
          for (Term* g : body) {
            switch (classify(db, g)) {
            case GoalClass::Atom:
              rule.premises.insert(format_term(g, db.ops()));
              break;
            case GoalClass::Unify:
              keep = keep && identical(g->args[0], g->args[1]);
              break;
            case GoalClass::Skip:
              break;
            case GoalClass::Fail:
              keep = false;
              break;
            }
          }
          if (keep)
            rules.insert(std::move(rule));
        }

        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == choices[k]->size())
          idx[k++] = 0;
        if (k == idx.size())
          break;
      }
    }
  }
  machine.reset();
  GroundRuleSet rs;
  rs.rules.assign(rules.begin(), rules.end());
  return rs;
}

} // namespace lazylog
