#include "lazylog/narrow.hpp"

#include "lazylog/printer.hpp"
#include "lazylog/reader.hpp"
#include "lazylog/typecheck.hpp"

namespace lazylog {

Narrower::Narrower(std::shared_ptr<const Database> db, NarrowConfig config)
    : db_(std::move(db)), config_(config),
      machine_(*db_, MachineConfig{config.max_rewrites, true}, nullptr),
      arena_(std::make_shared<Arena>(4096)) {}

Term* Narrower::term(std::string_view text) {
  std::string buffer(text);
  auto last = buffer.find_last_not_of(" \t\r\n");
  if (last == std::string::npos || buffer[last] != '.')
    buffer += " .";
  ParsedQuery parsed = parse_term(buffer, db_->ops());
  Elaborator el(*db_, *arena_, parsed.vars);
  Term* t = el.expr(parsed.goal);
  // Renumber this term's variables into the Narrower-wide table.
  for (std::size_t i = 0; i < el.vars.size(); ++i) {
    Term* v = el.vars[i];
    if (v == nullptr)
      continue;
    std::string name(i < parsed.vars.names.size() ? parsed.vars.names[i].str() : "_");
    std::uint32_t global;
    auto it = var_index_.find(name);
    if (name != "_" && it != var_index_.end()) {
      global = it->second;
    } else {
      global = static_cast<std::uint32_t>(var_names_.size());
      var_names_.push_back(Symbol(name));
      if (name != "_")
        var_index_.emplace(name, global);
    }
    v->value = global;
  }
  TypeChecker(*db_).check_expr(t, static_cast<std::uint32_t>(var_names_.size()));
  return t;
}

std::string Narrower::show(Term* t, const std::shared_ptr<AnswerVarNamer>& namer) const {
  VarNaming naming = [namer](Term* v) { return (*namer)(v); };
  return format_term(t, db_->ops(), naming, 699);
}

std::vector<NarrowResult> Narrower::run(Op op, Term* a, Term* b) {
  machine_.reset();
  machine_.state().depth_limit = config_.depth_limit;
  std::vector<Term*> fresh(var_names_.size(), nullptr);
  Term* ia = instantiate(machine_.arena(), a, fresh, machine_.vars(), var_names_);
  Term* ib = b != nullptr ? instantiate(machine_.arena(), b, fresh, machine_.vars(), var_names_)
                          : nullptr;

  std::vector<std::pair<std::string, Term*>> watched;
  for (std::size_t i = 0; i < fresh.size(); ++i)
    if (fresh[i] != nullptr && var_names_[i].str() != "_")
      watched.emplace_back(std::string(var_names_[i].str()), fresh[i]);

  Goal* tail = machine_.goal(GoalKind::Yield);
  if (op != Op::Step) {
    for (auto it = watched.rbegin(); it != watched.rend(); ++it)
      tail = machine_.goal(GoalKind::Normalize, it->second, nullptr, tail);
    if (op == Op::Normalize)
      tail = machine_.goal(GoalKind::Normalize, ia, nullptr, tail);
  }
  tail = machine_.goal(GoalKind::Solution, nullptr, nullptr, tail);
  Goal* goals = tail;
  if (op == Op::Unify) {
    goals = machine_.goal(GoalKind::Unify, ia, ib, tail);
  } else if (op == Op::Step) {
    if (!resolve(ia)->is_reducible())
      throw RuntimeError("narrow_step needs a function application");
    goals = machine_.goal(GoalKind::Force, ia, nullptr, tail);
  }

  std::vector<NarrowResult> results;
  Term* root = resolve(ia);
  bool got = machine_.start(goals);
  while (got) {
    NarrowResult r;
    r.depth = machine_.found_depth;
    auto namer = std::make_shared<AnswerVarNamer>();
    for (auto& [name, v] : watched)
      r.bindings[name] = show(v, namer);
    if (op == Op::Step)
      r.result = show(root->ref, namer);
    else if (op == Op::Normalize)
      r.result = show(ia, namer);
    results.push_back(std::move(r));
    if (results.size() >= config_.max_results)
      break;
    got = machine_.resume();
  }
  limit_hit_ = machine_.state().limit_hit;
  machine_.reset();
  return results;
}

std::vector<NarrowResult> Narrower::unify(Term* a, Term* b) { return run(Op::Unify, a, b); }

std::vector<NarrowResult> Narrower::narrow_step(Term* f) { return run(Op::Step, f, nullptr); }

std::vector<NarrowResult> Narrower::normalize(Term* t) { return run(Op::Normalize, t, nullptr); }

std::optional<Narrower::OccursResult> Narrower::extended_occurs(Term* var, Term* t) {
  machine_.reset();
  std::vector<Term*> fresh(var_names_.size(), nullptr);
  Term* iv = resolve(instantiate(machine_.arena(), var, fresh, machine_.vars(), var_names_));
  Term* it = instantiate(machine_.arena(), t, fresh, machine_.vars(), var_names_);
  if (!iv->is_var())
    throw RuntimeError("extended_occurs needs a variable");
  std::vector<std::pair<Term*, Term*>> pairs;
  Term* copy = machine_.occurs_copy(iv, it, pairs);
  std::optional<OccursResult> out;
  if (copy != nullptr) {
    auto namer = std::make_shared<AnswerVarNamer>();
    OccursResult r;
    r.copy = show(copy, namer);
    for (auto& [w, app] : pairs)
      r.pairs.emplace_back(show(w, namer), show(app, namer));
    out = std::move(r);
  }
  machine_.reset();
  return out;
}

} // namespace lazylog
