#include "lazylog/solver.hpp"

#include <algorithm>

#include "lazylog/printer.hpp"
#include "lazylog/reader.hpp"
#include "lazylog/typecheck.hpp"

namespace lazylog {

namespace {

// Variables bound by a lambda or eta are local to it and are not reported.
void free_vars(Term* t, std::vector<bool>& seen) {
  if (t->is_var()) {
    seen[static_cast<std::size_t>(t->value)] = true;
    return;
  }
  if (t->is_lambda() || t->is_eta())
    return;
  for (Term* a : t->arguments())
    free_vars(a, seen);
}

} // namespace

PreparedQuery prepare_query(const Database& db, std::string_view text) {
  std::string buffer(text);
  auto last = buffer.find_last_not_of(" \t\r\n");
  if (last == std::string::npos)
    throw SyntaxError("empty query", 1, 1, "");
  if (buffer[last] != '.')
    buffer.insert(last + 1, ".");
  ParsedQuery parsed = parse_query(buffer, db.ops());

  PreparedQuery q;
  q.arena = std::make_shared<Arena>(4096);
  Elaborator el(db, *q.arena, parsed.vars);
  q.goal = el.goal(parsed.goal);
  q.var_count = static_cast<std::uint32_t>(el.vars.size());
  q.var_names = parsed.vars.names;
  q.var_names.resize(q.var_count);
  std::vector<bool> outside(q.var_count, false);
  free_vars(q.goal, outside);
  for (std::uint32_t i : parsed.answer_vars)
    if (i < q.var_count && outside[i])
      q.answer_vars.push_back(i);
  TypeChecker checker(db);
  q.var_types = checker.check_goal(q.goal, q.var_count);
  return q;
}

const Binding* Answer::find(std::string_view name) const {
  for (const auto& b : bindings)
    if (b.name == name)
      return &b;
  return nullptr;
}

std::vector<std::string> Answer::lines(const OperatorTable& ops) const {
  auto namer = std::make_shared<AnswerVarNamer>();
  VarNaming naming = [namer](Term* v) { return (*namer)(v); };
  std::vector<std::string> out;
  for (const auto& b : bindings)
    out.push_back(b.name + "=" + format_term(b.value, ops, naming, 699));
  return out;
}

Solver::Solver(std::shared_ptr<const Database> db, PreparedQuery query, SearchConfig config,
               std::ostream* out)
    : db_(std::move(db)), query_(std::move(query)), config_(config),
      machine_(*db_, MachineConfig{config.max_rewrites, true}, out),
      limit_(config.depth_init) {
  if (config_.depth_step == 0)
    config_.depth_step = 1;
  if (config_.max_depth)
    limit_ = std::min(limit_, *config_.max_depth);
}

void Solver::start_iteration() {
  machine_.reset();
  machine_.state().depth_limit = limit_;
  machine_.window_low = prev_limit_;
  std::vector<Term*> fresh(query_.var_count, nullptr);
  Term* goal = instantiate(machine_.arena(), query_.goal, fresh, machine_.vars(),
                           query_.var_names);
  query_vars_.clear();
  Goal* tail = machine_.goal(GoalKind::Yield);
  for (auto it = query_.answer_vars.rbegin(); it != query_.answer_vars.rend(); ++it) {
    Term*& v = fresh[*it];
    if (v == nullptr)
      v = machine_.fresh_var(query_.var_names[*it]);
    tail = machine_.goal(GoalKind::Normalize, v, nullptr, tail);
  }
  for (std::uint32_t i : query_.answer_vars)
    query_vars_.push_back(fresh[i]);
  tail = machine_.goal(GoalKind::Solution, nullptr, nullptr, tail);
  goals_ = machine_.call_goals(goal, tail);
}

Answer Solver::export_answer() {
  Answer a;
  a.arena = std::make_shared<Arena>(1024);
  a.found_depth = machine_.found_depth;
  std::vector<std::pair<Term*, Term*>> var_map;
  for (std::size_t i = 0; i < query_vars_.size(); ++i) {
    Binding b;
    b.name = std::string(query_.var_names[query_.answer_vars[i]].str());
    b.value = export_term(*a.arena, query_vars_[i], var_map);
    a.bindings.push_back(std::move(b));
  }
  return a;
}

std::optional<Answer> Solver::next() {
  for (;;) {
    if (status_ != SolveStatus::Running)
      return std::nullopt;
    bool got = false;
    if (!started_) {
      start_iteration();
      started_ = true;
      got = machine_.start(goals_);
    } else {
      got = machine_.resume();
    }
    if (got)
      return export_answer();
    if (!machine_.state().limit_hit) {
      status_ = SolveStatus::Exhausted;
      return std::nullopt;
    }
    if (config_.max_depth && limit_ >= *config_.max_depth) {
      status_ = SolveStatus::DepthLimit;
      return std::nullopt;
    }
    prev_limit_ = limit_;
    limit_ += config_.depth_step;
    if (config_.max_depth)
      limit_ = std::min(limit_, *config_.max_depth);
    started_ = false;
  }
}

std::vector<Answer> solve_all(std::shared_ptr<const Database> db, std::string_view text,
                              std::size_t max_answers, SearchConfig config,
                              SolveStatus* status, std::ostream* out) {
  PreparedQuery q = prepare_query(*db, text);
  Solver solver(std::move(db), std::move(q), config, out);
  std::vector<Answer> answers;
  while (answers.size() < max_answers) {
    auto a = solver.next();
    if (!a)
      break;
    answers.push_back(std::move(*a));
  }
  if (status != nullptr)
    *status = solver.status();
  return answers;
}

} // namespace lazylog
