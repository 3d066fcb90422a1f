#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lazylog/database.hpp"
#include "lazylog/machine.hpp"

namespace lazylog {

struct SearchConfig {
  std::uint32_t depth_init = 5;
  std::uint32_t depth_step = 5;
  std::optional<std::uint32_t> max_depth;
  std::uint64_t max_rewrites = 100000; ///< per answer, while normalizing
};

/// A query goal elaborated against a database and type-checked.
struct PreparedQuery {
  std::shared_ptr<Arena> arena;
  Term* goal = nullptr;
  std::uint32_t var_count = 0;
  std::vector<Symbol> var_names;
  std::vector<std::uint32_t> answer_vars; ///< named variables, first-appearance order
  std::vector<TypePtr> var_types;
};

/// Parse (`solve(G).`, `?- G.` or `G.`; the final `.` may be omitted),
/// elaborate and type-check a query. Throws SyntaxError, LoadError or
/// TypeError.
PreparedQuery prepare_query(const Database& db, std::string_view text);

struct Binding {
  std::string name;
  Term* value = nullptr;
};

struct Answer {
  std::shared_ptr<Arena> arena;
  std::vector<Binding> bindings;
  std::uint32_t found_depth = 0;

  const Binding* find(std::string_view name) const;
  /// `V=term` lines; unbound variables are `_1`, `_2`, ... consistently
  /// across all bindings of the answer.
  std::vector<std::string> lines(const OperatorTable& ops) const;
};

enum class SolveStatus { Running, Exhausted, DepthLimit };

/// Pull-driven answer stream for one query: SLD resolution with lazy
/// narrowing under depth-first iterative deepening. Each iteration reruns
/// the search with a larger limit and only reports solutions whose depth
/// lies above the previous limit.
class Solver {
public:
  Solver(std::shared_ptr<const Database> db, PreparedQuery query, SearchConfig config = {},
         std::ostream* out = nullptr);

  /// The next answer, or nothing once the stream has ended (see status()).
  std::optional<Answer> next();

  SolveStatus status() const { return status_; }
  std::uint32_t depth_limit() const { return limit_; }
  const MachineStats& stats() const { return machine_.stats(); }
  const PreparedQuery& query() const { return query_; }

private:
  void start_iteration();
  Answer export_answer();

  std::shared_ptr<const Database> db_;
  PreparedQuery query_;
  SearchConfig config_;
  Machine machine_;
  std::vector<Term*> query_vars_;
  Goal* goals_ = nullptr;
  std::uint32_t limit_;
  std::int64_t prev_limit_ = -1;
  bool started_ = false;
  SolveStatus status_ = SolveStatus::Running;
};

/// Convenience: up to `max_answers` answers of `text`.
std::vector<Answer> solve_all(std::shared_ptr<const Database> db, std::string_view text,
                              std::size_t max_answers, SearchConfig config = {},
                              SolveStatus* status = nullptr, std::ostream* out = nullptr);

} // namespace lazylog
