#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lazylog/database.hpp"
#include "lazylog/machine.hpp"
#include "lazylog/printer.hpp"

namespace lazylog {

/// One alternative produced by a narrowing operation, already normalized
/// and printed: the bindings of the named variables that occur in the
/// operands, plus the operation's result term where there is one.
struct NarrowResult {
  std::map<std::string, std::string> bindings; ///< unbound variables print as `_k`
  std::string result;
  std::uint32_t depth = 0; ///< depth units spent before normalization
};

struct NarrowConfig {
  std::uint32_t depth_limit = UINT32_MAX;
  std::size_t max_results = 1000;
  std::uint64_t max_rewrites = 100000;
};

/// Direct access to the narrowing engine on individual terms, outside any
/// query. Terms are written in program syntax; a variable name means the
/// same variable in every term of one Narrower. Each operation runs a fresh
/// search, collects every alternative (up to the configured limits) and
/// restores the state afterwards.
class Narrower {
public:
  explicit Narrower(std::shared_ptr<const Database> db, NarrowConfig config = {});

  /// Parse, elaborate and type-check an expression. Throws on errors.
  Term* term(std::string_view text);

  /// Semantic unification of a and b.
  std::vector<NarrowResult> unify(Term* a, Term* b);
  /// One narrowing step on the outermost application f: one alternative
  /// per applicable rule (or builtin case), result = the rewritten term.
  std::vector<NarrowResult> narrow_step(Term* f);
  /// Rewrite until no function application remains.
  std::vector<NarrowResult> normalize(Term* t);

  /// Extended occurs check of variable `var` against t. Nothing on
  /// failure; otherwise the copy and the deferred (fresh, application)
  /// pairs, printed.
  struct OccursResult {
    std::string copy;
    std::vector<std::pair<std::string, std::string>> pairs;
  };
  std::optional<OccursResult> extended_occurs(Term* var, Term* t);

  const MachineStats& stats() const { return machine_.stats(); }
  /// Were any alternatives cut off by the depth limit in the last run?
  bool limit_hit() const { return limit_hit_; }

private:
  enum class Op { Unify, Step, Normalize };
  std::vector<NarrowResult> run(Op op, Term* a, Term* b);
  std::string show(Term* t, const std::shared_ptr<AnswerVarNamer>& namer) const;

  std::shared_ptr<const Database> db_;
  NarrowConfig config_;
  Machine machine_;
  std::shared_ptr<Arena> arena_;
  std::map<std::string, std::uint32_t> var_index_;
  std::vector<Symbol> var_names_;
  bool limit_hit_ = false;
};

} // namespace lazylog
