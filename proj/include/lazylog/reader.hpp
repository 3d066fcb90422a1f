#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lazylog/arena.hpp"
#include "lazylog/operators.hpp"
#include "lazylog/term.hpp"

namespace lazylog {

class SyntaxError : public std::runtime_error {
public:
  SyntaxError(const std::string& message, int line, int column, std::string found);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& found() const { return found_; }

private:
  int line_;
  int column_;
  std::string found_;
};

/// Variables of one clause, rule, declaration or query. Template variable i
/// is the node with value == i.
struct VarTable {
  std::uint32_t count = 0;
  std::vector<Symbol> names; ///< by index; "_" for anonymous variables
};

// Items as read. Terms are raw: every compound is a Ctor node, and names are
// classified (constructor / function / predicate) only when loading.

struct ClauseItem {
  Term* head;
  std::vector<Term*> body;
  VarTable vars;
  SourceLoc loc;
};

struct RuleItem {
  Term* lhs;
  Term* rhs;
  VarTable vars;
  SourceLoc loc;
};

struct PredDecl {
  Symbol name;
  std::vector<Term*> arg_types;
  VarTable vars;
  SourceLoc loc;
};

struct CtorDecl {
  Term* type_pattern;
  std::vector<Term*> ctors;
  VarTable vars;
  SourceLoc loc;
};

struct FunDecl {
  Symbol name;
  std::vector<Term*> arg_types;
  Term* result;
  VarTable vars;
  SourceLoc loc;
};

struct OpDecl {
  int priority;
  Fixity fixity;
  Symbol name;
  SourceLoc loc;
};

struct CommentItem {
  std::string text;
  SourceLoc loc;
};

using ProgramItem = std::variant<ClauseItem, RuleItem, PredDecl, CtorDecl,
                                 FunDecl, OpDecl, CommentItem>;

struct ParsedProgram {
  std::shared_ptr<Arena> arena;
  std::vector<ProgramItem> items;
  OperatorTable ops; ///< table after all op declarations took effect
  std::vector<std::string> warnings;
};

/// Parse a program file. `ops` is the table in force at the start of the
/// text; op declarations update the table for the text that follows.
ParsedProgram parse_program(std::string_view text,
                            OperatorTable ops = OperatorTable::defaults());

struct ParsedQuery {
  std::shared_ptr<Arena> arena;
  Term* goal;
  VarTable vars;
  /// Named (non-anonymous) query variables in order of first appearance.
  std::vector<std::uint32_t> answer_vars;
};

/// Parse `solve(G).`, `?- G.` or a bare `G.`; returns the goal G.
ParsedQuery parse_query(std::string_view text, const OperatorTable& ops);

/// Parse a single term terminated by `.`, e.g. for tests.
ParsedQuery parse_term(std::string_view text, const OperatorTable& ops);

/// Print an item back in source syntax, terminated by ".\n".
std::string format_item(const ProgramItem& item, const OperatorTable& ops);

/// Flatten a right-nested ','/2 chain.
std::vector<Term*> flatten_conjunction(Term* t);

} // namespace lazylog
