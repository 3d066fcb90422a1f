#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lazylog/operators.hpp"
#include "lazylog/term.hpp"

namespace lazylog {

/// Names unbound variables `_1`, `_2`, ... in order of first appearance.
/// One namer shared across the bindings of an answer keeps shared variables
/// consistent.
class AnswerVarNamer {
public:
  std::string operator()(Term* var);

private:
  std::vector<Term*> seen_;
};

using VarNaming = std::function<std::string(Term*)>;

/// `_G<id>` for runtime variables.
std::string raw_var_name(Term* var);
/// The variable's source spelling (template printing).
std::string source_var_name(Term* var);

/// Render a term with operators in infix/prefix form, list sugar and the
/// fewest parentheses the operator table allows.
std::string format_term(Term* t, const OperatorTable& ops,
                        const VarNaming& naming = raw_var_name,
                        int max_priority = 1200);

/// Atom text, quoted when it would not read back as the same atom.
std::string format_atom(Symbol name);

} // namespace lazylog
