#include "lazylog/printer.hpp"

#include <algorithm>
#include <cctype>

namespace lazylog {
namespace {

constexpr std::string_view kSymbolChars = "+-*/\\^<>=~:.?@#&$";

bool is_symbol_char(char c) {
  return kSymbolChars.find(c) != std::string_view::npos;
}
bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_solo_atom(std::string_view s) {
  if (s.empty())
    return false;
  if (std::islower(static_cast<unsigned char>(s[0])) != 0)
    return std::all_of(s.begin(), s.end(), is_alnum);
  if (std::all_of(s.begin(), s.end(), is_symbol_char))
    return true;
  return s == "[]" || s == "!" || s == ";";
}

class Printer {
public:
  Printer(const OperatorTable& ops, const VarNaming& naming)
      : ops_(ops), naming_(naming) {}

  std::string print(Term* t, int max_priority) {
    t = resolve(t);
    switch (t->kind) {
    case TermKind::Var:
      return naming_(t);
    case TermKind::Int:
      return std::to_string(t->value);
    case TermKind::FunRef:
      return format_atom(t->name);
    default:
      break;
    }
    if (t->is_ctor() && t->name == sym::cons() && t->arity == 2)
      return print_list(t);
    if (t->is_lambda())
      return print_lambda(t);
    if (t->arity == 0)
      return format_atom(t->name);
    if (t->arity == 2 && !t->is_lambda() && !t->is_eta())
      if (auto op = ops_.infix(t->name))
        return print_infix(t, *op, max_priority);
    if (t->arity == 1)
      if (auto op = ops_.prefix(t->name))
        return print_prefix(t, *op, max_priority);
    if (t->arity == 1)
      if (auto op = ops_.postfix(t->name))
        return wrap(glue(print(t->args[0], op->left_max()), format_atom(t->name)),
                    op->priority, max_priority);
    std::string out = format_atom(t->name);
    out += '(';
    for (std::uint32_t i = 0; i < t->arity; ++i) {
      if (i != 0)
        out += ',';
      out += print(t->args[i], 999);
    }
    out += ')';
    return out;
  }

private:
  static std::string wrap(std::string s, int priority, int max_priority) {
    if (priority > max_priority)
      return "(" + s + ")";
    return s;
  }

  static std::string glue(const std::string& a, const std::string& b) {
    if (a.empty() || b.empty())
      return a + b;
    char x = a.back(), y = b.front();
    if ((is_symbol_char(x) && is_symbol_char(y)) || (is_alnum(x) && is_alnum(y)) ||
        (x == ',' && y == ','))
      return a + " " + b;
    return a + b;
  }

  std::string print_infix(Term* t, const OpDef& op, int max_priority) {
    std::string name = format_atom(t->name);
    std::string left = print(t->args[0], op.left_max());
    std::string right = print(t->args[1], op.right_max());
    std::string out;
    if (t->name == sym::comma())
      out = left + "," + right;
    else if (is_alnum(name.front()))
      out = left + " " + name + " " + right;
    else
      out = glue(glue(left, name), right);
    return wrap(out, op.priority, max_priority);
  }

  std::string print_prefix(Term* t, const OpDef& op, int max_priority) {
    std::string name = format_atom(t->name);
    Term* arg = resolve(t->args[0]);
    std::string operand = print(arg, op.right_max());
    std::string out;
    if (name == "-" && arg->is_int())
      out = "- " + operand;
    else if (is_alnum(name.back()) || operand.front() == '(')
      out = name + " " + operand;
    else
      out = glue(name, operand);
    return wrap(out, op.priority, max_priority);
  }

  std::string print_lambda(Term* t) {
    std::string out = "lambda([";
    auto params = t->lambda_params();
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i != 0)
        out += ',';
      out += print(params[i], 999);
    }
    return out + "]," + print(t->lambda_body(), 999) + ")";
  }

  std::string print_list(Term* t) {
    std::string out = "[";
    bool first = true;
    for (;;) {
      if (!first)
        out += ',';
      first = false;
      out += print(t->args[0], 999);
      Term* tail = resolve(t->args[1]);
      if (tail->is_atom(sym::nil()))
        break;
      if (tail->is_ctor() && tail->name == sym::cons() && tail->arity == 2) {
        t = tail;
        continue;
      }
      out += '|';
      out += print(tail, 999);
      break;
    }
    out += ']';
    return out;
  }

  const OperatorTable& ops_;
  const VarNaming& naming_;
};

} // namespace

std::string AnswerVarNamer::operator()(Term* var) {
  auto it = std::find(seen_.begin(), seen_.end(), var);
  if (it == seen_.end()) {
    seen_.push_back(var);
    return "_" + std::to_string(seen_.size());
  }
  return "_" + std::to_string(it - seen_.begin() + 1);
}

std::string raw_var_name(Term* var) { return "_G" + std::to_string(var->var_id()); }

std::string source_var_name(Term* var) {
  if (!var->name.empty())
    return std::string(var->name.str());
  return "_V" + std::to_string(var->var_id());
}

std::string format_atom(Symbol name) {
  std::string_view s = name.str();
  if (is_solo_atom(s))
    return std::string(s);
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "\\'";
    else if (c == '\\')
      out += "\\\\";
    else
      out += c;
  }
  out += '\'';
  return out;
}

std::string format_term(Term* t, const OperatorTable& ops, const VarNaming& naming,
                        int max_priority) {
  return Printer(ops, naming).print(t, max_priority);
}

} // namespace lazylog
