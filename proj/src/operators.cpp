#include "lazylog/operators.hpp"

namespace lazylog {

std::optional<Fixity> parse_fixity(std::string_view text) {
  static constexpr std::pair<std::string_view, Fixity> table[] = {
      {"xfx", Fixity::xfx}, {"xfy", Fixity::xfy}, {"yfx", Fixity::yfx},
      {"fy", Fixity::fy},   {"fx", Fixity::fx},   {"xf", Fixity::xf},
      {"yf", Fixity::yf}};
  for (auto [name, f] : table)
    if (name == text)
      return f;
  return std::nullopt;
}

std::string_view fixity_name(Fixity f) {
  switch (f) {
  case Fixity::xfx: return "xfx";
  case Fixity::xfy: return "xfy";
  case Fixity::yfx: return "yfx";
  case Fixity::fy: return "fy";
  case Fixity::fx: return "fx";
  case Fixity::xf: return "xf";
  case Fixity::yf: return "yf";
  }
  return "?";
}

OpClass op_class(Fixity f) {
  switch (f) {
  case Fixity::fy:
  case Fixity::fx:
    return OpClass::Prefix;
  case Fixity::xf:
  case Fixity::yf:
    return OpClass::Postfix;
  default:
    return OpClass::Infix;
  }
}

int OpDef::left_max() const {
  switch (fixity) {
  case Fixity::yfx:
  case Fixity::yf:
    return priority;
  default:
    return priority - 1;
  }
}

int OpDef::right_max() const {
  switch (fixity) {
  case Fixity::xfy:
  case Fixity::fy:
    return priority;
  default:
    return priority - 1;
  }
}

void OperatorTable::add(Symbol name, int priority, Fixity fixity) {
  Map* target = &infix_;
  switch (op_class(fixity)) {
  case OpClass::Prefix: target = &prefix_; break;
  case OpClass::Postfix: target = &postfix_; break;
  case OpClass::Infix: break;
  }
  if (priority == 0)
    target->erase(name);
  else
    (*target)[name] = OpDef{priority, fixity};
}

OperatorTable OperatorTable::defaults() {
  OperatorTable ops;
  auto add = [&](std::string_view name, int p, Fixity f) {
    ops.add(Symbol{name}, p, f);
  };
  // Items and declarations.
  add(":-", 1200, Fixity::xfx);
  add("->>", 1200, Fixity::xfx);
  add("?-", 1200, Fixity::fx);
  add("pred", 1150, Fixity::fx);
  add("function", 1150, Fixity::fx);
  add("constructors", 1150, Fixity::fx);
  add("=>", 1100, Fixity::xfx);
  add(",", 1000, Fixity::xfy);
  add("=>>", 900, Fixity::xfx);
  add("==>", 900, Fixity::xfx);
  // Goals and boolean functions.
  add("=", 700, Fixity::xfx);
  add("or", 690, Fixity::xfy);
  add("and", 680, Fixity::xfy);
  for (auto cmp : {"eq", "<", ">", "=<", ">=", "<="})
    add(cmp, 670, Fixity::xfx);
  // Arithmetic.
  add("+", 500, Fixity::yfx);
  add("-", 500, Fixity::yfx);
  add("*", 400, Fixity::yfx);
  add("div", 400, Fixity::yfx);
  add("mod", 400, Fixity::yfx);
  add("-", 200, Fixity::fy);
  return ops;
}

} // namespace lazylog
