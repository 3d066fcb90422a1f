#pragma once

#include <optional>
#include <string_view>
#include <unordered_map>

#include "lazylog/symbol.hpp"

namespace lazylog {

enum class Fixity : std::uint8_t { xfx, xfy, yfx, fy, fx, xf, yf };

std::optional<Fixity> parse_fixity(std::string_view text);
std::string_view fixity_name(Fixity f);

enum class OpClass : std::uint8_t { Prefix, Infix, Postfix };
OpClass op_class(Fixity f);

struct OpDef {
  int priority = 0;
  Fixity fixity = Fixity::xfx;

  /// Maximum priorities allowed for the left and right operands.
  int left_max() const;
  int right_max() const;
};

/// Operator declarations: at most one definition per (symbol, class).
class OperatorTable {
public:
  /// Edinburgh-style defaults plus this language's declaration arrows.
  static OperatorTable defaults();

  /// priority 0 removes the definition.
  void add(Symbol name, int priority, Fixity fixity);

  std::optional<OpDef> prefix(Symbol name) const { return find(prefix_, name); }
  std::optional<OpDef> infix(Symbol name) const { return find(infix_, name); }
  std::optional<OpDef> postfix(Symbol name) const { return find(postfix_, name); }
  bool is_op(Symbol name) const {
    return prefix_.contains(name) || infix_.contains(name) ||
           postfix_.contains(name);
  }

private:
  using Map = std::unordered_map<Symbol, OpDef>;
  static std::optional<OpDef> find(const Map& m, Symbol s) {
    auto it = m.find(s);
    if (it == m.end())
      return std::nullopt;
    return it->second;
  }
  Map prefix_, infix_, postfix_;
};

} // namespace lazylog
