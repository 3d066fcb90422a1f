#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace lazylog {

/// Interned name. Two symbols compare equal iff their spellings are equal.
class Symbol {
public:
  Symbol() = default;
  explicit Symbol(std::string_view text);

  std::string_view str() const;
  std::uint32_t id() const { return id_; }
  bool empty() const { return id_ == 0; }

  friend bool operator==(Symbol, Symbol) = default;
  friend auto operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

private:
  std::uint32_t id_ = 0;
};

namespace sym {
// Frequently used names, interned once.
Symbol nil();     // []
Symbol cons();    // '.'
Symbol comma();   // ','
Symbol equals();  // =
Symbol true_();
Symbol false_();
Symbol eq();
Symbol apply();
Symbol lambda();
Symbol eta();
Symbol write();
Symbol nl();
Symbol fail();
Symbol solve();
} // namespace sym

} // namespace lazylog

template <> struct std::hash<lazylog::Symbol> {
  std::size_t operator()(lazylog::Symbol s) const noexcept { return s.id(); }
};
