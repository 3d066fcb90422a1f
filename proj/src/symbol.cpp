#include "lazylog/symbol.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace lazylog {
namespace {

struct SymbolTable {
  std::mutex mutex;
  std::deque<std::string> names{std::string{}};
  std::unordered_map<std::string_view, std::uint32_t> index;

  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }
};

} // namespace

Symbol::Symbol(std::string_view text) {
  auto& table = SymbolTable::instance();
  std::lock_guard lock(table.mutex);
  if (auto it = table.index.find(text); it != table.index.end()) {
    id_ = it->second;
    return;
  }
  table.names.emplace_back(text);
  id_ = static_cast<std::uint32_t>(table.names.size() - 1);
  table.index.emplace(table.names.back(), id_);
}

std::string_view Symbol::str() const {
  auto& table = SymbolTable::instance();
  std::lock_guard lock(table.mutex);
  return table.names[id_];
}

namespace sym {
#define LAZYLOG_SYMBOL(fn, text)                                               \
  Symbol fn() {                                                                \
    static const Symbol s{text};                                               \
    return s;                                                                  \
  }
LAZYLOG_SYMBOL(nil, "[]")
LAZYLOG_SYMBOL(cons, ".")
LAZYLOG_SYMBOL(comma, ",")
LAZYLOG_SYMBOL(equals, "=")
LAZYLOG_SYMBOL(true_, "true")
LAZYLOG_SYMBOL(false_, "false")
LAZYLOG_SYMBOL(eq, "eq")
LAZYLOG_SYMBOL(apply, "apply")
LAZYLOG_SYMBOL(lambda, "lambda")
LAZYLOG_SYMBOL(eta, "eta")
LAZYLOG_SYMBOL(write, "write")
LAZYLOG_SYMBOL(nl, "nl")
LAZYLOG_SYMBOL(fail, "fail")
LAZYLOG_SYMBOL(solve, "solve")
#undef LAZYLOG_SYMBOL
} // namespace sym

} // namespace lazylog
