#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "lazylog/term.hpp"

namespace lazylog {

/// Backtrackable substitution plus depth accounting for one solver run.
///
/// Bindings live in the variable nodes themselves (and memo values in the
/// application nodes); the trail records every written slot so a checkpoint
/// can be restored exactly.
class BindingState {
public:
  using Checkpoint = std::size_t;

  void bind(Term* var, Term* value) {
    assert(var->is_var() && var->ref == nullptr);
    var->ref = value;
    trail_.push_back(var);
  }

  /// Fill the call-by-need slot of an application. Single assignment.
  void set_memo(Term* app, Term* value) {
    assert(app->is_reducible() && app->ref == nullptr);
    app->ref = value;
    trail_.push_back(app);
  }

  Checkpoint checkpoint() const { return trail_.size(); }

  void undo_to(Checkpoint mark) {
    while (trail_.size() > mark) {
      trail_.back()->ref = nullptr;
      trail_.pop_back();
    }
  }

  /// Entries written since `mark`, oldest first.
  std::span<Term* const> written_since(Checkpoint mark) const {
    return {trail_.data() + mark, trail_.size() - mark};
  }

  std::uint32_t depth_used = 0;
  std::uint32_t depth_limit = UINT32_MAX;
  bool limit_hit = false;

  /// Spend `cost` depth units; false (and limit_hit set) if over the limit.
  bool charge(std::uint32_t cost) {
    if (depth_limit - depth_used < cost) {
      limit_hit = true;
      return false;
    }
    depth_used += cost;
    return true;
  }

  std::size_t trail_size() const { return trail_.size(); }

private:
  std::vector<Term*> trail_;
};

} // namespace lazylog
