#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "lazylog/database.hpp"

namespace lazylog {

/// Ground atoms are kept in printed form; printing is canonical for ground
/// constructor terms, so string equality is term equality.
using Atom = std::string;
using AtomSet = std::set<Atom>;

/// p <- P with everything ground.
struct GroundRule {
  AtomSet premises;
  Atom conclusion;
  friend bool operator<(const GroundRule& a, const GroundRule& b) {
    return a.conclusion != b.conclusion ? a.conclusion < b.conclusion : a.premises < b.premises;
  }
  friend bool operator==(const GroundRule&, const GroundRule&) = default;
};

struct GroundRuleSet {
  std::vector<GroundRule> rules;
  /// Every atom occurring as a premise or conclusion.
  AtomSet universe() const;
};

struct OracleConfig {
  std::uint32_t depth = 3;     ///< constructor nesting of substituted terms
  std::int64_t int_range = 3;  ///< integers substituted from [-r, r]
  std::uint64_t max_rewrites = 100000;
  std::size_t max_instances = 1000000; ///< per clause
};

/// Ground instances of every clause, with function applications replaced by
/// their normal forms. Satisfied `=`, `true`, `write` and `nl` goals are
/// removed; instances with an unsatisfied `=` or `fail` goal, or whose
/// functions do not evaluate, are dropped. Clauses outside the fragment
/// (eta terms, variables of function or unconstrained polymorphic type)
/// are skipped. Reasons go to `warnings`.
GroundRuleSet ground_instances(const Database& db, const OracleConfig& config,
                               std::vector<std::string>* warnings = nullptr);

/// phi(Y) = { p | p <- P in rs, P subset of Y }.
AtomSet phi_step(const GroundRuleSet& rs, const AtomSet& y);

/// Least fixed point by iterating phi from the empty set.
AtomSet lfp(const GroundRuleSet& rs);

/// Is y closed under rs (phi(y) subset of y)?
bool is_closed(const GroundRuleSet& rs, const AtomSet& y);

/// Intersection of all closed subsets of the universe, by enumerating every
/// subset. Only for small universes (throws std::invalid_argument above 20).
AtomSet closed_intersection(const GroundRuleSet& rs);

} // namespace lazylog
