// One line per acceptance criterion: PASS/FAIL, wall time, and what was
// observed. Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "lazylog/narrow.hpp"
#include "lazylog/oracle.hpp"
#include "property_checks.hpp"

using namespace lazylog;
using testing_support::load_program;
using testing_support::load_text;

namespace {

struct Verdict {
  bool ok = false;
  std::string detail;
};

using Lines = std::vector<std::string>;

std::vector<Lines> lines_of(const std::vector<Answer>& as, const Database& db) {
  std::vector<Lines> out;
  for (const auto& a : as)
    out.push_back(a.lines(db.ops()));
  return out;
}

std::string join(const Lines& ls) {
  std::string s;
  for (const auto& l : ls)
    s += (s.empty() ? "" : " ") + l;
  return s;
}

Verdict append_inversion() {
  auto db = load_program("append.pl");
  SolveStatus status;
  auto as = lines_of(solve_all(db, "app(U,V)=[1,2]", 100, {}, &status), *db);
  std::vector<Lines> want = {{"U=[]", "V=[1,2]"}, {"U=[1]", "V=[2]"}, {"U=[1,2]", "V=[]"}};
  bool ok = as == want && status == SolveStatus::Exhausted;
  return {ok, std::to_string(as.size()) + " answers, then " +
                  (status == SolveStatus::Exhausted ? "no" : "not exhausted")};
}

Verdict eight_queens() {
  auto db = load_program("queens.pl");
  auto first = lines_of(solve_all(db, "queens(8,B)", 3), *db);
  std::vector<Lines> want = {{"B=[4,2,7,3,6,8,5,1]"}, {"B=[5,2,4,7,3,8,6,1]"},
                             {"B=[3,5,2,8,6,4,7,1]"}};
  SolveStatus status;
  auto all = lines_of(solve_all(db, "queens(8,B)", 1000, {}, &status), *db);
  std::set<Lines> distinct(all.begin(), all.end());
  bool ok = first == want && all.size() == 92 && distinct.size() == 92 &&
            status == SolveStatus::Exhausted;
  return {ok, "first three " + std::string(first == want ? "match" : "differ") + ", " +
                  std::to_string(distinct.size()) + " distinct boards of " +
                  std::to_string(all.size())};
}

Verdict wang_forward() {
  auto db = load_program("wang.pl");
  auto as = lines_of(
      solve_all(db, "proof([],[p & (q & r) --> (p & q) & r],T), N=sizeof(T)", 1), *db);
  const std::string tree = "T=node(impr,[node(andl,[node(andl,[node(andr,[node(andr,[node("
                           "basic(p),[]),node(basic(q),[])]),node(basic(r),[])])])])])";
  bool ok = as.size() == 1 && as[0] == Lines{tree, "N=8"};
  return {ok, as.empty() ? "no answer" : join(as[0])};
}

Verdict wang_inverted() {
  auto db = load_program("wang.pl");
  auto as = lines_of(solve_all(db, "5=sizeof(T), proof([],[B],T)", 4), *db);
  std::set<std::string> bs;
  for (const auto& a : as)
    bs.insert(a.at(1));
  bool ok = bs.contains("B=_1-->_1&(_2-->_2)") && bs.contains("B=_1&_2-->(_1&_2)&_1");
  std::string seen;
  for (const auto& a : as)
    seen += (seen.empty() ? "" : ", ") + a.at(1);
  return {ok, "first four: " + seen};
}

Verdict higher_order() {
  Narrower n(load_program("higher_order.pl"));
  auto m = n.normalize(n.term("map(lambda([X],X*X),[1,2,3])"));
  auto a = n.normalize(n.term("apply(+,[1,2])"));
  bool ok = m.size() == 1 && m[0].result == "[1,4,9]" && a.size() == 1 && a[0].result == "3";
  return {ok, "map = " + (m.empty() ? "?" : m[0].result) +
                  ", apply = " + (a.empty() ? "?" : a[0].result)};
}

Verdict integer_enumeration() {
  auto db = load_program("append.pl");
  auto as = solve_all(db, "15=X+Y", 20);
  std::set<std::pair<std::int64_t, std::int64_t>> pairs;
  bool sums = true;
  for (const auto& a : as) {
    Term* x = resolve(a.bindings.at(0).value);
    Term* y = resolve(a.bindings.at(1).value);
    if (!x->is_int() || !y->is_int() || x->value + y->value != 15) {
      sums = false;
      continue;
    }
    pairs.emplace(x->value, y->value);
  }
  bool ok = as.size() == 20 && pairs.size() == 20 && sums;
  return {ok, std::to_string(pairs.size()) + " distinct pairs summing to 15 of " +
                  std::to_string(as.size()) + " answers"};
}

Verdict outer_narrowing() {
  auto db = load_program("fsys.pl");
  auto a = lines_of(solve_all(db, "f(f(X,Y),Z)=a", 1), *db);
  auto b = lines_of(solve_all(db, "f(f(X,Y),Z)=b", 1), *db);
  bool ok = !a.empty() && !b.empty();
  return {ok, std::string("=a: ") + (a.empty() ? "fails" : join(a[0])) +
                  "; =b: " + (b.empty() ? "fails" : join(b[0]))};
}

Verdict semantic_occurs() {
  auto db = load_program("append.pl");
  auto a = lines_of(solve_all(db, "X=0+X", 1), *db);
  SolveStatus status;
  auto b = solve_all(db, "X=[1|X]", 1, {}, &status);
  bool ok = !a.empty() && b.empty() && status == SolveStatus::Exhausted;
  return {ok, std::string("X=0+X: ") + (a.empty() ? "fails" : join(a[0])) +
                  "; X=[1|X]: " + (b.empty() ? "fails" : "succeeds")};
}

Verdict oracle_equivalence() {
  auto family = load_program("family.pl");
  AtomSet fam = lfp(ground_instances(*family, OracleConfig{}));
  bool facts = fam.contains("cousin(henry,beatrice)") && !fam.contains("cousin(elizabeth,asterix)");

  auto bad = load_program("nat_bad.pl");
  bool empty = true;
  for (std::uint32_t d = 0; d <= 4; ++d) {
    OracleConfig cfg;
    cfg.depth = d;
    empty = empty && lfp(ground_instances(*bad, cfg)).empty();
  }

  auto agree = property_checks::solver_agrees_with_lfp({"family.pl", "nat.pl", "nat_bad.pl"});

  auto nat = load_program("nat.pl");
  OracleConfig cfg;
  cfg.depth = 5;
  auto closed = property_checks::lfp_is_least_closed(40, {ground_instances(*nat, cfg)});

  bool ok = facts && empty && agree.ok && closed.ok;
  std::string detail = std::string("family facts ") + (facts ? "ok" : "wrong") +
                       ", nat_bad lfp " + (empty ? "empty" : "non-empty") + ", solver/lfp " +
                       std::to_string(agree.cases) + " atoms " + (agree.ok ? "agree" : agree.detail) +
                       ", closed sets " + std::to_string(closed.cases) + " universes " +
                       (closed.ok ? "agree" : closed.detail);
  return {ok, detail};
}

Verdict property_suites() {
  auto trail = property_checks::trail_round_trip(10000);
  auto typed = property_checks::answers_normal_and_typed();
  auto dups = property_checks::no_duplicates();
  auto mono = property_checks::depth_monotonic();
  auto exh = property_checks::exhaustive_vs_bruteforce(50);
  bool ok = trail.ok && typed.ok && dups.ok && mono.ok && exh.ok;
  auto part = [](const char* name, const property_checks::Outcome& o) {
    return std::string(name) + " " + (o.ok ? "ok" : "FAILED (" + o.detail + ")") + " [" +
           std::to_string(o.cases) + "]";
  };
  return {ok, part("trail", trail) + ", " + part("normal+typed", typed) + ", " +
                  part("no-dups", dups) + ", " + part("monotone", mono) + ", " +
                  part("exhaustive", exh)};
}

Verdict static_checks() {
  std::string detail;
  bool ok = true;
  for (const char* name : {"append.pl", "queens.pl", "wang.pl"}) {
    auto r = load_files({testing_support::program_path(name)});
    bool clean = r.ok() && r.diagnostics.empty();
    ok = ok && clean;
    detail += std::string(name) + (clean ? " clean" : " NOT clean") + ", ";
  }
  const char* ab = "constructors ab => a, b.\n";
  struct Case {
    const char* check;
    std::string text;
  };
  const Case cases[] = {
      {"constructor_discipline", std::string(ab) + "function g(ab) =>> ab.\nfunction f(ab) =>> ab.\n"
                                                   "g(X) ->> X.\nf(g(X)) ->> X.\n"},
      {"left_linearity", std::string(ab) + "function g(ab,ab) =>> ab.\ng(X,X) ->> X.\n"},
      {"term_rewriting", std::string(ab) + "function h(ab) =>> ab.\nh(X) ->> Y.\n"},
      {"non_overlapping", std::string(ab) + "function g(ab) =>> ab.\ng(X) ->> a.\ng(a) ->> b.\n"},
  };
  for (const auto& c : cases) {
    auto r = load_source(c.text);
    bool exact = r.ok() && r.diagnostics.size() == 1 && r.diagnostics[0].check == c.check;
    ok = ok && exact;
    detail += std::string(c.check) + (exact ? " alone" : " WRONG") + ", ";
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

struct Criterion {
  int number;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> run;
};

} // namespace

int main() {
  const Criterion criteria[] = {
      {1, "append inversion", 1.0, append_inversion},
      {2, "eight queens", 60.0, eight_queens},
      {3, "proof size N=8", 30.0, wang_forward},
      {4, "theorems of proof size 5", 60.0, wang_inverted},
      {5, "higher-order functions", 0, higher_order},
      {6, "15=X+Y enumeration", 0, integer_enumeration},
      {7, "outer narrowing completeness", 0, outer_narrowing},
      {8, "semantic occurs check", 0, semantic_occurs},
      {9, "oracle equivalence", 10.0, oracle_equivalence},
      {10, "property suites", 0, property_suites},
      {11, "static checks", 0, static_checks},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.budget_seconds == 0 || secs < c.budget_seconds;
    bool pass = v.ok && in_time;
    failures += !pass;
    char timing[64];
    if (c.budget_seconds > 0)
      std::snprintf(timing, sizeof timing, "%.2fs, limit %.0fs", secs, c.budget_seconds);
    else
      std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (pass ? "PASS" : "FAIL") << "  " << c.number << ". " << c.name << " ("
              << timing << "): " << v.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " failing")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
