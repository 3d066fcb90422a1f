#include <catch_amalgamated.hpp>

#include "lazylog/narrow.hpp"
#include "support.hpp"

using namespace lazylog;
using testing_support::load_program;

namespace {

using Bindings = std::map<std::string, std::string>;

std::vector<Bindings> bindings_of(const std::vector<NarrowResult>& rs) {
  std::vector<Bindings> out;
  for (const auto& r : rs)
    out.push_back(r.bindings);
  return out;
}

// Independent evaluator for the two-rule system f(W,a)->>a, f(a,b)->>b over
// {a,b}: returns 0 when no rule applies.
char eval_f(char x, char y) {
  if (y == 'a')
    return 'a';
  if (x == 'a' && y == 'b')
    return 'b';
  return 0;
}

} // namespace

TEST_CASE("unifying app(U,V) with [1,2] yields the three splits in order") {
  Narrower n(load_program("append.pl"));
  auto rs = n.unify(n.term("app(U,V)"), n.term("[1,2]"));
  CHECK(bindings_of(rs) == std::vector<Bindings>{{{"U", "[]"}, {"V", "[1,2]"}},
                                                 {{"U", "[1]"}, {"V", "[2]"}},
                                                 {{"U", "[1,2]"}, {"V", "[]"}}});
}

TEST_CASE("a variable unifies with itself without bindings") {
  Narrower n(load_program("append.pl"));
  auto rs = n.unify(n.term("X"), n.term("X"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].bindings.at("X") == "_1");
  CHECK(rs[0].depth == 0);
}

TEST_CASE("semantic matching reaches the second rule through the inner application") {
  auto db = load_program("fsys.pl");
  Narrower n(db);
  auto rs = n.unify(n.term("f(f(X,Y),Z)"), n.term("b"));

  // Ground solutions by brute force over {a,b}^3.
  std::set<std::string> brute;
  for (char x : {'a', 'b'})
    for (char y : {'a', 'b'})
      for (char z : {'a', 'b'}) {
        char inner = eval_f(x, y);
        if (inner != 0 && eval_f(inner, z) == 'b')
          brute.insert(std::string{x, y, z});
      }
  // Instances of the narrowing answers.
  std::set<std::string> covered;
  for (const auto& r : rs)
    for (char x : {'a', 'b'})
      for (char y : {'a', 'b'})
        for (char z : {'a', 'b'}) {
          auto fits = [](const std::string& v, char c) { return v[0] == '_' || v[0] == c; };
          if (fits(r.bindings.at("X"), x) && fits(r.bindings.at("Y"), y) &&
              fits(r.bindings.at("Z"), z))
            covered.insert(std::string{x, y, z});
        }
  CHECK_FALSE(rs.empty());
  CHECK(covered == brute);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].bindings.at("Y") == "a");
  CHECK(rs[0].bindings.at("Z") == "b");
}

TEST_CASE("outermost narrowing with semantic matching reaches both results") {
  Narrower n(load_program("fsys.pl"));
  std::set<std::string> results;
  for (const auto& r : n.normalize(n.term("f(f(X,Y),Z)")))
    results.insert(r.result);
  CHECK(results == std::set<std::string>{"a", "b"});
}

TEST_CASE("integer sums enumerate without end") {
  NarrowConfig cfg;
  cfg.max_results = 25;
  Narrower n(load_program("append.pl"), cfg);
  auto rs = n.unify(n.term("15"), n.term("X+Y"));
  REQUIRE(rs.size() == 25);
  std::set<std::pair<long, long>> seen;
  for (const auto& r : rs) {
    long x = std::stol(r.bindings.at("X"));
    long y = std::stol(r.bindings.at("Y"));
    CHECK(x + y == 15);
    seen.emplace(x, y);
  }
  CHECK(seen.size() == rs.size());
}

TEST_CASE("a narrowing step on app([],[1,2]) commits to its only rule") {
  Narrower n(load_program("append.pl"));
  auto rs = n.narrow_step(n.term("app([],[1,2])"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].result == "[1,2]");
  CHECK(rs[0].depth == 1);
}

TEST_CASE("a narrowing step on app(U,V) tries both rules") {
  Narrower n(load_program("append.pl"));
  auto rs = n.narrow_step(n.term("app(U,V)"));
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].bindings.at("U") == "[]");
  CHECK(rs[0].result == rs[0].bindings.at("V"));
  CHECK(rs[1].bindings.at("U") == "[_1|_2]");
  CHECK(rs[1].bindings.at("V") == "_3");
  CHECK(rs[1].result == "[_1|app(_2,_3)]");
}

TEST_CASE("builtin arithmetic steps") {
  Narrower n(load_program("append.pl"));
  auto rs = n.narrow_step(n.term("0+1"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].result == "1");
  CHECK(n.normalize(n.term("abs(-3)")).at(0).result == "3");
  CHECK(n.normalize(n.term("3 > 2")).at(0).result == "true");
  CHECK(n.normalize(n.term("2 > 3")).at(0).result == "false");
  CHECK(n.normalize(n.term("-7 div 2")).at(0).result == "-4");
  CHECK(n.normalize(n.term("-7 mod 2")).at(0).result == "1");
  CHECK_THROWS_AS(n.normalize(n.term("1 div 0")), RuntimeError);
}

TEST_CASE("extended occurs check") {
  Narrower n(load_program("append.pl"));
  CHECK_FALSE(n.extended_occurs(n.term("X"), n.term("[X|T]")));

  auto r = n.extended_occurs(n.term("X"), n.term("0+X"));
  REQUIRE(r);
  CHECK(r->copy == "_1");
  REQUIRE(r->pairs.size() == 1);
  CHECK(r->pairs[0] == std::pair<std::string, std::string>{"_1", "0+_2"});

  auto plain = n.extended_occurs(n.term("X"), n.term("[1,2]"));
  REQUIRE(plain);
  CHECK(plain->copy == "[1,2]");
  CHECK(plain->pairs.empty());
}

TEST_CASE("X = 0+X succeeds semantically") {
  NarrowConfig cfg;
  cfg.max_results = 3;
  cfg.depth_limit = 20;
  Narrower n(load_program("append.pl"), cfg);
  auto rs = n.unify(n.term("X"), n.term("0+X"));
  // Observed solved forms: every integer, in enumeration order.
  CHECK(bindings_of(rs) == std::vector<Bindings>{{{"X", "0"}}, {{"X", "1"}}, {{"X", "-1"}}});
  CHECK(n.unify(n.term("Y"), n.term("[1|Y]")).empty());
}

TEST_CASE("normalization") {
  Narrower h(load_program("higher_order.pl"));
  auto rs = h.normalize(h.term("map(lambda([X], X*X), [1,2,3])"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].result == "[1,4,9]");
  CHECK(h.normalize(h.term("[1,2]")).at(0).result == "[1,2]");

  Narrower w(load_program("wang.pl"));
  // size = 1 + sum of the children's sizes; a leaf has no children.
  auto leaf = w.normalize(w.term("sizeof(node(basic(p),[]))"));
  REQUIRE(leaf.size() == 1);
  CHECK(leaf[0].result == std::to_string(1 + 0));
}

TEST_CASE("unification is lazy") {
  auto db = load_program("append.pl");
  Machine m(*db);
  Narrower n(db);
  Term* x = m.fresh_var(Symbol("X"));
  std::vector<Term*> fresh;
  Term* app = instantiate(m.arena(), n.term("app([1],[2])"), fresh, m.vars());
  REQUIRE(m.start(m.goal(GoalKind::Unify, x, app, m.goal(GoalKind::Yield))));
  CHECK(resolve(x) == app);
  CHECK(app->ref == nullptr);
  CHECK(m.stats().rewrites == 0);
  m.reset();
}

TEST_CASE("memo slots are single-assignment and undone on backtracking") {
  auto db = load_program("append.pl");
  Machine m(*db);
  Narrower n(db);
  std::vector<Term*> fresh;
  Term* app = instantiate(m.arena(), n.term("app([1],[2])"), fresh, m.vars());
  REQUIRE(m.start(m.goal(GoalKind::Force, app, nullptr, m.goal(GoalKind::Yield))));
  Term* first = app->ref;
  REQUIRE(first != nullptr);
  CHECK(resolve(app) == resolve(first));
  m.reset();
  CHECK(app->ref == nullptr);
}

TEST_CASE("eq") {
  Narrower q(load_program("queens.pl"));
  auto rs = q.unify(q.term("X eq [1]"), q.term("B"));
  REQUIRE(rs.size() >= 2);
  CHECK(rs[0].bindings == Bindings{{"X", "[1]"}, {"B", "true"}});
  CHECK(rs[1].bindings.at("B") == "false");

  CHECK(q.normalize(q.term("[] eq [A|As]")).at(0).result == "false");
  CHECK(q.normalize(q.term("1 eq 1")).at(0).result == "true");

  // mem(2,[1,3]) = (2 eq 1) or ((2 eq 3) or false) = false or (false or false)
  bool by_hand = (2 == 1) || ((2 == 3) || false);
  auto mem = q.normalize(q.term("mem(2,[1,3])"));
  REQUIRE(mem.size() == 1);
  CHECK(mem[0].result == (by_hand ? "true" : "false"));
}

TEST_CASE("eq enumerates differing constructors for variables") {
  NarrowConfig cfg;
  cfg.depth_limit = 8;
  cfg.max_results = 3;
  Narrower w(load_program("wang.pl"), cfg);
  std::vector<std::string> pairs;
  // The second disjunct pins X (and so Y) to type form.
  for (const auto& r : w.unify(w.term("(X eq Y) or (X eq p)"), w.term("false"))) {
    pairs.push_back(r.bindings.at("X") + "/" + r.bindings.at("Y"));
    if (pairs.size() == 3)
      break;
  }
  // Distinct principal constructors of `form`, declaration order.
  CHECK(pairs.at(0) == "_1&_2/_3\\/_4");
  CHECK(pairs.at(1) == "_1&_2/~_3");
}

TEST_CASE("eta descriptions") {
  auto db = load_program("append.pl");
  Narrower n(db);
  auto rs = n.normalize(n.term("eta(X, app(X,[2])=[1,2])"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].result == "[1]");

  auto any = n.normalize(n.term("eta(Y, true)"));
  REQUIRE(any.size() == 1);
  // The value is the description's own, still unbound, variable.
  CHECK(any[0].result[0] == '_');
  CHECK(any[0].result != any[0].bindings.at("Y"));

  CHECK(n.normalize(n.term("eta(Z, fail)")).empty());
}

TEST_CASE("apply") {
  Narrower h(load_program("higher_order.pl"));
  CHECK(h.normalize(h.term("apply(lambda([X], X*X), [3])")).at(0).result == "9");
  CHECK(h.normalize(h.term("apply(+, [1,2])")).at(0).result == "3");
  CHECK(h.normalize(h.term("apply(square, [5])")).at(0).result == "25");
  CHECK_THROWS_AS(h.normalize(h.term("apply(F, [1]) + 0")), RuntimeError);
}
