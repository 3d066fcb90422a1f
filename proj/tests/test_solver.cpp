#include <catch_amalgamated.hpp>

#include <sstream>

#include "support.hpp"

using namespace lazylog;
using testing_support::answers;
using testing_support::load_program;
using testing_support::load_text;

using Lines = std::vector<std::string>;

TEST_CASE("append inversion, in session order") {
  SolveStatus status;
  auto as = answers(load_program("append.pl"), "solve(app(U,V)=[1,2]).", 10, {}, &status);
  CHECK(as == std::vector<Lines>{{"U=[]", "V=[1,2]"}, {"U=[1]", "V=[2]"}, {"U=[1,2]", "V=[]"}});
  CHECK(status == SolveStatus::Exhausted);
}

TEST_CASE("eight queens, first three boards") {
  auto as = answers(load_program("queens.pl"), "queens(8,B)", 3);
  CHECK(as == std::vector<Lines>{{"B=[4,2,7,3,6,8,5,1]"},
                                 {"B=[5,2,4,7,3,8,6,1]"},
                                 {"B=[3,5,2,8,6,4,7,1]"}});
}

TEST_CASE("proof size") {
  auto as = answers(load_program("wang.pl"),
                    "solve((proof([], [p & (q & r) --> (p & q) & r], T), N=sizeof(T))).", 1);
  REQUIRE(as.size() == 1);
  CHECK(as[0][0] == "T=node(impr,[node(andl,[node(andl,[node(andr,[node(andr,[node(basic(p),[]),"
                    "node(basic(q),[])]),node(basic(r),[])])])])])");
  CHECK(as[0][1] == "N=8");
}

TEST_CASE("theorems with proofs of size five") {
  auto as = answers(load_program("wang.pl"), "solve((5=sizeof(T), proof([], [B], T))).", 4);
  REQUIRE(as.size() == 4);
  std::set<std::string> bs;
  for (const auto& a : as)
    bs.insert(a[1]);
  CHECK(bs.contains("B=_1-->_1&(_2-->_2)"));
  CHECK(bs.contains("B=_1&_2-->(_1&_2)&_1"));
}

TEST_CASE("failure and trivial success") {
  auto db = load_program("append.pl");
  SolveStatus status;
  CHECK(answers(db, "fail", 5, {}, &status).empty());
  CHECK(status == SolveStatus::Exhausted);
  auto t = solve_all(db, "true", 5);
  REQUIRE(t.size() == 1);
  CHECK(t[0].bindings.empty());
  CHECK(t[0].found_depth == 0);
  CHECK(answers(db, "(app(U,V)=[1,2], fail)", 5).empty());
}

TEST_CASE("unbound variables share names across bindings") {
  auto as = answers(load_program("append.pl"), "X = Y, Z = [Y]", 1);
  REQUIRE(as.size() == 1);
  CHECK(as[0] == Lines{"X=_1", "Y=_1", "Z=[_1]"});
}

TEST_CASE("the depth limit is reported apart from failure") {
  SearchConfig cfg;
  cfg.max_depth = 20;
  SolveStatus status;
  CHECK(answers(load_program("nat_bad.pl"), "nat(zero)", 5, cfg, &status).empty());
  CHECK(status == SolveStatus::DepthLimit);
}

TEST_CASE("write repeats under iterative deepening") {
  auto db = load_program("nat.pl");
  std::ostringstream out;
  PreparedQuery q = prepare_query(*db, "write(zero), nl, nat(s(s(s(s(s(s(zero)))))))");
  SearchConfig cfg;
  cfg.depth_init = 3;
  cfg.depth_step = 3;
  Solver s(db, std::move(q), cfg, &out);
  auto a = s.next();
  REQUIRE(a);
  // Seven clause steps are needed: limits 3 and 6 fail, 9 succeeds.
  CHECK(out.str() == "zero\nzero\nzero\n");
}

TEST_CASE("functions evaluated inside clause bodies") {
  auto db = load_program("nat.pl");
  auto as = answers(db, "X = plus(s(zero), s(zero))", 5);
  CHECK(as == std::vector<Lines>{{"X=s(s(zero))"}});
  auto inv = answers(db, "plus(X, Y) = s(zero)", 5);
  CHECK(inv == std::vector<Lines>{{"X=zero", "Y=s(zero)"}, {"X=s(zero)", "Y=zero"}});
}

TEST_CASE("comparisons and booleans") {
  auto db = load_program("append.pl");
  CHECK(answers(db, "B = (3 > 2)", 2) == std::vector<Lines>{{"B=true"}});
  CHECK(answers(db, "B = (2 >= 3) or (1 =< 1)", 2) == std::vector<Lines>{{"B=true"}});
  CHECK(answers(db, "(X > 0) = true, (X < 3) = true", 2) == std::vector<Lines>{{"X=1"}, {"X=2"}});
}

TEST_CASE("answers are found under iterative deepening in depth order") {
  auto as = solve_all(load_program("append.pl"), "app(U,V)=[1,2]", 10);
  REQUIRE(as.size() == 3);
  for (std::size_t i = 1; i < as.size(); ++i)
    CHECK(as[i - 1].found_depth <= as[i].found_depth);
}

TEST_CASE("runtime errors propagate") {
  auto db = load_program("higher_order.pl");
  CHECK_THROWS_AS(solve_all(db, "N = apply(F, [1])", 1), RuntimeError);
  CHECK_THROWS_AS(solve_all(db, "N = 1 div 0", 1), RuntimeError);
}
