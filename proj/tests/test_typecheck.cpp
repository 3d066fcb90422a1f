#include <catch_amalgamated.hpp>

#include "lazylog/typecheck.hpp"
#include "support.hpp"

using namespace lazylog;
using testing_support::load_program;

namespace {

bool loads(const std::string& text, std::string* first_error = nullptr) {
  auto r = load_source(text);
  if (!r.ok() && first_error != nullptr)
    for (const auto& d : r.diagnostics)
      if (d.severity == Diagnostic::Severity::Error) {
        *first_error = d.to_string();
        break;
      }
  return r.ok();
}

const char* kList = "constructors list(A) => [], [A|list(A)].\n";

} // namespace

TEST_CASE("type unification") {
  auto a = ty_var(0, "A");
  auto s = unify_types(ty_app("list", {a}), ty_app("list", {ty_int()}));
  REQUIRE(s);
  CHECK(format_type(s->apply(a)) == "int");

  CHECK_FALSE(unify_types(ty_app("list", {a}), a));

  auto f1 = ty_fun({ty_int(), ty_int()}, ty_int());
  auto f2 = ty_fun({a, a}, a);
  auto s2 = unify_types(f1, f2);
  REQUIRE(s2);
  CHECK(format_type(s2->apply(a)) == "int");

  CHECK_FALSE(unify_types(ty_int(), ty_bool()));
}

TEST_CASE("the corpus type-checks") {
  for (const char* name : {"append.pl", "queens.pl", "wang.pl", "family.pl", "nat.pl",
                           "higher_order.pl", "fsys.pl"}) {
    INFO(name);
    CHECK_NOTHROW(load_program(name));
  }
}

TEST_CASE("clause type errors") {
  std::string err;
  CHECK_FALSE(loads(std::string(kList) +
                        "pred queens(int,list(int)).\n"
                        "queens(N,[Q|B]) :- queens(1,N).\n",
                    &err));
  CHECK(err.find("type") != std::string::npos);
  CHECK(err.find("list(int)") != std::string::npos);
}

TEST_CASE("rule type errors") {
  CHECK_FALSE(loads(std::string(kList) +
                    "function app(list(A),list(A)) =>> list(A).\n"
                    "app([],V) ->> 0.\n"));
  CHECK(loads(std::string(kList) +
              "function mem(A,list(A)) =>> bool.\n"
              "mem(X,[]) ->> false.\n"
              "mem(X,[Y|Ys]) ->> (X eq Y) or mem(X,Ys).\n"));
}

TEST_CASE("a clause may not be less general than its declaration") {
  CHECK_FALSE(loads(std::string(kList) + "pred p(list(A)).\np([1]).\n"));
  CHECK(loads(std::string(kList) + "pred p(list(int)).\np([1]).\n"));
}

TEST_CASE("declarations are mandatory") {
  std::string err;
  CHECK_FALSE(loads("p(1).\n", &err));
  CHECK(err.find("p/1") != std::string::npos);
  CHECK_FALSE(loads("function f(int) =>> int.\nf(X) ->> g(X).\n"));
}

TEST_CASE("eq is not defined on functions") {
  CHECK_FALSE(loads("function f(int) =>> int.\nf(X) ->> X.\n"
                    "pred p(bool).\np(B) :- B = (f eq f).\n"));
}

TEST_CASE("lambda and apply") {
  auto db = load_program("higher_order.pl");
  CHECK_NOTHROW(prepare_query(*db, "L = map(lambda([X], X*X), [1,2,3])"));
  CHECK_THROWS_AS(prepare_query(*db, "L = map(lambda([X], X*X), [true])"), TypeError);
  CHECK_THROWS_AS(prepare_query(*db, "N = apply(+, [1, true])"), TypeError);
}

TEST_CASE("query variable types") {
  auto db = load_program("append.pl");
  PreparedQuery q = prepare_query(*db, "app(U,V)=[1,2]");
  REQUIRE(q.var_types.size() == 2);
  CHECK(format_type(q.var_types[0]) == "list(int)");
}
