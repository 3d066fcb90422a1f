#include <catch_amalgamated.hpp>

#include "property_checks.hpp"

using namespace lazylog;
using namespace property_checks;
using testing_support::load_program;

TEST_CASE("trail round trip") {
  auto r = trail_round_trip(10000);
  INFO(r.detail);
  CHECK(r.ok);
  CHECK(r.cases == 10000);
}

TEST_CASE("resolve is idempotent") {
  std::mt19937 rng(99);
  Arena arena;
  BindingState bs;
  for (int round = 0; round < 1000; ++round) {
    std::vector<Term*> chain;
    int n = std::uniform_int_distribution<int>(1, 10)(rng);
    for (int i = 0; i < n; ++i)
      chain.push_back(make_var(arena, static_cast<std::uint64_t>(i + 1)));
    for (int i = 0; i + 1 < n; ++i)
      bs.bind(chain[static_cast<std::size_t>(i)], chain[static_cast<std::size_t>(i + 1)]);
    if (rng() % 2)
      bs.bind(chain.back(), make_int(arena, round));
    Term* r = resolve(chain.front());
    CHECK(resolve(r) == r);
    bs.undo_to(0);
  }
}

TEST_CASE("overlap detection is symmetric") {
  std::mt19937 rng(3);
  const char* pats[] = {"X", "a", "b", "s(X)", "s(a)", "s(s(Y))", "Y"};
  for (int round = 0; round < 200; ++round) {
    std::string text = "constructors t => a, b, s(t).\nfunction g(t,t) =>> t.\n";
    for (int r = 0; r < 2; ++r) {
      std::string p1 = pats[rng() % 7], p2 = pats[rng() % 7];
      // Keep each left side linear.
      if ((p1.find('X') != std::string::npos && p2.find('X') != std::string::npos) ||
          (p1.find('Y') != std::string::npos && p2.find('Y') != std::string::npos))
        p2 = "Z";
      text += "g(" + p1 + "," + p2 + ") ->> a.\n";
    }
    auto res = load_source(text);
    REQUIRE(res.ok());
    const FunDef* g = res.db->fun(Symbol("g"), 2);
    CHECK(lhs_unifiable(g->rules[0], g->rules[1]) == lhs_unifiable(g->rules[1], g->rules[0]));
  }
}

TEST_CASE("exhaustiveness agrees with ground enumeration") {
  std::size_t exhaustive = 0;
  auto r = exhaustive_vs_bruteforce(50, 2024, &exhaustive);
  INFO(r.detail);
  CHECK(r.ok);
  CHECK(r.cases == 50);
  CHECK(exhaustive > 0);
  CHECK(exhaustive < 50);
}

TEST_CASE("no duplicate answers on finite search spaces") {
  auto r = no_duplicates();
  INFO(r.detail);
  CHECK(r.ok);
}

TEST_CASE("answer sets grow with the depth limit") {
  auto r = depth_monotonic();
  INFO(r.detail);
  CHECK(r.ok);
  CHECK(r.cases == 9);
}

TEST_CASE("answers contain no functions and respect the query types") {
  auto r = answers_normal_and_typed();
  INFO(r.detail);
  CHECK(r.ok);
}

TEST_CASE("append completeness against enumeration of splits") {
  auto db = load_program("append.pl");
  std::mt19937 rng(5);
  for (int n = 0; n <= 4; ++n) {
    std::vector<int> xs;
    for (int i = 0; i < n; ++i)
      xs.push_back(static_cast<int>(rng() % 3));
    auto list = [&](std::size_t from, std::size_t to) {
      std::string s = "[";
      for (std::size_t i = from; i < to; ++i)
        s += (i > from ? "," : "") + std::to_string(xs[i]);
      return s + "]";
    };
    // Every (U,V) whose concatenation is the list is one of the n+1 splits.
    std::set<std::vector<std::string>> expected;
    for (std::size_t k = 0; k <= xs.size(); ++k)
      expected.insert({"U=" + list(0, k), "V=" + list(k, xs.size())});
    CHECK(answer_set(db, "app(U,V)=" + list(0, xs.size()), {}) == expected);
  }
}

TEST_CASE("solver success agrees with the least fixed point") {
  auto r = solver_agrees_with_lfp({"family.pl", "nat.pl", "nat_bad.pl"});
  INFO(r.detail);
  CHECK(r.ok);
  CHECK(r.cases > 0);
}

TEST_CASE("the fixed point is the least closed set") {
  auto nat = load_program("nat.pl");
  OracleConfig cfg;
  cfg.depth = 5;
  auto r = lfp_is_least_closed(40, {ground_instances(*nat, cfg)});
  INFO(r.detail);
  CHECK(r.ok);
  CHECK(r.cases == 41);
}
