#include <catch_amalgamated.hpp>

#include <random>

#include "lazylog/oracle.hpp"
#include "support.hpp"

using namespace lazylog;
using testing_support::load_program;
using testing_support::load_text;

namespace {

GroundRule rule(std::string concl, std::initializer_list<std::string> premises = {}) {
  return GroundRule{AtomSet(premises.begin(), premises.end()), std::move(concl)};
}

} // namespace

TEST_CASE("family instances") {
  auto db = load_program("family.pl");
  std::vector<std::string> warnings;
  GroundRuleSet rs = ground_instances(*db, OracleConfig{}, &warnings);
  CHECK(warnings.empty());
  // 5 facts; grandparent has 3 variables and cousin 3, over 7 constants.
  CHECK(rs.rules.size() == 5 + 7 * 7 * 7 + 7 * 7 * 7);

  AtomSet facts = phi_step(rs, {});
  CHECK(facts == AtomSet{"parent(andrew,beatrice)", "parent(charles,henry)",
                         "parent(charles,william)", "parent(elizabeth,andrew)",
                         "parent(elizabeth,charles)"});

  AtomSet fix = lfp(rs);
  CHECK(fix.contains("cousin(henry,beatrice)"));
  CHECK(fix.contains("grandparent(elizabeth,william)"));
  CHECK_FALSE(fix.contains("cousin(elizabeth,asterix)"));
  CHECK(is_closed(rs, fix));
}

TEST_CASE("nat instances") {
  auto db = load_program("nat.pl");
  OracleConfig cfg;
  cfg.depth = 3;
  GroundRuleSet rs = ground_instances(*db, cfg);
  std::set<GroundRule> got(rs.rules.begin(), rs.rules.end());
  CHECK(got.contains(rule("nat(zero)")));
  CHECK(got.contains(rule("nat(s(zero))", {"nat(zero)"})));
  CHECK(got.contains(rule("nat(s(s(zero)))", {"nat(s(zero))"})));
  CHECK(rs.rules.size() == 1 + 4);
  CHECK(lfp(rs).size() == 5);
}

TEST_CASE("the pathological nat program defines the empty set") {
  auto db = load_program("nat_bad.pl");
  for (std::uint32_t d = 0; d <= 4; ++d) {
    OracleConfig cfg;
    cfg.depth = d;
    GroundRuleSet rs = ground_instances(*db, cfg);
    CHECK_FALSE(rs.rules.empty());
    CHECK(lfp(rs).empty());
  }
}

TEST_CASE("functions in clauses are evaluated per instance") {
  auto db = load_text("function f(int) =>> int.\nf(0) ->> 1.\n"
                      "pred q(int).\npred p(int).\n"
                      "p(f(X)) :- q(X).\nq(0).\n");
  OracleConfig cfg;
  cfg.int_range = 1;
  std::vector<std::string> warnings;
  GroundRuleSet rs = ground_instances(*db, cfg, &warnings);
  std::set<GroundRule> got(rs.rules.begin(), rs.rules.end());
  CHECK(got.contains(rule("p(1)", {"q(0)"})));
  // f(1) and f(-1) have no rule: those instances are dropped.
  CHECK(got.size() == 2);
  CHECK(lfp(rs) == AtomSet{"p(1)", "q(0)"});
}

TEST_CASE("equations in bodies are decided per instance") {
  auto db = load_text("pred p(int,int).\np(X,Y) :- Y = X*X.\n");
  OracleConfig cfg;
  cfg.int_range = 2;
  AtomSet fix = lfp(ground_instances(*db, cfg));
  CHECK(fix == AtomSet{"p(-1,1)", "p(0,0)", "p(1,1)"});
}

TEST_CASE("trivial rule sets") {
  GroundRuleSet empty;
  CHECK(lfp(empty).empty());
  CHECK(phi_step(empty, {"a"}).empty());
  GroundRuleSet rs{{rule("a"), rule("b", {"a"}), rule("c", {"d"})}};
  CHECK(phi_step(rs, rs.universe()) == AtomSet{"a", "b", "c"});
  CHECK(lfp(rs) == AtomSet{"a", "b"});
}

TEST_CASE("eta clauses are outside the fragment") {
  auto db = load_text("pred p(int).\np(eta(X, X = 1)).\n");
  std::vector<std::string> warnings;
  GroundRuleSet rs = ground_instances(*db, OracleConfig{}, &warnings);
  CHECK(rs.rules.empty());
  CHECK(warnings.size() == 1);
}

