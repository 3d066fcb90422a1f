#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "support.hpp"

namespace {

struct Run {
  std::string out;
  int status = -1;
};

Run run(const std::string& args, const std::string& input = "") {
  std::string cmd = std::string(LAZYLOG_CLI) + " " + args + " 2>/dev/null";
  if (!input.empty())
    cmd = "printf '%s' '" + input + "' | " + cmd;
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
    r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string prog(const char* name) { return testing_support::program_path(name); }

/// Layout-insensitive comparison: the stored transcripts keep the
/// indentation and line breaks of the original sessions.
std::string tokens(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '\n' && c != '\t')
      out += c;
  return out;
}

std::string golden(const char* name) {
  return testing_support::read_file(std::string(LAZYLOG_GOLDEN_DIR) + "/" + name);
}

} // namespace

TEST_CASE("batch transcripts") {
  auto a = run("batch " + prog("append.pl") + " -q 'app(U,V)=[1,2]' --answers 10");
  CHECK(a.out == golden("append.out"));
  CHECK(a.status == 0);

  auto q = run("batch " + prog("queens.pl") + " -q 'solve(queens(8,B)).' --answers 3");
  CHECK(tokens(q.out) == tokens(golden("queens.out")));
  CHECK(q.status == 0);

  auto w = run("batch " + prog("wang.pl") +
               " -q 'proof([],[p & (q & r) --> (p & q) & r],T), N=sizeof(T)' --answers 1");
  CHECK(tokens(w.out) == tokens(golden("wang_size.out")));
  CHECK(w.status == 0);
}

TEST_CASE("exit codes") {
  auto none = run("batch " + prog("append.pl") + " -q 'app(U,V)=[1,2], fail' --answers 10");
  CHECK(none.out == "no\n");
  CHECK(none.status == 1);
  auto bad = run("batch " + prog("append.pl") + " -q 'app(U,V)=' --answers 10");
  CHECK(bad.status == 2);
  auto err = run("batch " + prog("higher_order.pl") + " -q 'N = apply(F,[1])'");
  CHECK(err.status == 2);
  auto yes = run("batch " + prog("append.pl") + " -q 'true'");
  CHECK(yes.out == "yes\n");
  CHECK(yes.status == 0);
  auto cap = run("batch " + prog("nat_bad.pl") + " -q 'nat(zero)' --max-depth 15");
  CHECK(cap.out == "incomplete: depth limit reached\n");
  CHECK(cap.status == 1);
}

TEST_CASE("interactive session") {
  auto r = run("repl " + prog("append.pl"), "solve(app(U,V)=[1,2]).\n;\n;\n;\n");
  CHECK(r.out == "| ?-     U=[]\n    V=[1,2] \n    U=[1]\n    V=[2] \n    U=[1,2]\n    V=[] \nno\n| ?- \n");
  auto stop = run("repl " + prog("append.pl"), "app(U,V)=[1,2].\n\n\n");
  CHECK(stop.out == "| ?-     U=[]\n    V=[1,2] \nyes\n| ?- | ?- \n");
}

TEST_CASE("oracle subcommand") {
  auto f = run("oracle " + prog("family.pl"));
  CHECK(f.status == 0);
  CHECK(f.out.find("cousin(henry,beatrice)\n") != std::string::npos);
  CHECK(f.out.find("cousin(elizabeth,asterix)") == std::string::npos);
  auto n = run("oracle " + prog("nat_bad.pl"));
  CHECK(n.out.empty());
  CHECK(n.status == 0);
}

TEST_CASE("check subcommand") {
  CHECK(run("check " + prog("wang.pl")).status == 0);
  CHECK(run("check " + prog("fsys.pl")).status == 1);
}
