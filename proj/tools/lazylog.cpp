// Command-line front end: interactive queries, batch runs, the ground
// fixed-point oracle and the static checks.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lazylog/database.hpp"
#include "lazylog/machine.hpp"
#include "lazylog/oracle.hpp"
#include "lazylog/reader.hpp"
#include "lazylog/solver.hpp"
#include "lazylog/typecheck.hpp"

using namespace lazylog;

namespace {

struct Options {
  std::vector<std::string> files;
  std::uint32_t depth_init = 5;
  std::uint32_t depth_step = 5;
  std::optional<std::uint32_t> max_depth;
  std::uint64_t max_rewrites = 100000;
  std::string query;
  std::size_t answers = 1;
  std::uint32_t oracle_depth = 3;
  std::int64_t oracle_range = 3;
};

SearchConfig search_config(const Options& o) {
  SearchConfig c;
  c.depth_init = o.depth_init;
  c.depth_step = o.depth_step;
  c.max_depth = o.max_depth;
  c.max_rewrites = o.max_rewrites;
  return c;
}

/// Load and report diagnostics on stderr. Null on error.
std::shared_ptr<const Database> load(const Options& o) {
  try {
    LoadResult r = load_files(o.files);
    for (const auto& d : r.diagnostics)
      std::cerr << d.to_string() << "\n";
    return r.db;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return nullptr;
  }
}

void print_answer(const Answer& a, const Database& db) {
  auto lines = a.lines(db.ops());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0)
      std::cout << "\n";
    std::cout << "    " << lines[i];
  }
}

const char* end_message(SolveStatus s) {
  return s == SolveStatus::DepthLimit ? "incomplete: depth limit reached" : "no";
}

int run_batch(const Options& o) {
  auto db = load(o);
  if (!db)
    return 2;
  std::size_t found = 0;
  try {
    Solver solver(db, prepare_query(*db, o.query), search_config(o), &std::cout);
    std::optional<Answer> current = solver.next();
    while (current) {
      ++found;
      if (current->bindings.empty()) {
        std::cout << "yes\n";
        return 0;
      }
      print_answer(*current, *db);
      if (found >= o.answers) {
        std::cout << "\nyes\n";
        return 0;
      }
      std::cout << " ;\n";
      std::cout.flush();
      current = solver.next();
      if (current)
        std::cout << "\n";
    }
    std::cout << end_message(solver.status()) << "\n";
  } catch (const std::exception& e) {
    std::cout.flush();
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return found > 0 ? 0 : 1;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int run_repl(const Options& o) {
  auto db = load(o);
  if (!db)
    return 2;
  std::string line;
  for (;;) {
    std::cout << "| ?- " << std::flush;
    std::string text;
    bool eof = false;
    for (;;) {
      if (!std::getline(std::cin, line)) {
        eof = true;
        break;
      }
      text += line + "\n";
      std::string t = trim(text);
      if (t.empty() || t.back() == '.')
        break;
    }
    if (eof && trim(text).empty()) {
      std::cout << "\n";
      return 0;
    }
    if (trim(text).empty())
      continue;
    if (trim(text) == "halt.")
      return 0;
    try {
      Solver solver(db, prepare_query(*db, text), search_config(o), &std::cout);
      for (;;) {
        std::optional<Answer> a = solver.next();
        if (!a) {
          std::cout << end_message(solver.status()) << "\n";
          break;
        }
        if (a->bindings.empty()) {
          std::cout << "yes\n";
          break;
        }
        print_answer(*a, *db);
        std::cout << " " << std::flush;
        std::string reply;
        if (!std::getline(std::cin, reply) || trim(reply) != ";") {
          std::cout << "\nyes\n";
          break;
        }
        std::cout << "\n";
      }
    } catch (const std::exception& e) {
      std::cout << "error: " << e.what() << "\n";
    }
    if (eof)
      return 0;
  }
}

int run_oracle(const Options& o) {
  auto db = load(o);
  if (!db)
    return 2;
  OracleConfig cfg;
  cfg.depth = o.oracle_depth;
  cfg.int_range = o.oracle_range;
  cfg.max_rewrites = o.max_rewrites;
  std::vector<std::string> warnings;
  try {
    GroundRuleSet rs = ground_instances(*db, cfg, &warnings);
    for (const auto& w : warnings)
      std::cerr << "warning(oracle): " << w << "\n";
    for (const auto& atom : lfp(rs))
      std::cout << atom << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int run_check(const Options& o) {
  try {
    LoadResult r = load_files(o.files);
    for (const auto& d : r.diagnostics)
      std::cerr << d.to_string() << "\n";
    if (!r.ok())
      return 2;
    return r.diagnostics.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

void add_search_flags(CLI::App* app, Options& o) {
  app->add_option("files", o.files, "program files")->required()->check(CLI::ExistingFile);
  app->add_option("--depth-init", o.depth_init, "first depth limit")->capture_default_str();
  app->add_option("--depth-step", o.depth_step, "depth limit increment")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--max-depth", o.max_depth, "give up above this limit");
  app->add_option("--max-rewrites", o.max_rewrites, "rewrite cap when normalizing an answer")
      ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"lazylog: logic programs with functions, solved by lazy narrowing"};
  app.require_subcommand(1);
  Options o;

  auto* repl = app.add_subcommand("repl", "interactive query loop");
  add_search_flags(repl, o);

  auto* batch = app.add_subcommand("batch", "run one query and print its answers");
  add_search_flags(batch, o);
  batch->add_option("-q,--query", o.query, "goal, e.g. 'app(U,V)=[1,2]'")->required();
  batch->add_option("-n,--answers", o.answers, "maximum number of answers")
      ->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "print the least fixed point of the ground program");
  add_search_flags(oracle, o);
  oracle->add_option("--oracle-depth", o.oracle_depth, "constructor nesting of ground terms")
      ->capture_default_str();
  oracle->add_option("--oracle-int-range", o.oracle_range, "integers from -R to R")
      ->capture_default_str();

  auto* check = app.add_subcommand("check", "load the program and report diagnostics");
  check->add_option("files", o.files, "program files")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  if (*repl)
    return run_repl(o);
  if (*batch)
    return run_batch(o);
  if (*oracle)
    return run_oracle(o);
  return run_check(o);
}
