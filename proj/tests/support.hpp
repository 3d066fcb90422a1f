#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lazylog/database.hpp"
#include "lazylog/solver.hpp"

namespace testing_support {

inline std::string program_path(const std::string& name) {
  return std::string(LAZYLOG_PROGRAMS_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::shared_ptr<const lazylog::Database> load_program(const std::string& name) {
  auto r = lazylog::load_files({program_path(name)});
  if (!r.ok()) {
    std::string msg;
    for (const auto& d : r.diagnostics)
      msg += d.to_string() + "\n";
    throw std::runtime_error(msg);
  }
  return r.db;
}

inline std::shared_ptr<const lazylog::Database> load_text(const std::string& text) {
  auto r = lazylog::load_source(text);
  if (!r.ok()) {
    std::string msg;
    for (const auto& d : r.diagnostics)
      msg += d.to_string() + "\n";
    throw std::runtime_error(msg);
  }
  return r.db;
}

/// Each answer as its printed `V=term` lines.
inline std::vector<std::vector<std::string>>
answers(std::shared_ptr<const lazylog::Database> db, const std::string& query, std::size_t n,
        lazylog::SearchConfig cfg = {}, lazylog::SolveStatus* status = nullptr) {
  std::vector<std::vector<std::string>> out;
  for (const auto& a : lazylog::solve_all(db, query, n, cfg, status))
    out.push_back(a.lines(db->ops()));
  return out;
}

} // namespace testing_support
