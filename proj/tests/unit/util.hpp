#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "provlog/provlog.hpp"

namespace testutil {

inline std::string data(const std::string& rel) { return std::string(PROVLOG_DATA_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  provlog::Program program;
  provlog::AnnotatedDatabase db;
};

inline Loaded example(const std::string& program, const std::string& facts, const std::string& semiring) {
  return {provlog::parse_program(slurp(data("examples/" + program))),
          provlog::parse_database(slurp(data("examples/" + facts)), provlog::make_semiring(semiring))};
}

inline Loaded inline_instance(const std::string& program, const std::string& facts, const std::string& semiring) {
  return {provlog::parse_program(program), provlog::parse_database(facts, provlog::make_semiring(semiring))};
}

inline std::string show(const provlog::AnnotatedDatabase& db, const provlog::Value& v) {
  return db.semiring->print(v);
}

}  // namespace testutil
