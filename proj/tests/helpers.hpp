#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "latinpat/square.hpp"
#include "oracles.hpp"

#ifndef LATINPAT_GOLDEN_DIR
#define LATINPAT_GOLDEN_DIR "tests/golden"
#endif

namespace testing {

inline latinpat::Permutation P(const char* s) { return latinpat::Permutation::parse(s); }

inline oracle::Seq seq(const latinpat::Permutation& p) { return {p.entries().begin(), p.entries().end()}; }

inline oracle::Grid grid(const latinpat::LatinSquare& s) { return s.rows(); }

inline std::string golden(const std::string& name) {
  std::ifstream in(std::string(LATINPAT_GOLDEN_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace testing
