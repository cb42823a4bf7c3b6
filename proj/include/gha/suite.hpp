#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace gha {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions {
  double tol = 1e-6;
  uint64_t seed = 0;
  int max_iter = 10000;
  std::ostream* log = nullptr;  // one line per criterion as it finishes
};

struct SuiteResult {
  std::vector<CriterionResult> criteria;
  bool all_pass = false;
};

// the full verification battery over the builtin groupoids
SuiteResult run_acceptance_suite(const SuiteOptions& opt = {});

}  // namespace gha
