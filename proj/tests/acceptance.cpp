#include <cstdio>
#include <iostream>

#include "gha/suite.hpp"

int main() {
  gha::SuiteOptions opt;
  opt.tol = 1e-6;
  opt.seed = 0;
  opt.max_iter = 10000;
  opt.log = &std::cout;
  gha::SuiteResult res = gha::run_acceptance_suite(opt);
  int passed = 0;
  for (const auto& c : res.criteria) passed += c.pass ? 1 : 0;
  std::printf("%d/%d criteria pass\n", passed, (int)res.criteria.size());
  return res.all_pass ? 0 : 1;
}
