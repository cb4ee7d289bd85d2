// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit status is the number of failures.

#include <cstdio>
#include <cstdlib>

#include "ultraweight/batteries.hpp"

int main(int argc, char** argv) {
  uint64_t seed = 20240801;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);

  const std::vector<uw::CriterionResult> results = uw::run_all_criteria(seed);
  int failures = 0;
  for (const uw::CriterionResult& r : results) {
    if (!r.pass) ++failures;
    std::printf("criterion %-2s [%s] %s — %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.detail.c_str());
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failures);
  return failures;
}
