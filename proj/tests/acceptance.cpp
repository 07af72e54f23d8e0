// Acceptance suite: runs every numbered criterion over the built-in rig
// registry and prints one pass/fail line per criterion.  Exits with the
// number of failed criteria.

#include <cstdio>

#include "finclone/checks.hpp"

int main() {
  using namespace finclone;
  std::vector<CriterionResult> crits;
  try {
    crits = run_acceptance(builtin_rigs());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 99;
  }
  int failures = 0;
  for (const CriterionResult& c : crits) {
    std::printf("[%s] criterion %2d: %s (%.0f ms", c.pass ? "PASS" : "FAIL",
                c.number, c.title.c_str(), c.elapsed_ms);
    if (c.budget_ms > 0)
      std::printf(", budget %.0f s", c.budget_ms / 1000.0);
    std::printf(")\n");
    if (!c.pass) {
      ++failures;
      for (const CheckResult& p : c.parts)
        if (!p.pass)
          std::printf("       %s: %s\n", p.name.c_str(), p.detail.c_str());
      if (c.budget_ms > 0 && c.elapsed_ms >= c.budget_ms)
        std::printf("       runtime budget exceeded\n");
    }
  }
  std::printf("%zu/%zu criteria passed\n", crits.size() - failures,
              crits.size());
  return failures;
}
