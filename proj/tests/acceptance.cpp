// Prints one line per acceptance criterion; exits 0 only if all pass.

#include <cstdio>

#include "dodeca/acceptance.hpp"

int main() {
  dodeca::Acceptance acc;
  bool all = true;
  acc.run_all([&](const dodeca::CheckResult& r) {
    std::printf("criterion %2d %-26s %-12s %7.2fs  %s\n", r.id, r.name.c_str(), dodeca::outcome_str(r.outcome),
                r.seconds, r.detail.c_str());
    std::fflush(stdout);
    all = all && r.outcome == dodeca::Outcome::pass;
  });
  return all ? 0 : 1;
}
