// Regression gate: one line per criterion, nonzero exit on any failure.
#include <cstdio>
#include <cstring>

#include "dipsim/acceptance.hpp"

int main(int argc, char** argv) {
  dipsim::AcceptanceOptions opt;
  for (int k = 1; k < argc; ++k)
    if (std::strcmp(argv[k], "--fast") == 0) opt.fast = true;

  auto results = dipsim::run_acceptance(opt);
  std::fputs(dipsim::format_report(results).c_str(), stdout);

  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  return failed;
}
