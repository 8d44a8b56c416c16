#include <cstdio>
#include <cstdlib>
#include <string>

#include "isotherm/acceptance.hpp"

// Usage: isotherm_acceptance [criterion ...]
int main(int argc, char** argv) {
  isotherm::acceptance::Options opt;
  bool all_pass = true;
  auto show = [&](const isotherm::acceptance::Record& r) {
    std::printf("%s\n", isotherm::acceptance::format_line(r).c_str());
    std::fflush(stdout);
    all_pass = all_pass && r.pass;
  };
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) show(isotherm::acceptance::run_criterion(std::atoi(argv[i]), opt));
  } else {
    isotherm::acceptance::run_all(opt, show);
  }
  return all_pass ? 0 : 1;
}
