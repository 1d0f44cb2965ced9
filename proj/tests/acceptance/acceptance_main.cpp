// Runs the registered verification checks and prints one PASS/FAIL line per
// check; failing measurements follow their line, indented.
//
//   pstlab_acceptance [--only ID] [--seed N] [--verbose]

#include <cstdlib>
#include <iostream>
#include <string>

#include "pstlab/exception.hpp"
#include "pstlab/verify/reproduce.hpp"

int main(int argc, char** argv) {
  std::string only;
  std::uint64_t seed = pstlab::verify::kDefaultSeed;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = argv[++i];
    } else if (arg == "--seed" && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (arg == "--verbose") {
      verbose = true;
    } else {
      std::cerr << "usage: pstlab_acceptance [--only ID] [--seed N] [--verbose]\n";
      return 2;
    }
  }
  int failed = 0;
  int ran = 0;
  try {
    for (const auto& c : pstlab::verify::criteria()) {
      if (!only.empty() && c.id != only) continue;
      const auto result = pstlab::verify::run_criterion(c.id, seed);
      pstlab::verify::print_result(std::cout, result, verbose);
      ++ran;
      failed += result.pass ? 0 : 1;
    }
  } catch (const pstlab::Error& e) {
    std::cout << "FAIL " << (only.empty() ? "?" : only) << ": " << e.what() << '\n';
    return 1;
  }
  if (ran == 0) {
    std::cerr << "no check named '" << only << "'\n";
    return 2;
  }
  std::cout << ran - failed << "/" << ran << " checks passed\n";
  return failed == 0 ? 0 : 1;
}
