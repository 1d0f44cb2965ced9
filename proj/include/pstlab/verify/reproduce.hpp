#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pstlab::verify {

// One compared quantity. For bounds, `expected` holds the bound and
// `tolerance` is zero.
struct Measurement {
  std::string label;
  double expected = 0.0;
  double obtained = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckResult {
  std::string id;
  std::string title;
  bool pass = true;
  std::vector<Measurement> measurements;
};

struct Criterion {
  std::string id;
  std::string title;
  CheckResult (*run)(std::uint64_t seed);
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

const std::vector<Criterion>& criteria();

// Throws pstlab::Error(kConfiguration) for an unknown id.
CheckResult run_criterion(const std::string& id, std::uint64_t seed = kDefaultSeed);

void print_result(std::ostream& out, const CheckResult& r, bool verbose);

}  // namespace pstlab::verify
