#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pstlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Runs one command. `args` excludes the program name. Results go to `out`
// unless --output names a file; diagnostics and help go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Tokens from a JSON config object, one "--key value" pair per member.
// Arrays become comma-separated values, booleans become bare flags.
std::vector<std::string> config_tokens(const std::string& path);

}  // namespace pstlab::cli
