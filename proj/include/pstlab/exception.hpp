#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pstlab {

enum class ErrorKind {
  kInvalidSize,
  kUnsupportedBase,
  kNotColumnRegular,
  kUnsupported,
  kContractViolation,
  kIndex,
  kNormalization,
  kDegenerateSpectrum,
  kDomain,
  kPrecondition,
  kTransferBroken,
  kConfiguration,
  kParse,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and the CLI's
// exit-code mapping) can tell domain errors apart without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pstlab
