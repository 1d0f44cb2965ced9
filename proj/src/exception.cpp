#include "pstlab/exception.hpp"

namespace pstlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidSize: return "invalid-size";
    case ErrorKind::kUnsupportedBase: return "unsupported-base";
    case ErrorKind::kNotColumnRegular: return "not-column-regular";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kContractViolation: return "contract-violation";
    case ErrorKind::kIndex: return "index";
    case ErrorKind::kNormalization: return "normalization";
    case ErrorKind::kDegenerateSpectrum: return "degenerate-spectrum";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kTransferBroken: return "transfer-broken";
    case ErrorKind::kConfiguration: return "configuration";
    case ErrorKind::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace pstlab
