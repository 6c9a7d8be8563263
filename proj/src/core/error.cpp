#include "tailent/error.hpp"

namespace tailent {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kArgument: return "argument error";
    case ErrorKind::kUnsupportedOrder: return "unsupported order";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kPrecision: return "precision error";
    case ErrorKind::kNotC1: return "not C1";
    case ErrorKind::kScale: return "scale error";
    case ErrorKind::kResolution: return "resolution error";
    case ErrorKind::kResource: return "resource error";
    case ErrorKind::kTableSize: return "table size error";
    case ErrorKind::kDegenerateShift: return "degenerate shift";
    case ErrorKind::kMixingRequired: return "mixing required";
    case ErrorKind::kHypothesisUnmet: return "hypothesis unmet";
    case ErrorKind::kDegenerateWeight: return "degenerate weight";
    case ErrorKind::kConfig: return "config error";
  }
  return "error";
}

}  // namespace tailent
