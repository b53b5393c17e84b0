#include "eofkit/types.hpp"

namespace eofkit {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::BadShape: return "BadShape";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::NotAProjector: return "NotAProjector";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

void check_dims(const BipartiteDims& dims) {
  if (dims.d1 < 1 || dims.d2 < 1) {
    throw Error(ErrorKind::BadShape, "subsystem dimensions must be positive, got (" +
                                         std::to_string(dims.d1) + ", " +
                                         std::to_string(dims.d2) + ")");
  }
}

}  // namespace eofkit
