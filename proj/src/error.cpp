#include "moritakit/error.hpp"

namespace moritakit {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::BadIdentity: return "BadIdentity";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::IllFormed: return "IllFormed";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::BadUnit: return "BadUnit";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::OracleDisagreement: return "OracleDisagreement";
    case ErrorKind::PropertyViolation: return "PropertyViolation";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::BoundTooSmall: return "BoundTooSmall";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::OracleDisagreement:
    case ErrorKind::PropertyViolation:
      return 2;
    case ErrorKind::LimitExceeded:
    case ErrorKind::BoundTooSmall:
      return 3;
    default:
      return 1;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      detail_(message) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace moritakit
