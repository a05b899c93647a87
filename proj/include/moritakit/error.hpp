#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace moritakit {

enum class ErrorKind {
  // validation failures (exit code 1)
  Malformed,
  MissingComposite,
  NonAssociative,
  BadIdentity,
  UnknownName,
  NotIdempotent,
  IllFormed,
  BadParameters,
  NotClosed,
  NotEquivariant,
  BadUnit,
  IndexOutOfRange,
  // property / oracle violations (exit code 2)
  OracleDisagreement,
  PropertyViolation,
  // bounds (exit code 3)
  LimitExceeded,
  BoundTooSmall,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Process exit code associated with an error kind: 1 for validation
/// errors, 2 for property/oracle violations, 3 for exceeded bounds.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace moritakit
