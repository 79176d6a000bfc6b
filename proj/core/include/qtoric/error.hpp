#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qtoric {

enum class ErrorKind {
  InvalidArgument,
  IndexOutOfRange,
  NonUnimodular,
  DependentGenerators,
  ValidationFailed,
  NotACone,
  LocateFailure,
  NotEffective,
  NotFano,
  NotInClass,
  NotInTier,
  BlowDownInvalid,
  PreconditionFailed,
  DimensionMismatch,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so front ends can map
/// it to a stable exit code without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qtoric
