#include "qtoric/error.hpp"

namespace qtoric {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NonUnimodular: return "NonUnimodular";
    case ErrorKind::DependentGenerators: return "DependentGenerators";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::NotACone: return "NotACone";
    case ErrorKind::LocateFailure: return "LocateFailure";
    case ErrorKind::NotEffective: return "NotEffective";
    case ErrorKind::NotFano: return "NotFano";
    case ErrorKind::NotInClass: return "NotInClass";
    case ErrorKind::NotInTier: return "NotInTier";
    case ErrorKind::BlowDownInvalid: return "BlowDownInvalid";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace qtoric
