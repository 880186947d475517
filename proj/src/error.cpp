#include "brlab/error.hpp"

namespace brlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::ZeroFactor: return "ZeroFactor";
    case ErrorKind::ZeroScalar: return "ZeroScalar";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Error";
}

}  // namespace brlab
