#include "fdts/error.hpp"

namespace fdts {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::EmptyInput: return "empty-input";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Degenerate: return "degenerate-input";
    case ErrorKind::SingularRegression: return "singular-regression";
    case ErrorKind::Ingestion: return "ingestion";
    case ErrorKind::MissingData: return "missing-data";
    case ErrorKind::NoStationaryD: return "no-stationary-d";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::DegenerateLabels: return "degenerate-labels";
    case ErrorKind::UndefinedAuc: return "undefined-auc";
    case ErrorKind::Input: return "input";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

bool is_validation_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::Pole:
    case ErrorKind::OutOfRange:
    case ErrorKind::Shape:
      return true;
    default:
      return false;
  }
}

}  // namespace fdts
