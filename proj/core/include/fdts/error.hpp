#pragma once

#include <stdexcept>
#include <string>

namespace fdts {

enum class ErrorKind {
  InvalidParameter,
  Pole,
  EmptyInput,
  InsufficientData,
  OutOfRange,
  Domain,
  Degenerate,
  SingularRegression,
  Ingestion,
  MissingData,
  NoStationaryD,
  Shape,
  DegenerateLabels,
  UndefinedAuc,
  Input,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every library failure is reported through this type; `kind()` tells
/// callers (and the CLI exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

/// True for errors caused by bad caller parameters rather than bad data.
bool is_validation_error(ErrorKind kind) noexcept;

}  // namespace fdts
