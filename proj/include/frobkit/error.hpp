#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frobkit {

enum class ErrorKind {
  InvalidInput,
  InvalidParameters,
  GcdNotOne,
  ResourceLimit,
  OutOfValidityRange,
  NoClosedFormCase,
  Unsupported,
  AssertionFailure,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::GcdNotOne: return "GcdNotOne";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::OutOfValidityRange: return "OutOfValidityRange";
    case ErrorKind::NoClosedFormCase: return "NoClosedFormCase";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::AssertionFailure: return "AssertionFailure";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI, the verifier) can map it to exit codes or report tags.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace frobkit
