#ifndef MEFE_ERROR_HPP
#define MEFE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mefe {

enum class ErrorKind {
  InvalidInstance,
  InvalidMatching,
  CapacityMismatch,
  InfeasibleMatching,
  ResourceBound,
  TiesPresent,
  PreconditionViolated,
  OddCardinality,
  ListTooLong,
  TiesOnMenSide,
  DegreeTooHigh,
  NotAGeneratedInstance,
  UnsatisfiableProfile,
  Parse,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::InvalidMatching: return "InvalidMatching";
    case ErrorKind::CapacityMismatch: return "CapacityMismatch";
    case ErrorKind::InfeasibleMatching: return "InfeasibleMatching";
    case ErrorKind::ResourceBound: return "ResourceBound";
    case ErrorKind::TiesPresent: return "TiesPresent";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::OddCardinality: return "OddCardinality";
    case ErrorKind::ListTooLong: return "ListTooLong";
    case ErrorKind::TiesOnMenSide: return "TiesOnMenSide";
    case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::NotAGeneratedInstance: return "NotAGeneratedInstance";
    case ErrorKind::UnsatisfiableProfile: return "UnsatisfiableProfile";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace mefe

#endif  // MEFE_ERROR_HPP
