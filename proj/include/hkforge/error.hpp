#ifndef HKFORGE_ERROR_HPP
#define HKFORGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hkforge {

enum class ErrorKind {
  DivisionByZero,
  RingMismatch,
  NotAPowerOfP,
  ResourceCap,
  EmptyVariety,
  PreconditionViolated,
  DoubleLinkFailed,
  ModularCase,
  NoetherBoundViolated,
  InternalError,
  ParseError,
  UnknownVariable,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NotAPowerOfP: return "NotAPowerOfP";
    case ErrorKind::ResourceCap: return "ResourceCap";
    case ErrorKind::EmptyVariety: return "EmptyVariety";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::DoubleLinkFailed: return "DoubleLinkFailed";
    case ErrorKind::ModularCase: return "ModularCase";
    case ErrorKind::NoetherBoundViolated: return "NoetherBoundViolated";
    case ErrorKind::InternalError: return "InternalError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
  }
  return "Unknown";
}

/// The single exception type thrown by the library. `kind` drives the CLI
/// exit code; `completed` carries the last fully computed index for
/// operations that produce partial tables (-1 when not applicable).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, long completed = -1)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        message_(what),
        completed_(completed) {}

  ErrorKind kind() const noexcept { return kind_; }
  long completed() const noexcept { return completed_; }
  /// what() without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
  long completed_;
};

}  // namespace hkforge

#endif  // HKFORGE_ERROR_HPP
