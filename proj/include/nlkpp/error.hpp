#pragma once

#include <stdexcept>
#include <string>

namespace nlkpp {

/// Failure category; the CLI maps these onto process exit codes.
enum class ErrorKind {
  validation,    // bad input parameter (exit 2)
  precondition,  // input valid but outside an operation's domain (exit 3)
  numerical,     // solver failure or failed internal consistency check (exit 4)
};

/// Exception carrying a category and a stable machine-readable code such as
/// "kernel_domain" or "speed_below_min".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return 2;
    case ErrorKind::precondition: return 3;
    case ErrorKind::numerical: return 4;
  }
  return 4;
}

}  // namespace nlkpp
