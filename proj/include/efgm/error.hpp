#pragma once

#include <stdexcept>
#include <string>

namespace efgm {

enum class ErrorKind {
  invalid_input,
  inadmissible,
  numeric,
  capability,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::inadmissible: return "inadmissible-parameters";
    case ErrorKind::numeric: return "numeric-error";
    case ErrorKind::capability: return "capability-error";
  }
  return "error";
}

// All library failures are reported through this type; `kind()` tells the
// caller whether the input was at fault or the computation itself failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_input(const std::string& message) {
  return Error(ErrorKind::invalid_input, message);
}
inline Error inadmissible(const std::string& message) {
  return Error(ErrorKind::inadmissible, message);
}
inline Error numeric_error(const std::string& message) {
  return Error(ErrorKind::numeric, message);
}
inline Error capability_error(const std::string& message) {
  return Error(ErrorKind::capability, message);
}

// Tolerance policy shared by every module.
namespace tol {
inline constexpr double equality = 1e-12;
inline constexpr double round_trip = 1e-10;
inline constexpr double quadrature = 1e-8;
inline constexpr double negative_clamp = 1e-12;
}  // namespace tol

}  // namespace efgm
