#pragma once

#include <stdexcept>
#include <string>

namespace cae {

// Failure categories map one-to-one onto CLI exit codes (see tools/cae.cpp).
enum class ErrorKind {
  invalid_spec,     // malformed alphabet, pattern or spec
  invalid_input,    // bad argument to an operation
  budget_exceeded,  // exhaustive search ran past its node budget
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_spec(const std::string& what) {
  return Error(ErrorKind::invalid_spec, what);
}
inline Error invalid_input(const std::string& what) {
  return Error(ErrorKind::invalid_input, what);
}

// Carries how far the search got before it gave up.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::string partial)
      : Error(ErrorKind::budget_exceeded, what), partial_(std::move(partial)) {}

  const std::string& partial_report() const noexcept { return partial_; }

 private:
  std::string partial_;
};

}  // namespace cae
