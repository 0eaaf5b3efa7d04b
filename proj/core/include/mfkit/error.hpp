#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mfkit {

// Domain error carrying a stable machine-readable code. The CLI turns these
// into {"error": {"code": ..., "message": ...}} with exit status 1.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& what = "division by zero")
      : Error("division_by_zero", what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error("invalid_argument", what) {}
};

class InvalidLabel : public Error {
 public:
  explicit InvalidLabel(const std::string& what) : Error("invalid_label", what) {}
};

class PreconditionFailed : public Error {
 public:
  PreconditionFailed(std::string code, const std::string& what)
      : Error(std::move(code), what) {}
};

}  // namespace mfkit
