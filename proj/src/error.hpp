#pragma once

#include <stdexcept>
#include <string>

namespace maxitive {

// Numeric values mirror mx_status in include/maxitive/maxitive.h.
enum class ErrorCode {
  invalid_argument = 1,
  size_mismatch = 2,
  not_upset = 3,
  not_increasing = 4,
  cap_exceeded = 5,
  parse_error = 6,
  domain_error = 7,
  missing_capability = 8,
  property_violation = 9,
  io_error = 10,
  internal = 11,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace maxitive
