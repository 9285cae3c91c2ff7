#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace surftex {

enum class ErrorCode {
  invalid_argument,
  out_of_range,
  size_mismatch,
  io,
  bad_magic,
  bad_header,
  truncated,
  trailing_data,
  non_finite,
  config,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a code so callers (and the CLI
// exit path) can tell error classes apart without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace surftex
