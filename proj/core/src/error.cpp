#include "surftex/error.hpp"

namespace surftex {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::out_of_range: return "out of range";
    case ErrorCode::size_mismatch: return "size mismatch";
    case ErrorCode::io: return "i/o error";
    case ErrorCode::bad_magic: return "bad magic";
    case ErrorCode::bad_header: return "bad header";
    case ErrorCode::truncated: return "truncated payload";
    case ErrorCode::trailing_data: return "trailing data";
    case ErrorCode::non_finite: return "non-finite value";
    case ErrorCode::config: return "config error";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace surftex
