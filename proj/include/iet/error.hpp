#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace iet {

// Stable error categories. The numeric values are part of the C API.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,   // malformed input (bad rational, bad permutation, ...)
  kDomain = 2,            // point or set outside [0,|lambda|)
  kConnection = 3,        // Rauzy-Veech step undefined (lambda_m == lambda_{pi^-1 m})
  kResource = 4,          // a cap (power, orbit length, depth) was exceeded
  kInconsistent = 5,      // an internal cross-check failed
  kPrecondition = 6,      // operation called outside its contract
  kNotATower = 7,         // tower floors overlap
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by Rauzy-Veech iteration; carries the 1-based step at which the
// induction became undefined.
class ConnectionError : public Error {
 public:
  ConnectionError(std::int64_t step, const std::string& what)
      : Error(ErrorCode::kConnection, what), step_(step) {}
  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace iet
