#include "iet/error.hpp"

namespace iet {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kConnection: return "connection";
    case ErrorCode::kResource: return "resource cap exceeded";
    case ErrorCode::kInconsistent: return "internal consistency failure";
    case ErrorCode::kPrecondition: return "precondition violated";
    case ErrorCode::kNotATower: return "not a tower";
  }
  return "unknown";
}

}  // namespace iet
