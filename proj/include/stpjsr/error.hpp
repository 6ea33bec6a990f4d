#pragma once

#include <stdexcept>
#include <string>

namespace stpjsr {

enum class ErrorCode {
  kDimension,
  kOutOfRange,
  kCapExceeded,
  kNoConvergence,
  kNotAlive,
  kNondeterministic,
  kParse,
  kInvalidArgument,
};

/// Single exception type for the library; `code()` distinguishes the cause.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stpjsr
