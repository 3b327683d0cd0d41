#pragma once

#include <stdexcept>
#include <string>

namespace torcomb {

// Numeric values double as CLI exit codes.
enum class ErrorCode : int {
  Input = 2,
  DeskScale = 3,
  Consistency = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail_input(const std::string& msg) {
  throw Error(ErrorCode::Input, msg);
}
[[noreturn]] inline void fail_desk_scale(const std::string& msg) {
  throw Error(ErrorCode::DeskScale, msg);
}
[[noreturn]] inline void fail_consistency(const std::string& msg) {
  throw Error(ErrorCode::Consistency, msg);
}

}  // namespace torcomb
