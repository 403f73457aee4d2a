#pragma once

#include <stdexcept>
#include <string>

namespace dslab {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  Unsolvable,
  NotConformal,
  NotFuturePointing,
  DegenerateFrame,
  NotInS3,
  AllUmbilic,
  StepRejected,
  Parse,
  Io,
};

/// Short machine-readable tag, used on the CLI diagnostic stream.
const char* error_tag(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dslab
