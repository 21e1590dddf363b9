//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_ERROR_HPP
#define PROJSA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace projsa {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  OutOfRange,
  NonFinite,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what) {
  throw Error(code, what);
}

}  // namespace projsa

#endif  // PROJSA_ERROR_HPP
