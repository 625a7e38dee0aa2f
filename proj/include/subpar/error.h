// Copyright 2026 The subpar Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBPAR_ERROR_H_
#define SUBPAR_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace subpar {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidElement,
  kOutOfBox,
  kExactTooLarge,
  kStateInvariantViolation,
  kParamOutOfRange,
  kNonNegativityViolation,
  kDegenerateBox,
  kTooLarge,
  kInvalidInstance,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kInvalidElement:
      return "InvalidElement";
    case ErrorCode::kOutOfBox:
      return "OutOfBox";
    case ErrorCode::kExactTooLarge:
      return "ExactTooLarge";
    case ErrorCode::kStateInvariantViolation:
      return "StateInvariantViolation";
    case ErrorCode::kParamOutOfRange:
      return "ParamOutOfRange";
    case ErrorCode::kNonNegativityViolation:
      return "NonNegativityViolation";
    case ErrorCode::kDegenerateBox:
      return "DegenerateBox";
    case ErrorCode::kTooLarge:
      return "TooLarge";
    case ErrorCode::kInvalidInstance:
      return "InvalidInstance";
  }
  return "Unknown";
}

// All library failures are reported through this exception; `code()` tells
// callers (the CLI in particular) which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace subpar

#endif  // SUBPAR_ERROR_H_
