// Copyright 2026 The mpecstat Authors
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

#ifndef MPECSTAT_ERROR_HPP_
#define MPECSTAT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mpecstat {

enum class ErrorCode {
  kNotPointed,
  kNotMember,
  kNotNormal,
  kNotNested,
  kNotCritical,
  kInfeasiblePoint,
  kEmptyMultiplierSet,
  kUnboundedMultipliers,
  kNotNondegenerate,
  kNotTangent,
  kNotPolarMember,
  kDimensionMismatch,
  kAssumptionNotAsserted,
  kInfeasibleMultiplier,
  kNotApplicable,
  kTooManyRows,
  kAuditFailure,
  kParseError,
  kShapeError,
  kNonRationalLiteral,
  kInvalidArgument,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mpecstat

#endif  // MPECSTAT_ERROR_HPP_
