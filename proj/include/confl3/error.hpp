// Copyright 2026 The confl3 Authors
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

#ifndef CONFL3_ERROR_HPP_
#define CONFL3_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace confl3 {

enum class ErrorCode {
  kDuplicateName,
  kInvertedBounds,
  kUnknownVariable,
  kDuplicateTerm,
  kNonFiniteCoefficient,
  kOutOfDomain,
  kPartialAssignment,
  kContractViolation,
  kInvalidInstance,
  kMissingWireless,
  kBoundInconsistency,
  kInvalidArgument,
  kEmptyCandidates,
  kNoCompletableFos,
  kUnattainableCoverage,
  kInfeasibleRelaxation,
  kSchema,
  kNumerical,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures surface as this exception; `code()` lets callers
// (the CLI, the bindings) map them to exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace confl3

#endif  // CONFL3_ERROR_HPP_
