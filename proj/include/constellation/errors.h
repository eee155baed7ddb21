// Copyright 2026 The Constellation OLAP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace constellation {

// Machine-readable error codes. The names returned by ErrorCodeName() are part
// of the service and C API contract.
enum class ErrorCode {
  // Load / validation.
  kLoadError,
  kValidationError,
  kIoError,
  // Parsing.
  kParseError,
  // Operators.
  kUnknownFact,
  kUnknownDimension,
  kUnknownHierarchy,
  kUnknownParameter,
  kUnknownMeasure,
  kUnknownValue,
  kUnknownContext,
  kNotLinked,
  kSameDimension,
  kSameHierarchy,
  kSameFact,
  kNotInCurrentHierarchy,
  kNotAnAncestor,
  kNotFiner,
  kNotCoarser,
  kFunctionalDependencyViolated,
  kCannotPushKey,
  kCannotPushAll,
  kNameConflict,
  kParameterInUse,
  kNotStarSchema,
  kTypeMismatch,
  kSchemaMismatch,
  kMeasureConflict,
  kEmptyMeasureSet,
  kNothingToUndo,
  kUnsupported,
  // Transport.
  kNotFound,
  kConflict,
  kBadRequest,
};

enum class ErrorCategory { kLoad, kParse, kOperator, kTransport };

std::string_view ErrorCodeName(ErrorCode code);
ErrorCategory CategoryOf(ErrorCode code);

class OlapError : public std::runtime_error {
 public:
  OlapError(ErrorCode code, const std::string& message, std::string location = {})
      : std::runtime_error(message), code_(code), location_(std::move(location)) {}

  ErrorCode code() const { return code_; }
  std::string_view code_name() const { return ErrorCodeName(code_); }
  const std::string& location() const { return location_; }

 private:
  ErrorCode code_;
  std::string location_;
};

}  // namespace constellation
