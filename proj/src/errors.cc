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

#include "constellation/errors.h"

namespace constellation {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLoadError: return "LoadError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownFact: return "UnknownFact";
    case ErrorCode::kUnknownDimension: return "UnknownDimension";
    case ErrorCode::kUnknownHierarchy: return "UnknownHierarchy";
    case ErrorCode::kUnknownParameter: return "UnknownParameter";
    case ErrorCode::kUnknownMeasure: return "UnknownMeasure";
    case ErrorCode::kUnknownValue: return "UnknownValue";
    case ErrorCode::kUnknownContext: return "UnknownContext";
    case ErrorCode::kNotLinked: return "NotLinked";
    case ErrorCode::kSameDimension: return "SameDimension";
    case ErrorCode::kSameHierarchy: return "SameHierarchy";
    case ErrorCode::kSameFact: return "SameFact";
    case ErrorCode::kNotInCurrentHierarchy: return "NotInCurrentHierarchy";
    case ErrorCode::kNotAnAncestor: return "NotAnAncestor";
    case ErrorCode::kNotFiner: return "NotFiner";
    case ErrorCode::kNotCoarser: return "NotCoarser";
    case ErrorCode::kFunctionalDependencyViolated: return "FunctionalDependencyViolated";
    case ErrorCode::kCannotPushKey: return "CannotPushKey";
    case ErrorCode::kCannotPushAll: return "CannotPushAll";
    case ErrorCode::kNameConflict: return "NameConflict";
    case ErrorCode::kParameterInUse: return "ParameterInUse";
    case ErrorCode::kNotStarSchema: return "NotStarSchema";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kMeasureConflict: return "MeasureConflict";
    case ErrorCode::kEmptyMeasureSet: return "EmptyMeasureSet";
    case ErrorCode::kNothingToUndo: return "NothingToUndo";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kConflict: return "Conflict";
    case ErrorCode::kBadRequest: return "BadRequest";
  }
  return "Unknown";
}

ErrorCategory CategoryOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLoadError:
    case ErrorCode::kValidationError:
    case ErrorCode::kIoError:
      return ErrorCategory::kLoad;
    case ErrorCode::kParseError:
      return ErrorCategory::kParse;
    case ErrorCode::kNotFound:
    case ErrorCode::kConflict:
    case ErrorCode::kBadRequest:
      return ErrorCategory::kTransport;
    default:
      return ErrorCategory::kOperator;
  }
}

}  // namespace constellation
