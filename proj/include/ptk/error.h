// Copyright 2026 The ptk Authors
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

#ifndef PTK_ERROR_H
#define PTK_ERROR_H

#include <stdexcept>
#include <string>

namespace ptk {

enum class ErrorCode {
    TypeMismatch,
    UnboundGenerator,
    DimensionMismatch,
    NotCausal,
    CPTPViolation,
    NotAProductType,
    NotDistinguishable,
    IndexMismatch,
    MappingMismatch,
    MixedBackends,
    MarginalDisturbed,
    FactorizationFailure,
    NotPure,
    DimensionOverflow,
    DuplicateStates,
    InvalidState,
    SyntaxError,
    ResolutionError,
    DimensionError,
    InvariantViolation,
};

const char *error_code_name(ErrorCode code);

/// Every failure raised by the library. `code()` distinguishes the cases a
/// caller may want to react to; `what()` carries the human readable detail.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);
    ErrorCode code() const {
        return code_;
    }
    /// The message without the code prefix.
    const std::string &message() const {
        return message_;
    }

   private:
    ErrorCode code_;
    std::string message_;
};

/// Raised by the model parser; always carries a 1-based source location.
class ParseError : public Error {
   public:
    ParseError(ErrorCode code, size_t line, size_t column, const std::string &message);
    size_t line() const {
        return line_;
    }
    size_t column() const {
        return column_;
    }
    /// The message without code and location.
    const std::string &message() const {
        return plain_;
    }

   private:
    size_t line_;
    size_t column_;
    std::string plain_;
};

}  // namespace ptk

#endif
