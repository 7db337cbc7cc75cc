// Copyright 2026 The locc-forge Authors
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

#ifndef LOCC_ERRORS_H
#define LOCC_ERRORS_H

#include <stdexcept>
#include <string>

namespace locc {

/// Error categories. The numeric values double as CLI exit codes and C API
/// status codes, so they must stay stable.
enum class ErrorKind : int {
    InvalidInput = 2,
    ConversionImpossible = 3,
    ResourceCap = 4,
    Internal = 5,
};

/// Base class for every error raised by the library.
class LoccError : public std::runtime_error {
   public:
    LoccError(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {
    }
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

struct InvalidInput : LoccError {
    explicit InvalidInput(const std::string &what) : LoccError(ErrorKind::InvalidInput, what) {
    }
};

/// Raised when the source coefficient vector is not majorized by the target.
struct ConversionImpossible : LoccError {
    explicit ConversionImpossible(const std::string &what) : LoccError(ErrorKind::ConversionImpossible, what) {
    }
};

struct ResourceCapExceeded : LoccError {
    explicit ResourceCapExceeded(const std::string &what) : LoccError(ErrorKind::ResourceCap, what) {
    }
};

/// Birkhoff peeling found no perfect matching in the remaining support.
struct DecompositionFailed : LoccError {
    explicit DecompositionFailed(const std::string &what) : LoccError(ErrorKind::Internal, what) {
    }
};

/// A mixture does not satisfy the identity it was built for.
struct InternalContradiction : LoccError {
    explicit InternalContradiction(const std::string &what) : LoccError(ErrorKind::Internal, what) {
    }
};

/// A constructed conclusive plan failed its post-construction validation.
struct ConstructionInvalid : LoccError {
    explicit ConstructionInvalid(const std::string &what) : LoccError(ErrorKind::Internal, what) {
    }
};

/// A measurement outcome whose probability is below the branch tolerance.
struct ZeroBranch : LoccError {
    explicit ZeroBranch(const std::string &what) : LoccError(ErrorKind::Internal, what) {
    }
};

}  // namespace locc

#endif
