// Copyright 2026 The qaround Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qaround {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A control qubit is also acted on by the controlled body.
struct OverlapError : Error {
    using Error::Error;
};

/// A qubit reference is out of range or used outside its scope.
struct QubitError : Error {
    using Error::Error;
};

/// Gate identifier not built in and not registered in the library.
struct UnknownGateError : Error {
    using Error::Error;
};

/// The dense oracle refuses registers above its qubit cap.
struct TooLargeError : Error {
    using Error::Error;
};

/// A circuit still carries symbolic aux ids where concrete wires are needed.
struct UnresolvedAuxError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct NotPermutationError : Error {
    using Error::Error;
};

struct DecompositionUnavailableError : Error {
    using Error::Error;
};

struct PoolExhaustedError : Error {
    using Error::Error;
};

/// Release was attempted for a scope whose safety verdict was rejected.
struct UnsafeReleaseError : Error {
    using Error::Error;
};

struct DoubleFreeError : Error {
    using Error::Error;
};

struct NotFlattenedError : Error {
    using Error::Error;
};

/// A library entry failed its oracle check at registration time.
struct RegistrationError : Error {
    using Error::Error;
};

/// Diagnostic for the circuit DSL, carrying a 1-based source location.
struct ParseError : Error {
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line(line),
          column(column) {}

    std::size_t line;
    std::size_t column;
};

}  // namespace qaround
