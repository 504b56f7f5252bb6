// Copyright 2026 The stabkit Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace stabkit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or malformed input (bad eps, zero-width rect, parse failure).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// An operation was called on input that violates its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The exact subset-DP oracle refuses instances above its size limit.
class OracleLimitError : public Error {
public:
    using Error::Error;
};

/// A search ran out of its node budget, or found no solution within its
/// segment-count cap. Never signals a wrong answer.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Internal bookkeeping does not line up (e.g. unknown compressed y level).
class CorruptionError : public Error {
public:
    using Error::Error;
};

}  // namespace stabkit
