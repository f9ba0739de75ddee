/*
   Copyright 2026 the skewlab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef SKEWLAB_ERRORS_HPP
#define SKEWLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace skewlab {

/// Base class for all skewlab exceptions.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrimeError : Error {
    using Error::Error;
};

struct ReducibleModulusError : Error {
    using Error::Error;
};

struct DivisionByZeroError : Error {
    using Error::Error;
};

struct BothZeroError : Error {
    using Error::Error;
};

struct LengthMismatchError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct ZeroModulusError : Error {
    using Error::Error;
};

struct IndexRangeError : Error {
    using Error::Error;
};

struct MissingTreeNodeError : Error {
    using Error::Error;
};

struct DegreeTooLargeError : Error {
    using Error::Error;
};

struct RankInfeasibleError : Error {
    using Error::Error;
};

/// Violation of an internal algorithm invariant; always indicates a bug.
struct InternalInvariantError : Error {
    using Error::Error;
};

/// Raised by the solver's self-verification pass; never expected to fire.
struct VerificationFailedError : Error {
    using Error::Error;
};

}  // namespace skewlab

#endif
