/*
   Copyright 2026 the tailboot authors

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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tailboot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// -- estimator errors ---------------------------------------------------

/// k outside [1, n-1].
class BadK : public Error {
public:
    using Error::Error;
};

/// The (k+1)-th largest order statistic is <= 0, so the log-spacings are
/// undefined.
class NonPositiveTail : public Error {
public:
    using Error::Error;
};

/// The top k+1 order statistics carry no spread (all equal, or all
/// log-spacings equal), so the moment ratio H^2/M pins the negative part
/// of the index at -infinity.
class DegenerateTail : public Error {
public:
    using Error::Error;
};

// -- scaling-function / domain errors -----------------------------------

/// t < 1 passed to one of the integral scaling functions.
class BadT : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of a closed-form expression
/// (e.g. the asymptotic variance needs gamma > -1/2).
class OutOfDomain : public Error {
public:
    using Error::Error;
};

// -- bootstrap errors ----------------------------------------------------

/// No usable replicate values to form quantiles from.
class EmptyBootstrap : public Error {
public:
    using Error::Error;
};

/// The base point estimate is zero, so ratio pivots are undefined.
class ZeroBaseEstimate : public Error {
public:
    using Error::Error;
};

/// Fewer than half of the requested replicates produced a value.
class AllReplicatesFailed : public Error {
public:
    using Error::Error;
};

// -- input / configuration errors ----------------------------------------

/// Sample-level invariant violation (n < 3, NaN or infinite entries).
class BadSample : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration (flags, model strings, parameter ranges).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input file contains no data rows.
class EmptyFile : public Error {
public:
    using Error::Error;
};

/// Malformed input row; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace tailboot
