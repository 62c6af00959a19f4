// SPDX-License-Identifier: Apache-2.0
//
// imistat: second-order statistics of the instantaneous mutual information
// of time-varying Rayleigh fading channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace imistat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Result not representable in double precision.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration or violated type invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed external data (trace dumps, scenario syntax is a ConfigError).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Allocation request that cannot be honoured.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A series or quadrature failed to reach the requested tolerance.
/// Carries the partial value and the number of terms/refinements spent.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double partial, long long work)
        : Error(what), partial_(partial), work_(work) {}

    [[nodiscard]] double partial() const noexcept { return partial_; }
    [[nodiscard]] long long work() const noexcept { return work_; }

private:
    double partial_;
    long long work_;
};

}  // namespace imistat
