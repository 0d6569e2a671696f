/*
   Copyright 2026 The lafbf Authors

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

#include <stdexcept>
#include <string>

namespace lafbf {

/// Failure categories. The numeric values are stable; the C API and the CLI
/// exit codes are derived from them.
enum class ErrorKind {
    config = 2,      ///< invalid parameter or malformed input
    infeasible = 3,  ///< no band plan satisfies the requested gap
    numerical = 4,   ///< embedding failure, degenerate estimator, ...
    io = 5,
    undefined_orientation = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, double largest_gap)
        : Error(ErrorKind::infeasible, what), largest_gap_(largest_gap) {}

    double largest_gap() const noexcept { return largest_gap_; }

private:
    double largest_gap_;
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

// Raised where an orientation vector vanishes and no direction exists.
class UndefinedOrientationError : public Error {
public:
    explicit UndefinedOrientationError(const std::string& what)
        : Error(ErrorKind::undefined_orientation, what) {}
};

}  // namespace lafbf
