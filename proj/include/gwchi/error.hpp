/*
   Copyright 2026 The gwchi Authors

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

#ifndef GWCHI_ERROR_HPP
#define GWCHI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gwchi {

/// Error classes. Each maps to one CLI exit code.
enum class ErrorKind {
    domain,            // bad argument to a library operation (division by zero, mismatched fields, ...)
    parse,             // malformed config or expression
    validation,        // input violates a precondition of the pipeline
    capacity,          // a configured bound was exceeded
    m_not_invertible,  // local valuation m is divisible by the characteristic
    internal_check     // a cross-check between independent computations failed
};

inline int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::parse:
            return 2;
        case ErrorKind::validation:
        case ErrorKind::domain:
            return 3;
        case ErrorKind::capacity:
            return 4;
        case ErrorKind::m_not_invertible:
            return 5;
        case ErrorKind::internal_check:
            return 6;
    }
    return 1;
}

inline const char* kind_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::domain:
            return "domain";
        case ErrorKind::parse:
            return "parse";
        case ErrorKind::validation:
            return "validation";
        case ErrorKind::capacity:
            return "capacity";
        case ErrorKind::m_not_invertible:
            return "m-not-invertible";
        case ErrorKind::internal_check:
            return "internal-check";
    }
    return "unknown";
}

/// Every failure raised by the library. `code()` is a short stable identifier
/// (e.g. "singular-curve") that tests and the CLI can match on.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string code, const std::string& message)
        : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

   private:
    ErrorKind kind_;
    std::string code_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string code, const std::string& message) {
    throw Error(kind, std::move(code), message);
}

inline void require(bool cond, const char* code, const std::string& message) {
    if (!cond) fail(ErrorKind::domain, code, message);
}

}  // namespace gwchi

#endif
