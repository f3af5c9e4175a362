// Copyright 2026 The qrf Authors
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

#ifndef QRF_ERRORS_H
#define QRF_ERRORS_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qrf {

/// Raised for malformed input files. Line and column are 1-based; zero means unknown.
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string &message, std::size_t line = 0, std::size_t column = 0);

    std::size_t line() const {
        return line_;
    }
    std::size_t column() const {
        return column_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
};

/// Raised when an operation is applied to systems whose kind does not support it
/// (an irreversible change onto a G-system, a frame change onto an encoded slot, ...).
class InapplicableError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a dense construction would exceed the configured dimension cap.
class DimensionCapError : public std::length_error {
   public:
    using std::length_error::length_error;
};

}  // namespace qrf

#endif
