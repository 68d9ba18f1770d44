// Copyright 2026 The homsim Authors
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

#ifndef HOMSIM_ERRORS_H
#define HOMSIM_ERRORS_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homsim {

/// Rejected input: bad parameters, mismatched grids, out-of-range values.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// File could not be read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Setup-text syntax or semantic error with a 1-based source position.
struct ParseError : std::runtime_error {
    ParseError(const std::string &message, size_t line, size_t column);
    size_t line;
    size_t column;
    std::string bare_message;
};

}  // namespace homsim

#endif
