// Copyright 2026 The cymub Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace cymub {

// Operand shapes don't fit the operation (e.g. adding a 2x3 to a 3x2).
struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string &msg) : std::invalid_argument(msg) {}
};

// Asked to invert (or divide by) something that has no inverse.
struct SingularMatrixError : std::domain_error {
    explicit SingularMatrixError(const std::string &msg) : std::domain_error(msg) {}
};

// A caller-supplied value is malformed or out of its documented range.
struct ArgumentError : std::invalid_argument {
    explicit ArgumentError(const std::string &msg) : std::invalid_argument(msg) {}
};

// Work refused because it exceeds a size or time budget and no override was given.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string &msg) : std::runtime_error(msg) {}
};

// Checked integer arithmetic detected an overflow; results would be silently wrong.
struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string &msg) : std::runtime_error(msg) {}
};

// Input violates a documented precondition (e.g. a non-symmetric seed matrix).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string &msg) : std::runtime_error(msg) {}
};

// A redundant internal cross-check failed; this always indicates a library bug.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string &msg) : std::logic_error(msg) {}
};

}  // namespace cymub
