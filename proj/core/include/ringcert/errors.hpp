// Copyright 2026 The ringcert Authors
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

#ifndef RINGCERT_ERRORS_HPP
#define RINGCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ringcert {

// Input value outside the mathematical domain of an operation.
struct domain_error : std::invalid_argument {
    explicit domain_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Mismatched or inconsistent tensor dimensions.
struct dimension_error : std::invalid_argument {
    explicit dimension_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// An object failed its structural invariants (normalization, completeness, ...).
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Problem size exceeds the supported search/enumeration limits.
struct capacity_error : std::invalid_argument {
    explicit capacity_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A precondition on the inputs of an operation does not hold.
struct precondition_error : std::invalid_argument {
    explicit precondition_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A quantity that is mathematically forced came out numerically inconsistent.
struct consistency_error : std::runtime_error {
    explicit consistency_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ringcert

#endif
