// Copyright 2026 The ringcert Authors
//
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

#ifndef RINGCERT_JSON_IO_HPP
#define RINGCERT_JSON_IO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ringcert/certify.hpp"
#include "ringcert/rgb4.hpp"
#include "ringcert/ring.hpp"
#include "ringcert/verify.hpp"

namespace ringcert {

// Deterministic JSON document: objects keep their keys sorted (std::map),
// doubles are emitted with 17 significant digits so that emit -> parse ->
// emit is byte-identical. This is the only JSON writer in the project;
// parsing goes through a vendored reader inside json_io.cpp.
class JsonValue {
  public:
    using Array = std::vector<JsonValue>;
    using Object = std::map<std::string, JsonValue>;

    JsonValue() : value_(nullptr) {}
    JsonValue(bool b) : value_(b) {}
    JsonValue(int i) : value_(static_cast<std::int64_t>(i)) {}
    JsonValue(std::int64_t i) : value_(i) {}
    JsonValue(std::uint64_t u) : value_(u) {}
    JsonValue(double d) : value_(d) {}
    JsonValue(const char* s) : value_(std::string(s)) {}
    JsonValue(std::string s) : value_(std::move(s)) {}
    JsonValue(Array a) : value_(std::move(a)) {}
    JsonValue(Object o) : value_(std::move(o)) {}

    static JsonValue array() { return JsonValue(Array{}); }
    static JsonValue object() { return JsonValue(Object{}); }

    bool is_null() const { return std::holds_alternative<std::nullptr_t>(value_); }
    bool is_object() const { return std::holds_alternative<Object>(value_); }
    bool is_array() const { return std::holds_alternative<Array>(value_); }

    // Object access; inserts a null value if the key is absent. Throws
    // validation_error when the value is not an object/array.
    JsonValue& operator[](const std::string& key);
    const JsonValue& at(const std::string& key) const;
    void push_back(JsonValue v);
    const Array& items() const;

    // Serializes with two-space indentation and a trailing newline at the
    // top level; non-finite doubles are rejected with validation_error.
    std::string dump() const;

  private:
    void write(std::string& out, int depth) const;

    std::variant<std::nullptr_t, bool, std::int64_t, std::uint64_t, double,
                 std::string, Array, Object>
        value_;
};

// Number formatting used everywhere (JSON and CSV): %.17g.
std::string format_number(double d);

// schema "ringcert.strategy.v1": ring size, per-source wire dims, source
// amplitudes as [re, im] pairs, labeled measurement operators (row-major),
// projectivity flag, and a free-form metadata object.
JsonValue strategy_to_json(const QuantumRingStrategy& s);
QuantumRingStrategy strategy_from_json(const std::string& text);

// Same schema with metadata.theta recording the family angle.
JsonValue rgb4_strategy_to_json(const CanonicalRgb4Strategy& s);

// schema "ringcert.distribution.v1": per-party label alphabets plus the
// probability table as an array of {outcome, p}, sorted by outcome tuple.
JsonValue distribution_to_json(const OutcomeDistribution& d);
OutcomeDistribution distribution_from_json(const std::string& text);

// {failures: [{case, residual}], max_residual, seed, skipped, suite, trials}.
JsonValue report_to_json(const VerificationReport& r);

// schema "ringcert.certificate.v1"; every derived number carries the formula
// it came from as {formula, value}.
JsonValue certificate_to_json(const CertificateBundle& b);

}  // namespace ringcert

#endif  // RINGCERT_JSON_IO_HPP
