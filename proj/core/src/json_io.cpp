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

#include "ringcert/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "ringcert/errors.hpp"

namespace ringcert {

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out.push_back('"');
    for (unsigned char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out.push_back(static_cast<char>(ch));
                }
        }
    }
    out.push_back('"');
}

}  // namespace

std::string format_number(double d) {
    if (!std::isfinite(d))
        throw validation_error("refusing to serialize a non-finite number");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    return buf;
}

JsonValue& JsonValue::operator[](const std::string& key) {
    if (is_null()) value_ = Object{};
    if (!is_object()) throw validation_error("JSON value is not an object");
    return std::get<Object>(value_)[key];
}

const JsonValue& JsonValue::at(const std::string& key) const {
    if (!is_object()) throw validation_error("JSON value is not an object");
    const auto& obj = std::get<Object>(value_);
    auto it = obj.find(key);
    if (it == obj.end()) throw validation_error("missing JSON key: " + key);
    return it->second;
}

void JsonValue::push_back(JsonValue v) {
    if (is_null()) value_ = Array{};
    if (!is_array()) throw validation_error("JSON value is not an array");
    std::get<Array>(value_).push_back(std::move(v));
}

const JsonValue::Array& JsonValue::items() const {
    if (!is_array()) throw validation_error("JSON value is not an array");
    return std::get<Array>(value_);
}

void JsonValue::write(std::string& out, int depth) const {
    const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
    const std::string inner(2 * static_cast<std::size_t>(depth + 1), ' ');
    if (std::holds_alternative<std::nullptr_t>(value_)) {
        out += "null";
    } else if (auto* b = std::get_if<bool>(&value_)) {
        out += *b ? "true" : "false";
    } else if (auto* i = std::get_if<std::int64_t>(&value_)) {
        out += std::to_string(*i);
    } else if (auto* u = std::get_if<std::uint64_t>(&value_)) {
        out += std::to_string(*u);
    } else if (auto* d = std::get_if<double>(&value_)) {
        out += format_number(*d);
    } else if (auto* s = std::get_if<std::string>(&value_)) {
        write_escaped(out, *s);
    } else if (auto* a = std::get_if<Array>(&value_)) {
        if (a->empty()) {
            out += "[]";
            return;
        }
        // Arrays of scalars stay on one line; nested containers get one
        // element per line so diffs of strategy files stay readable.
        bool nested = false;
        for (const auto& item : *a)
            nested = nested || item.is_object() ||
                     (item.is_array() && !item.items().empty() &&
                      (item.items()[0].is_array() || item.items()[0].is_object()));
        out.push_back('[');
        for (std::size_t i = 0; i < a->size(); ++i) {
            if (nested) {
                out.push_back('\n');
                out += inner;
            } else if (i > 0) {
                out.push_back(' ');
            }
            (*a)[i].write(out, depth + 1);
            if (i + 1 < a->size()) out.push_back(',');
        }
        if (nested) {
            out.push_back('\n');
            out += pad;
        }
        out.push_back(']');
    } else {
        const auto& obj = std::get<Object>(value_);
        if (obj.empty()) {
            out += "{}";
            return;
        }
        out.push_back('{');
        std::size_t i = 0;
        for (const auto& [key, val] : obj) {
            out.push_back('\n');
            out += inner;
            write_escaped(out, key);
            out += ": ";
            val.write(out, depth + 1);
            if (++i < obj.size()) out.push_back(',');
        }
        out.push_back('\n');
        out += pad;
        out.push_back('}');
    }
}

std::string JsonValue::dump() const {
    std::string out;
    write(out, 0);
    out.push_back('\n');
    return out;
}

namespace {

JsonValue complex_to_json(const Complex& z) {
    JsonValue pair = JsonValue::array();
    pair.push_back(z.real());
    pair.push_back(z.imag());
    return pair;
}

JsonValue vector_to_json(const CVector& v) {
    JsonValue out = JsonValue::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

JsonValue matrix_to_json(const CMatrix& m) {
    JsonValue out = JsonValue::object();
    out["rows"] = static_cast<std::int64_t>(m.rows());
    out["cols"] = static_cast<std::int64_t>(m.cols());
    JsonValue entries = JsonValue::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            entries.push_back(complex_to_json(m(r, c)));
    out["entries"] = std::move(entries);
    return out;
}

using nl = nlohmann::json;

Complex complex_from_json(const nl& j) {
    if (!j.is_array() || j.size() != 2)
        throw validation_error("complex entries must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix matrix_from_json(const nl& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& entries = j.at("entries");
    if (rows < 0 || cols < 0 ||
        entries.size() != static_cast<std::size_t>(rows * cols))
        throw validation_error("matrix entry count does not match rows*cols");
    CMatrix m(rows, cols);
    std::size_t idx = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(entries[idx++]);
    return m;
}

nl parse(const std::string& text) {
    nl j = nl::parse(text, nullptr, false);
    if (j.is_discarded()) throw validation_error("malformed JSON input");
    return j;
}

void require_schema(const nl& j, const std::string& name) {
    if (!j.is_object() || j.value("schema", std::string()) != name)
        throw validation_error("expected schema \"" + name + "\"");
}

}  // namespace

JsonValue strategy_to_json(const QuantumRingStrategy& s) {
    JsonValue out = JsonValue::object();
    out["schema"] = "ringcert.strategy.v1";
    out["n"] = static_cast<std::int64_t>(s.layout.n);
    JsonValue dims = JsonValue::array();
    for (const auto& [dr, dl] : s.layout.source_dims) {
        JsonValue pair = JsonValue::array();
        pair.push_back(static_cast<std::int64_t>(dr));
        pair.push_back(static_cast<std::int64_t>(dl));
        dims.push_back(std::move(pair));
    }
    out["source_dims"] = std::move(dims);
    JsonValue states = JsonValue::array();
    for (const auto& state : s.source_states) states.push_back(vector_to_json(state.amplitudes));
    out["source_states"] = std::move(states);
    JsonValue meas = JsonValue::array();
    for (const auto& party : s.measurements) {
        JsonValue ops = JsonValue::array();
        for (const auto& [label, op] : party) {
            JsonValue entry = JsonValue::object();
            entry["label"] = label;
            entry["operator"] = matrix_to_json(op);
            ops.push_back(std::move(entry));
        }
        meas.push_back(std::move(ops));
    }
    out["measurements"] = std::move(meas);
    out["projective"] = s.projective;
    out["metadata"] = JsonValue::object();
    return out;
}

QuantumRingStrategy strategy_from_json(const std::string& text) {
    const nl j = parse(text);
    require_schema(j, "ringcert.strategy.v1");
    QuantumRingStrategy s;
    s.layout.n = j.at("n").get<int>();
    for (const auto& pair : j.at("source_dims")) {
        if (!pair.is_array() || pair.size() != 2)
            throw validation_error("source_dims entries must be [dR, dL] pairs");
        s.layout.source_dims.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
    s.layout.validate();
    const auto& states = j.at("source_states");
    if (states.size() != static_cast<std::size_t>(s.layout.n))
        throw validation_error("need one source state per source");
    for (int k = 0; k < s.layout.n; ++k) {
        const auto& amps = states[k];
        CVector v(amps.size());
        for (std::size_t i = 0; i < amps.size(); ++i) v(i) = complex_from_json(amps[i]);
        s.source_states.emplace_back(
            std::vector<int>{s.layout.source_dims[k].first,
                             s.layout.source_dims[k].second},
            std::move(v));
    }
    const auto& meas = j.at("measurements");
    if (meas.size() != static_cast<std::size_t>(s.layout.n))
        throw validation_error("need one measurement per party");
    for (const auto& party : meas) {
        PartyMeasurement pm;
        for (const auto& entry : party)
            pm.emplace_back(entry.at("label").get<std::string>(),
                            matrix_from_json(entry.at("operator")));
        s.measurements.push_back(std::move(pm));
    }
    s.projective = j.at("projective").get<bool>();
    s.validate();
    return s;
}

JsonValue rgb4_strategy_to_json(const CanonicalRgb4Strategy& s) {
    JsonValue out = strategy_to_json(s.strategy);
    out["metadata"]["theta"] = s.theta;
    return out;
}

JsonValue distribution_to_json(const OutcomeDistribution& d) {
    JsonValue out = JsonValue::object();
    out["schema"] = "ringcert.distribution.v1";
    JsonValue labels = JsonValue::array();
    for (const auto& party : d.party_labels) {
        JsonValue alphabet = JsonValue::array();
        for (const auto& label : party) alphabet.push_back(label);
        labels.push_back(std::move(alphabet));
    }
    out["party_labels"] = std::move(labels);
    JsonValue entries = JsonValue::array();
    // std::map keys are lexicographically sorted label tuples already.
    for (const auto& [outcome, p] : d.table) {
        JsonValue entry = JsonValue::object();
        JsonValue tuple = JsonValue::array();
        for (const auto& label : outcome) tuple.push_back(label);
        entry["outcome"] = std::move(tuple);
        entry["p"] = p;
        entries.push_back(std::move(entry));
    }
    out["entries"] = std::move(entries);
    return out;
}

OutcomeDistribution distribution_from_json(const std::string& text) {
    const nl j = parse(text);
    require_schema(j, "ringcert.distribution.v1");
    OutcomeDistribution d;
    for (const auto& party : j.at("party_labels")) {
        std::vector<std::string> alphabet;
        for (const auto& label : party) alphabet.push_back(label.get<std::string>());
        d.party_labels.push_back(std::move(alphabet));
    }
    for (const auto& entry : j.at("entries")) {
        std::vector<std::string> outcome;
        for (const auto& label : entry.at("outcome")) outcome.push_back(label.get<std::string>());
        d.table[std::move(outcome)] = entry.at("p").get<double>();
    }
    d.validate();
    return d;
}

JsonValue report_to_json(const VerificationReport& r) {
    JsonValue out = JsonValue::object();
    out["suite"] = r.suite;
    out["seed"] = r.seed;
    out["trials"] = static_cast<std::int64_t>(r.trials);
    JsonValue failures = JsonValue::array();
    for (const auto& f : r.failures) {
        JsonValue entry = JsonValue::object();
        entry["case"] = f.case_name;
        entry["residual"] = f.residual;
        failures.push_back(std::move(entry));
    }
    out["failures"] = std::move(failures);
    JsonValue skipped = JsonValue::array();
    for (const auto& s : r.skipped) {
        JsonValue entry = JsonValue::object();
        entry["case"] = s.case_name;
        entry["reason"] = s.reason;
        skipped.push_back(std::move(entry));
    }
    out["skipped"] = std::move(skipped);
    out["max_residual"] = r.max_residual;
    return out;
}

JsonValue certificate_to_json(const CertificateBundle& b) {
    auto tagged = [](double value, const std::string& formula) {
        JsonValue out = JsonValue::object();
        out["value"] = value;
        out["formula"] = formula;
        return out;
    };
    JsonValue out = JsonValue::object();
    out["schema"] = "ringcert.certificate.v1";
    out["theta"] = b.theta;
    out["r_ideal"] =
        tagged(b.r_ideal, "sin^3(2 theta)/4, the coherence realized by the canonical strategy");
    out["r_floor"] = tagged(
        b.r_floor,
        "(1/2) sin^3(theta) (3 cos(theta) + cos(3 theta) - 6 sin(theta))");
    out["eof_bound"] = tagged(
        b.eof_bound, "h2((1 - sqrt(1 - 16 r^2))/2) at r = max(r_floor, 0)");
    out["hmin_bound"] = tagged(
        b.hmin_bound, "-log2((1 + sqrt(1 - 4 r))/2) at r = max(r_floor, 0)");
    JsonValue residuals = JsonValue::object();
    for (const auto& [name, value] : b.oracle_residuals) residuals[name] = value;
    out["oracle_residuals"] = std::move(residuals);
    JsonValue notes = JsonValue::array();
    for (const auto& note : b.notes) notes.push_back(note);
    out["notes"] = std::move(notes);
    return out;
}

}  // namespace ringcert
