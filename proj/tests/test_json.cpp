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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "ringcert/certify.hpp"
#include "ringcert/errors.hpp"
#include "ringcert/json_io.hpp"
#include "ringcert/rgb4.hpp"
#include "ringcert/rigidity.hpp"
#include "ringcert/ring.hpp"
#include "ringcert/verify.hpp"

using namespace ringcert;

TEST_CASE("number formatting survives a parse round trip") {
    for (double x : {0.1, 1.0 / 3.0, 0.062500000000000014, 1e-300, -2.5e17,
                     0.025472862630521412}) {
        CHECK(std::stod(format_number(x)) == x);
    }
    CHECK(format_number(1.0) == "1");
    CHECK_THROWS_AS(format_number(std::nan("")), validation_error);
    CHECK_THROWS_AS(format_number(INFINITY), validation_error);
}

TEST_CASE("json values print with sorted keys and stable layout") {
    JsonValue obj = JsonValue::object();
    obj["zeta"] = 1;
    obj["alpha"] = true;
    obj["mid"] = "text";
    std::string out = obj.dump();
    CHECK(out.find("\"alpha\"") < out.find("\"mid\""));
    CHECK(out.find("\"mid\"") < out.find("\"zeta\""));
    CHECK(out.back() == '\n');

    JsonValue arr = JsonValue::array();
    arr.push_back(1.5);
    arr.push_back(2);
    obj["values"] = arr;
    CHECK(obj.dump().find("1.5") != std::string::npos);
}

TEST_CASE("strategy serialization round-trips byte for byte") {
    QuantumRingStrategy s =
        canonical_tc_strategy({2, 1, 1}, {{0.2, 0.5, 0.3}, {0.4, 0.6}, {0.7, 0.3}});
    std::string first = strategy_to_json(s).dump();
    QuantumRingStrategy back = strategy_from_json(first);
    std::string second = strategy_to_json(back).dump();
    CHECK(first == second);

    // The reconstruction is exact, not merely close.
    REQUIRE(back.source_states.size() == s.source_states.size());
    for (size_t k = 0; k < s.source_states.size(); ++k)
        CHECK(max_abs(back.source_states[k].amplitudes -
                      s.source_states[k].amplitudes) == 0.0);
    for (size_t k = 0; k < s.measurements.size(); ++k) {
        REQUIRE(back.measurements[k].size() == s.measurements[k].size());
        for (size_t x = 0; x < s.measurements[k].size(); ++x) {
            CHECK(back.measurements[k][x].first == s.measurements[k][x].first);
            CHECK(max_abs(back.measurements[k][x].second -
                          s.measurements[k][x].second) == 0.0);
        }
    }
    CHECK(back.projective == s.projective);

    // Complex entries with nonzero imaginary parts survive as well.
    CanonicalRgb4Strategy rgb = rgb4_strategy(0.36);
    std::string rgb_first = rgb4_strategy_to_json(rgb).dump();
    QuantumRingStrategy rgb_back = strategy_from_json(rgb_first);
    CHECK(distribution_distance(quantum_distribution(rgb_back),
                                rgb4_closed_form(0.36)) <= 1e-10);
    CHECK(rgb_first.find("\"theta\"") != std::string::npos);
}

TEST_CASE("strategy parsing rejects malformed documents") {
    CHECK_THROWS_AS(strategy_from_json("not json at all"), validation_error);
    CHECK_THROWS_AS(strategy_from_json("{}"), validation_error);
    CHECK_THROWS_AS(strategy_from_json(R"({"schema": "something.else"})"),
                    validation_error);

    // Tampered amplitude: normalization is revalidated on load.
    QuantumRingStrategy s =
        canonical_tc_strategy({1, 1, 1}, {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
    std::string text = strategy_to_json(s).dump();
    std::string key = format_number(std::sqrt(0.5));
    auto pos = text.find(key);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, key.size(), "0.9");
    CHECK_THROWS_AS(strategy_from_json(text), validation_error);
}

TEST_CASE("distribution serialization round-trips byte for byte") {
    OutcomeDistribution d = rgb4_closed_form(0.3);
    std::string first = distribution_to_json(d).dump();
    OutcomeDistribution back = distribution_from_json(first);
    std::string second = distribution_to_json(back).dump();
    CHECK(first == second);
    CHECK(distribution_distance(d, back) == 0.0);
    CHECK(back.party_labels == d.party_labels);

    CHECK_THROWS_AS(distribution_from_json("{\"schema\": \"bogus\"}"),
                    validation_error);
}

TEST_CASE("verification reports serialize their failure and skip lists") {
    VerificationReport r;
    r.suite = "demo";
    r.seed = 7;
    r.trials = 3;
    r.record("case/pass", 1e-14, 1e-10);
    r.record("case/fail", 2e-3, 1e-10);
    r.skipped.push_back({"case/skip", "degenerate parameters"});

    std::string out = report_to_json(r).dump();
    CHECK(out.find("\"suite\"") != std::string::npos);
    CHECK(out.find("case/fail") != std::string::npos);
    CHECK(out.find("case/skip") != std::string::npos);
    CHECK(out.find("degenerate parameters") != std::string::npos);
    // Passing cases appear only through max_residual, not in failures.
    CHECK(out.find("case/pass") == std::string::npos);
    CHECK(!r.ok());
}

TEST_CASE("certificates tag every quantity with its formula") {
    CertificateBundle c = certificate(0.36);
    std::string out = certificate_to_json(c).dump();
    CHECK(out.find("\"schema\"") != std::string::npos);
    for (const char* field : {"\"r_ideal\"", "\"r_floor\"", "\"eof_bound\"",
                              "\"hmin_bound\"", "\"formula\"", "\"value\"",
                              "\"oracle_residuals\""})
        CHECK(out.find(field) != std::string::npos);
    CHECK(out.find(format_number(c.r_floor)) != std::string::npos);
}
