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

#include <string>

#include "ringcert/errors.hpp"
#include "ringcert/json_io.hpp"
#include "ringcert/verify.hpp"

using namespace ringcert;

TEST_CASE("report bookkeeping") {
    VerificationReport r;
    r.record("a", 1e-12, 1e-10);
    CHECK(r.ok());
    CHECK(r.max_residual == 1e-12);
    r.record("b", 1e-3, 1e-10);
    CHECK_FALSE(r.ok());
    CHECK(r.failures.size() == 1);
    CHECK(r.failures[0].case_name == "b");
    CHECK(r.max_residual == 1e-3);
    r.record_verdict("c", true, 0.5);
    CHECK(r.failures.size() == 1);     // expected verdicts add no failure
    CHECK(r.max_residual == 1e-3);     // ... and no residual
    r.record_verdict("d", false, 0.7);
    CHECK(r.failures.size() == 2);
}

TEST_CASE("lemma suite passes and is deterministic") {
    VerificationReport a = run_lemma_suite(5, 4);
    CHECK(a.ok());
    CHECK(a.suite == "lemmas");
    CHECK(a.trials == 4);
    CHECK(a.max_residual <= 1e-10);

    VerificationReport b = run_lemma_suite(5, 4);
    CHECK(report_to_json(a).dump() == report_to_json(b).dump());
}

TEST_CASE("rigidity suite passes and flags the degenerate parity point") {
    VerificationReport r = run_rigidity_suite(5, 4);
    CHECK(r.ok());
    CHECK(r.suite == "rigidity");
    CHECK(r.max_residual <= 1e-8);
    REQUIRE(r.skipped.size() == 1);
    CHECK(r.skipped[0].case_name == "rigidity/parity_uniqueness_at_one_half");
    CHECK(!r.skipped[0].reason.empty());
}

TEST_CASE("oracle suite passes") {
    VerificationReport r = run_oracle_suite(5, 3);
    CHECK(r.ok());
    CHECK(r.suite == "oracles");
    CHECK(r.max_residual <= 1e-6);
}

TEST_CASE("merged run concatenates the suites") {
    VerificationReport all = run_all_suites(5, 3);
    CHECK(all.suite == "all");
    CHECK(all.ok());
    CHECK(all.skipped.size() == 1);

    VerificationReport lemmas = run_lemma_suite(5, 3);
    VerificationReport rigidity = run_rigidity_suite(5, 3);
    VerificationReport oracles = run_oracle_suite(5, 3);
    CHECK(all.max_residual >= lemmas.max_residual);
    CHECK(all.max_residual >= rigidity.max_residual);
    CHECK(all.max_residual >= oracles.max_residual);
    CHECK(all.max_residual ==
          std::max({lemmas.max_residual, rigidity.max_residual,
                    oracles.max_residual}));
}

TEST_CASE("suite argument validation") {
    CHECK_THROWS_AS(run_lemma_suite(1, 0), domain_error);
    CHECK_THROWS_AS(run_rigidity_suite(1, 2, {}), domain_error);
    CHECK_THROWS_AS(run_lemma_suite(1, 2, {2, 5}), domain_error);
}
