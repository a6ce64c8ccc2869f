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

#ifndef RINGCERT_VERIFY_HPP
#define RINGCERT_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ringcert {

// Outcome of one seeded verification suite. `failures` lists every case
// whose residual exceeded its pinned tolerance (or whose expected verdict
// flipped); `skipped` lists cases that were deliberately not judged, with a
// reason (currently only degenerate parity strategies whose classical
// rigidity holds only up to an extra relabeling freedom). max_residual is
// the largest residual observed across tolerance-checked cases, failing or
// not; boolean verdicts contribute only their failures.
struct VerificationReport {
    struct Failure {
        std::string case_name;
        double residual = 0.0;
    };
    struct Skip {
        std::string case_name;
        std::string reason;
    };

    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<Failure> failures;
    std::vector<Skip> skipped;
    double max_residual = 0.0;

    bool ok() const { return failures.empty(); }
    void record(const std::string& case_name, double residual, double tol);
    void record_verdict(const std::string& case_name, bool expected,
                        double residual);
};

// Interleaved product-chain equality on random conditioned factors: `trials`
// honest instances plus `trials` adversarial instances for each cycle parity
// (even cycles on 4 systems, odd cycles on 3), with per-system dimensions
// drawn from `dims_pool`. Honest runs must sit below 1e-10 with every factor
// of operator-Schmidt rank 1; adversarial runs must be rejected.
VerificationReport run_lemma_suite(std::uint64_t seed, int trials,
                                   const std::vector<int>& dims_pool = {2, 3});

// Structure checks on constructed strategies: stabilizer residuals of
// canonical token strategies (counting, parity, and the four-outcome family),
// rejection of seeded perturbations, product factorization of the stabilizing
// unitaries, the unitarity classifier on projective vs noisy measurements,
// binary dilations, and token-function recovery under relabeling.
VerificationReport run_rigidity_suite(std::uint64_t seed, int trials,
                                      const std::vector<int>& dims_pool = {2, 3});

// Numerical optimization oracles against their closed forms: entanglement
// floor (tolerance 1e-6), guessing-probability product bound (1e-4), and the
// one-sided feasibility scan against the coherence floor.
VerificationReport run_oracle_suite(std::uint64_t seed, int trials);

// Runs the listed suites and merges them into one report (suite = "all",
// case names prefixed by their suite). Every suite receives the same base
// seed and derives its own per-trial streams, so the merged run is
// deterministic and equals the concatenation of the individual runs.
VerificationReport run_all_suites(std::uint64_t seed, int trials,
                                  const std::vector<int>& dims_pool = {2, 3});

}  // namespace ringcert

#endif  // RINGCERT_VERIFY_HPP
