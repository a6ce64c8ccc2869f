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

#ifndef RINGCERT_RGB4_HPP
#define RINGCERT_RGB4_HPP

#include <string>
#include <utility>
#include <vector>

#include "ringcert/rigidity.hpp"
#include "ringcert/ring.hpp"

namespace ringcert {

// Measurement angles of the four-outcome triangle family. The two
// single-token directions are u_0 = cos(theta) = -v_1, v_0 = sin(theta) = u_1,
// so (u_0, v_0) and (u_1, v_1) are orthonormal.
struct Rgb4Params {
    double theta;
    double u0, v0, u1, v1;

    explicit Rgb4Params(double theta);  // domain_error outside [0, pi/4]

    double u(int i) const { return i == 0 ? u0 : u1; }
    double v(int i) const { return i == 0 ? v0 : v1; }
};

// A triangle strategy in canonical token form: each source emits
// (|01> |j^c> + |10> |j^a>)/sqrt(2) on (token to own party, token to next
// party) and each party measures {"0", "2", "1_0", "1_1"} on its two token
// qubits, identity on junk. Kept together with its construction data so the
// canonical form can be revalidated.
struct CanonicalRgb4Strategy {
    QuantumRingStrategy strategy;
    double theta = 0.0;
    std::vector<SourceJunk> junk;  // per source; states[0] = |j^c>, [1] = |j^a>
};

// The 64-entry closed-form distribution: P(1_i,1_j,1_k) =
// (u_i u_j u_k + v_i v_j v_k)^2 / 8, P(1_i,0,2) = u_i^2/8,
// P(1_i,2,0) = v_i^2/8, each with both cyclic images under
// (a,b,c) -> (c,a,b); every other entry exactly zero.
OutcomeDistribution rgb4_closed_form(double theta);

// Canonical strategy realizing rgb4_closed_form(theta); junk defaults to
// one-dimensional registers. The party measurement projects onto
// {|00>, |1bar_0>, |1bar_1>, |11>} with |1bar_i> = u_i|01> + v_i|10> on the
// (left token, right token) pair.
CanonicalRgb4Strategy rgb4_strategy(double theta,
                                    const std::vector<SourceJunk>& junk = {});

// The all-clockwise and all-anticlockwise global product states, in
// party-major subsystem order (same layout as the strategy's measurements).
// Every party holds |10> (clockwise, junk |j^c>) or |01> (anticlockwise,
// junk |j^a>) on its token qubits. Throws validation_error if the carried
// strategy does not match its construction data.
std::pair<StateVector, StateVector> global_token_states(
    const CanonicalRgb4Strategy& s);

// Coherence between the two global token states:
//   r = (-1)^{i+j+k} * 2 Re <Psi^c| Pi^{1_i} Pi^{1_j} Pi^{1_k} |Psi^a>
// evaluated for all 8 sign choices; the values must agree within 1e-10
// (consistency_error listing all 8 otherwise) and their mean is returned.
// Ideal strategy (trivial junk): r = sin^3(2 theta)/4.
double coherence_r(const CanonicalRgb4Strategy& s);

// Residuals of the identities tying the observed distribution to the two
// global token states:
//   P(1_i,1_j,1_k)       = || Pi Pi Pi (|Psi^c> + |Psi^a>) ||^2 / 8
//   P(1_i,0,2) & cyclic  = || Pi^{1_i}_X |Psi^a> ||^2 / 8
//   P(1_i,2,0) & cyclic  = || Pi^{1_i}_X |Psi^c> ||^2 / 8
//   8 P(1_i,1_j,1_k)     = q_c + q_a + (-1)^{i+j+k} r
struct Rgb4ConsistencyReport {
    double max_residual = 0.0;
    std::vector<std::pair<std::string, double>> checks;
};

Rgb4ConsistencyReport consistency_probabilities(const CanonicalRgb4Strategy& s);

}  // namespace ringcert

#endif
