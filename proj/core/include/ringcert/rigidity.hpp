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

#ifndef RINGCERT_RIGIDITY_HPP
#define RINGCERT_RIGIDITY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringcert/ring.hpp"
#include "ringcert/schmidt.hpp"

namespace ringcert {

// Phase-weighted measurement sum U = sum_x e^{i phi_x} Pi^x for one party.
// U is unitary exactly when the operators form a projective measurement and
// the phases are distinct points on the unit circle.
struct PartyUnitary {
    CMatrix matrix;
    std::vector<std::pair<std::string, Complex>> phases;  // label -> e^{i phi}

    void validate(double tol = kStructuralTol) const;  // unitarity, distinct phases
};

// Token-counting phases: outcome x in {0..total_tokens} gets
// phi_x = 2*pi*(x + 1/n_parties)/(total_tokens + 1), so any outcome tuple
// summing to total_tokens picks up a total phase of exactly 2*pi.
// Labels must parse as integers in range; the operators must form a PVM.
PartyUnitary build_party_unitary(const PartyMeasurement& pvm, int total_tokens,
                                 int n_parties);

// Parity phases: U = Pi^1 - Pi^0 for a binary PVM labeled "0"/"1"; tuples with
// odd outcome sum pick up a total phase of +1 on odd rings.
PartyUnitary build_parity_unitary(const PartyMeasurement& pvm);

// || (U_1 x ... x U_n) |Psi> - |Psi> || with |Psi> the product of the source
// states in party-major order. Zero means the strategy is stabilized.
double stabilizer_residual(const QuantumRingStrategy& s,
                           const std::vector<PartyUnitary>& units);

// Classifier for the unitarity criterion: given POVM elements and distinct
// unit-modulus phases, returns whether sum_x phase_x E_x is unitary within
// tol. When it is, each E_x is forced to be a projector; that is re-checked
// and a consistency_error is thrown if violated.
bool pvm_from_unitarity(const std::vector<CMatrix>& povm,
                        const std::vector<Complex>& phases, double tol = kCheckTol);

// Splits a unitary on C^{dl} x C^{dr} into V x W when its operator-Schmidt
// rank is 1; returns nullopt otherwise. The phase split between V and W is
// fixed by making det(V) real positive when nonzero.
std::optional<std::pair<CMatrix, CMatrix>> factor_product_unitary(
    const CMatrix& u, int dim_left, int dim_right, double tol = kRankTol);

// Merges measurement operators whose labels map to the same value.
PartyMeasurement coarse_grain_measurement(const PartyMeasurement& meas,
                                          const std::map<std::string, std::string>& map);

// Scale-and-rotate form of a stabilized strategy. Everything is expressed in
// the Schmidt bases of the sources, where source k becomes
// sum_i lambda_i |ii> and Lambda^(k) = diag(sqrt(d_k) * lambda_i). For each
// party the unitary U_k on (L_k, R_k) induces
//   G_k = (Lambda^(k-1) x Lambda^(k)) U_k^T   on (R_{k-1}, L_{k+1})
//   F_k = U_k^dag (Lambda^(k-1) x Lambda^(k)) on (L_k, R_k)
// and, on odd rings, the wrap operator Q on (L_n, L_1): the partial transpose
// on the R_n leg of U_n^dag (Lambda^(n-1) x I). q_tilde = Q (I x Lambda^(n)^-1)
// is the normalized variant used in the product-chain reduction.
struct ChainOperators {
    int n = 0;
    std::vector<int> schmidt_dims;       // d_k per source
    std::vector<CMatrix> lambda;         // Lambda^(k), diagonal, d_k x d_k
    std::vector<CMatrix> rotated_units;  // party unitaries in Schmidt bases
    std::vector<CMatrix> g;              // G_k
    std::vector<CMatrix> f;              // F_k
    CMatrix q;                           // odd rings only
    CMatrix q_tilde;                     // odd rings only
};

// Requires every source to have full Schmidt rank on both sides (square
// sources); throws precondition_error naming the offending source otherwise.
ChainOperators build_chain_operators(const QuantumRingStrategy& s,
                                     const std::vector<PartyUnitary>& units);

// Defining identity of G_k/F_k for one party, checked on the four systems
// (R_{k-1}, L_k, R_k, L_{k+1}): applying the rotated unitary to the two
// neighboring (scaled) states equals applying G_k to maximally entangled
// pairs, and likewise for F_k with the adjoint. Returns the larger residual.
double chain_defining_residual(const ChainOperators& c, int party);

// Full-ring chain identity, zero exactly when the strategy is stabilized
// (parties numbered from 1 here):
//   even n:  (prod of G_even) |Omega> = (prod of F_odd) |Omega>
//   odd n:   (prod of G_even) Lambda^(n)_{R_n} |Omega> =
//            (prod of F_odd) Q_{L_n L_1} |Omega>
// where |Omega> is the chain of maximally entangled pairs.
double chain_equality_residual(const ChainOperators& c);

// Product-chain reduction harness. Builds a cyclic chain of bipartite
// operators A (on systems (0,1), (2,3), ..., odd n additionally (n-1, 0)) and
// B (on systems (1,2), (3,4), ...) that satisfy the interleaved equality,
// checks the equality residual, and reports the operator-Schmidt rank of
// every factor. In adversarial mode one A factor is replaced by an entangling
// operator so the equality must visibly fail. `passed` encodes the expected
// verdict for the chosen mode.
enum class ChainParity { kEven, kOdd };

struct ChainHarnessResult {
    double equality_residual = 0.0;
    std::vector<int> a_ranks;
    std::vector<int> b_ranks;
    bool all_product = false;
    bool passed = false;
};

ChainHarnessResult lemma_chain_harness(std::uint64_t seed, int n_systems,
                                          const std::vector<int>& dims,
                                          ChainParity parity, bool adversarial);

// Dilation of a binary POVM coarse-graining a projector: given E_0 + E_1 = P
// with P a projector and E_i >= 0, produces an isometry-style unitary V on
// H x C^2 and projectors pi_i = V^dag (P x |i><i|) V with <0| pi_i |0> = E_i
// and pi_0 + pi_1 = P x I.
struct NaimarkDilation {
    CMatrix v;
    CMatrix pi0;
    CMatrix pi1;
};

NaimarkDilation naimark_dilate_binary(const CMatrix& e0, const CMatrix& e1,
                                      double tol = kCheckTol);

// Token-function reconstruction for classical strategies. For each source k
// the joint message distribution joint[k](i, j) covers the pair (message i to
// party k, message j to party k+1); response[k](j, l) is party k's output on
// (left message j, right message l), with -1 marking unreachable pairs.
struct TokenSearchInput {
    int n = 0;
    std::vector<RMatrix> joint;
    std::vector<Eigen::MatrixXi> response;
    std::vector<int> tokens;  // N_k per source

    void validate() const;  // alphabet <= 5, tokens <= 3, shapes consistent
};

// to_party[k][i]: token value carried by message i on the R_k wire;
// to_next[k][j]: token value carried by message j on the L_{k+1} wire;
// induced_probs[k][t]: probability source k assigns t tokens to party k.
struct TokenFunctions {
    std::vector<std::vector<int>> to_party;
    std::vector<std::vector<int>> to_next;
    std::vector<std::vector<double>> induced_probs;
};

// Exhaustive search in deterministic lexicographic order for token functions
// satisfying, on the support of the message distributions:
//   (i)  to_party[k][i] + to_next[k][j] = tokens[k]
//   (ii) response[k](j, l) = to_next[k-1][j] + to_party[k][l]
//   (iii) the induced token distribution is consistent on both wires.
// Returns the first satisfying tuple, or nullopt if none exists.
std::optional<TokenFunctions> find_token_functions(const TokenSearchInput& in);

// Re-checks properties (i)-(iii) as plain predicates, independent of the
// search order.
bool verify_token_functions(const TokenFunctions& tf, const TokenSearchInput& in);

// Canonical token-search input of a token strategy: messages are the token
// counts themselves.
TokenSearchInput token_search_input(const TokenStrategy& t);

// Canonical token-counting strategy. Source k emits
//   sum_t sqrt(p_k(t)) |t, N_k - t> (x) |j_k^(t)>
// on (R_k, L_{k+1}) with explicit junk registers (token-major slot order
// (token, junk) on each side; junk defaults to dimension 1), and party k
// projects onto the total received token count. Outcome labels are the
// counts "0", "1", ....
struct SourceJunk {
    int dim_right = 1;
    int dim_left = 1;
    std::vector<CVector> states;  // one per token split, size dim_right*dim_left

    void validate(int n_tokens) const;
};

QuantumRingStrategy canonical_tc_strategy(
    const std::vector<int>& tokens,
    const std::vector<std::vector<double>>& send_right_probs,
    const std::vector<SourceJunk>& junk = {});

// Parity variant: one token per source, p_clockwise[k] is the probability
// (amplitude squared) that source k sends its token to party k+1, and parties
// output the parity of the received count, labels "0"/"1".
QuantumRingStrategy canonical_ptc_strategy(const std::vector<double>& p_clockwise,
                                           const std::vector<SourceJunk>& junk = {});

// The stabilizing unitaries of a canonical strategy: token phases for TC,
// parity signs for PTC.
std::vector<PartyUnitary> canonical_tc_units(const QuantumRingStrategy& s,
                                             int total_tokens);
std::vector<PartyUnitary> canonical_ptc_units(const QuantumRingStrategy& s);

}  // namespace ringcert

#endif
