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

#ifndef RINGCERT_RING_HPP
#define RINGCERT_RING_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ringcert/tensor.hpp"

namespace ringcert {

// Ring network without inputs: n parties, n sources. Source k (1-based in the
// math, 0-based in code) feeds its right subsystem R_k to party k and its left
// subsystem L_{k+1} to party k+1 (indices mod n). Party k measures the pair
// (L_k, R_k).
//
// Global subsystem orders used throughout:
//   source-major: R_1, L_2, R_2, L_3, ..., R_n, L_1   (how states are built)
//   party-major:  L_1, R_1, L_2, R_2, ..., L_n, R_n   (how parties measure)
// The permutation between the two is a first-class, tested object.

struct RingLayout {
    int n = 0;
    // dims[k] = {dim R_{k+1}, dim L_{k+2}} for source index k in 0..n-1.
    std::vector<std::pair<int, int>> source_dims;

    void validate() const;  // n >= 3, positive dims
    int party_left_dim(int party) const;   // dim of L_{party+1}
    int party_right_dim(int party) const;  // dim of R_{party+1}
    int party_dim(int party) const;        // dim of L ⊗ R
    std::vector<int> source_major_dims() const;
    std::vector<int> party_major_dims() const;
};

// perm[new_slot] = old_slot, mapping source-major order to party-major order.
std::vector<int> source_to_party_permutation(int n);

// One party's measurement: labeled operators on L_k ⊗ R_k (L most
// significant). Labels are opaque strings, distinct within a party.
using PartyMeasurement = std::vector<std::pair<std::string, CMatrix>>;

struct QuantumRingStrategy {
    RingLayout layout;
    std::vector<StateVector> source_states;        // state k on (R_k, L_{k+1})
    std::vector<PartyMeasurement> measurements;    // measurement k on (L_k, R_k)
    bool projective = false;

    // Checks normalization of every source, POVM completeness and positivity
    // per party, and (if projective) idempotence and mutual orthogonality.
    // Throws validation_error naming the failed check.
    void validate(double tol = kCheckTol) const;
};

// Classical token strategy: source k holds tokens[k] tokens and sends t of
// them to party k (its right neighbor) with probability send_right_probs[k][t],
// the remaining tokens[k]-t to party k+1. TC outputs the received count; PTC
// requires one token per source and outputs the parity of the received count.
enum class TokenMode { TC, PTC };

struct TokenStrategy {
    int n = 0;
    TokenMode mode = TokenMode::TC;
    std::vector<int> tokens;
    std::vector<std::vector<double>> send_right_probs;

    void validate() const;
    int total_tokens() const;
};

// Joint outcome table over per-party label alphabets. Entries below 1e-12 in
// magnitude are clamped to exact 0; the table covers the full product alphabet.
struct OutcomeDistribution {
    std::vector<std::vector<std::string>> party_labels;
    std::map<std::vector<std::string>, double> table;

    double total() const;
    double prob(const std::vector<std::string>& outcome) const;
    void validate(double tol = kCheckTol) const;  // completeness & normalization
};

inline constexpr double kProbClamp = 1e-12;

// P(a_1..a_n) for a quantum strategy: the tensor product of the source states,
// permuted to party-major order, with each party's labeled operator applied
// to its (L_k, R_k) pair. Works for projective and general POVM measurements.
OutcomeDistribution quantum_distribution(const QuantumRingStrategy& s);

// Exact enumeration of a classical token strategy.
OutcomeDistribution classical_distribution(const TokenStrategy& t);

// Merges outcomes party by party: maps[k] sends old label -> new label and
// must cover every label of party k.
OutcomeDistribution coarse_grain(const OutcomeDistribution& d,
                                 const std::vector<std::map<std::string, std::string>>& maps);

// Single-party marginal.
std::map<std::string, double> marginal(const OutcomeDistribution& d, int party);

// True iff every outcome with probability > tol satisfies the predicate.
bool support_check(const OutcomeDistribution& d,
                   const std::function<bool(const std::vector<std::string>&)>& predicate,
                   double tol = kProbClamp);

// Largest |d1 - d2| over the union of outcome tuples.
double distribution_distance(const OutcomeDistribution& a, const OutcomeDistribution& b);

}  // namespace ringcert

#endif
