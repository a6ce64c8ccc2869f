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
#include <map>
#include <string>
#include <vector>

#include "ringcert/errors.hpp"
#include "ringcert/ring.hpp"

using namespace ringcert;

namespace {

CVector basis_vector(int dim, int i) {
    CVector v = CVector::Zero(dim);
    v(i) = 1.0;
    return v;
}

// Total-count projectors on (L, R) with dims (n_left+1, n_right+1): party
// outputs l + r. All operators are diagonal in the computational basis.
PartyMeasurement count_measurement(int n_left, int n_right) {
    int dl = n_left + 1, dr = n_right + 1;
    PartyMeasurement meas;
    for (int c = 0; c <= n_left + n_right; ++c) {
        CMatrix pi = CMatrix::Zero(dl * dr, dl * dr);
        for (int l = 0; l < dl; ++l)
            for (int r = 0; r < dr; ++r)
                if (l + r == c) pi(l * dr + r, l * dr + r) = 1.0;
        meas.emplace_back(std::to_string(c), pi);
    }
    return meas;
}

// Superposition-of-splits source on (R_k, L_{k+1}): sum_t sqrt(p_t) |t, N-t>.
StateVector split_source(const std::vector<double>& probs) {
    int n = static_cast<int>(probs.size()) - 1;
    CVector amp = CVector::Zero((n + 1) * (n + 1));
    for (int t = 0; t <= n; ++t) amp(t * (n + 1) + (n - t)) = std::sqrt(probs[t]);
    return StateVector({n + 1, n + 1}, amp);
}

// Independent enumeration of a TC strategy, written directly against the
// token bookkeeping: source k keeps t_k for party k and hands the rest on.
std::map<std::vector<std::string>, double> enumerate_tc(
    const std::vector<int>& tokens,
    const std::vector<std::vector<double>>& probs) {
    int n = static_cast<int>(tokens.size());
    std::map<std::vector<std::string>, double> table;
    std::vector<int> t(n, 0);
    while (true) {
        double p = 1.0;
        for (int k = 0; k < n; ++k) p *= probs[k][t[k]];
        std::vector<std::string> outcome(n);
        for (int k = 0; k < n; ++k) {
            int prev = (k + n - 1) % n;
            outcome[k] = std::to_string(t[k] + tokens[prev] - t[prev]);
        }
        table[outcome] += p;
        int k = 0;
        while (k < n && t[k] == tokens[k]) t[k++] = 0;
        if (k == n) break;
        ++t[k];
    }
    return table;
}

}  // namespace

TEST_CASE("layout validation and per-party dimensions") {
    RingLayout l;
    l.n = 3;
    l.source_dims = {{2, 3}, {4, 2}, {2, 2}};
    CHECK_NOTHROW(l.validate());
    // Party k measures (L_k, R_k): L_k from source k-1, R_k from source k.
    CHECK(l.party_right_dim(0) == 2);
    CHECK(l.party_left_dim(0) == 2);   // source 3's left output
    CHECK(l.party_right_dim(1) == 4);
    CHECK(l.party_left_dim(1) == 3);   // source 1's left output
    CHECK(l.party_dim(1) == 12);

    RingLayout bad = l;
    bad.n = 2;
    bad.source_dims.resize(2);
    CHECK_THROWS_AS(bad.validate(), validation_error);
}

TEST_CASE("source-major to party-major permutation") {
    // Source-major: R1 L2 R2 L3 R3 L1; party-major: L1 R1 L2 R2 L3 R3.
    CHECK(source_to_party_permutation(3) == std::vector<int>{5, 0, 1, 2, 3, 4});
    std::vector<int> p4 = source_to_party_permutation(4);
    CHECK(p4 == std::vector<int>{7, 0, 1, 2, 3, 4, 5, 6});

    // Basis product state: source k emits |t_k> on R_k and |s_k> on L_{k+1}.
    // After regrouping, party k holds (s_{k-1}, t_k).
    std::vector<int> t = {1, 0, 1}, s = {0, 1, 1};
    CVector v(1);
    v << 1.0;
    StateVector global({1}, v);
    bool first = true;
    for (int k = 0; k < 3; ++k) {
        StateVector src({2, 2}, kron(basis_vector(2, t[k]), basis_vector(2, s[k])));
        global = first ? src : tensor_product(global, src);
        first = false;
    }
    StateVector party = permute_subsystems(global, source_to_party_permutation(3));
    // Party-major tuple (L1,R1,L2,R2,L3,R3) = (s3, t1, s1, t2, s2, t3).
    int idx = 0;
    for (int x : {s[2], t[0], s[0], t[1], s[1], t[2]}) idx = idx * 2 + x;
    CHECK(std::abs(party.amplitudes(idx) - 1.0) < 1e-15);
}

TEST_CASE("quantum distribution is normalized for POVM strategies") {
    Rng rng(101);
    QuantumRingStrategy s;
    s.layout.n = 3;
    s.layout.source_dims = {{2, 2}, {2, 2}, {2, 2}};
    for (int k = 0; k < 3; ++k)
        s.source_states.push_back(StateVector({2, 2}, rng.random_state(4)));
    for (int k = 0; k < 3; ++k) {
        // Two-outcome POVM {E, I - E} with E = U diag(u) U^dag, u in [0,1].
        CMatrix u = random_unitary(4, 200 + k);
        CVector diag(4);
        for (int i = 0; i < 4; ++i) diag(i) = rng.uniform();
        CMatrix e = u * diag.asDiagonal() * u.adjoint();
        PartyMeasurement meas;
        meas.emplace_back("0", e);
        meas.emplace_back("1", CMatrix(CMatrix::Identity(4, 4) - e));
        s.measurements.push_back(meas);
    }
    s.projective = false;
    s.validate();
    OutcomeDistribution d = quantum_distribution(s);
    CHECK(std::abs(d.total() - 1.0) < 1e-10);
    d.validate();
}

TEST_CASE("diagonal strategies reproduce classical token enumeration") {
    // Quantum-classical consistency oracle: with diagonal measurements the
    // Born rule collapses to stochastic enumeration, so the quantum pipeline,
    // the classical pipeline, and a from-scratch enumeration must agree.
    Rng rng(103);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 3 + (trial % 2);
        std::vector<int> tokens(n);
        std::vector<std::vector<double>> probs(n);
        for (int k = 0; k < n; ++k) {
            tokens[k] = rng.uniform_int(1, 2);
            double total = 0.0;
            probs[k].resize(tokens[k] + 1);
            for (double& p : probs[k]) {
                p = 0.05 + rng.uniform();
                total += p;
            }
            for (double& p : probs[k]) p /= total;
        }

        QuantumRingStrategy s;
        s.layout.n = n;
        for (int k = 0; k < n; ++k)
            s.layout.source_dims.emplace_back(tokens[k] + 1, tokens[k] + 1);
        for (int k = 0; k < n; ++k) s.source_states.push_back(split_source(probs[k]));
        for (int k = 0; k < n; ++k) {
            int prev = (k + n - 1) % n;
            s.measurements.push_back(count_measurement(tokens[prev], tokens[k]));
        }
        s.projective = true;
        s.validate();

        TokenStrategy t;
        t.n = n;
        t.mode = TokenMode::TC;
        t.tokens = tokens;
        t.send_right_probs = probs;
        t.validate();

        OutcomeDistribution quantum = quantum_distribution(s);
        OutcomeDistribution classical = classical_distribution(t);
        CHECK(distribution_distance(quantum, classical) < 1e-12);

        auto expected = enumerate_tc(tokens, probs);
        for (const auto& [outcome, p] : expected) {
            CHECK(std::abs(classical.prob(outcome) - p) < 1e-12);
        }
    }
}

TEST_CASE("TC support lives on the total-token shell") {
    Rng rng(107);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 3 + (trial % 3);
        TokenStrategy t;
        t.n = n;
        t.mode = TokenMode::TC;
        int total = 0;
        for (int k = 0; k < n; ++k) {
            int nk = rng.uniform_int(1, 3);
            t.tokens.push_back(nk);
            total += nk;
            std::vector<double> p(nk + 1);
            double sum = 0.0;
            for (double& x : p) {
                x = rng.uniform() + 0.01;
                sum += x;
            }
            for (double& x : p) x /= sum;
            t.send_right_probs.push_back(p);
        }
        OutcomeDistribution d = classical_distribution(t);
        CHECK(std::abs(d.total() - 1.0) < 1e-12);
        CHECK(support_check(d, [&](const std::vector<std::string>& outcome) {
            int sum = 0;
            for (const auto& a : outcome) sum += std::stoi(a);
            return sum == total;
        }));
    }
}

TEST_CASE("PTC support has odd parity on odd rings") {
    Rng rng(109);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 3 + 2 * (trial % 2);  // 3 or 5 parties
        TokenStrategy t;
        t.n = n;
        t.mode = TokenMode::PTC;
        for (int k = 0; k < n; ++k) {
            double p = rng.uniform();
            t.tokens.push_back(1);
            t.send_right_probs.push_back({p, 1.0 - p});
        }
        OutcomeDistribution d = classical_distribution(t);
        CHECK(support_check(d, [&](const std::vector<std::string>& outcome) {
            int parity = 0;
            for (const auto& a : outcome) parity ^= std::stoi(a);
            return parity == 1;
        }));
    }
}

TEST_CASE("coarse graining commutes with marginals") {
    TokenStrategy t;
    t.n = 3;
    t.mode = TokenMode::TC;
    t.tokens = {2, 1, 1};
    t.send_right_probs = {{0.2, 0.5, 0.3}, {0.4, 0.6}, {0.7, 0.3}};
    OutcomeDistribution d = classical_distribution(t);

    // Merge counts into {low, high} per party.
    std::map<std::string, std::string> merge;
    for (int c = 0; c <= 4; ++c)
        merge[std::to_string(c)] = c <= 1 ? "low" : "high";
    std::vector<std::map<std::string, std::string>> maps = {merge, merge, merge};
    OutcomeDistribution g = coarse_grain(d, maps);

    for (int party = 0; party < 3; ++party) {
        auto fine = marginal(d, party);
        auto coarse = marginal(g, party);
        std::map<std::string, double> expected;
        for (const auto& [label, p] : fine) expected[merge.at(label)] += p;
        for (const auto& [label, p] : expected)
            CHECK(std::abs(coarse.at(label) - p) < 1e-12);
    }

    // Maps must cover every label.
    std::vector<std::map<std::string, std::string>> partial = maps;
    partial[0].erase("0");
    CHECK_THROWS_AS(coarse_grain(d, partial), validation_error);
}

TEST_CASE("tiny probabilities clamp to exact zero") {
    double eps = 1e-7;  // squares to 1e-14, below the clamp threshold
    QuantumRingStrategy s;
    s.layout.n = 3;
    s.layout.source_dims = {{2, 2}, {2, 2}, {2, 2}};
    CVector plain = CVector::Zero(4);
    plain(0) = 1.0;
    CVector tilted = CVector::Zero(4);
    tilted(0) = std::sqrt(1.0 - eps * eps);
    tilted(3) = eps;
    s.source_states.push_back(StateVector({2, 2}, plain));
    s.source_states.push_back(StateVector({2, 2}, plain));
    s.source_states.push_back(StateVector({2, 2}, tilted));
    for (int k = 0; k < 3; ++k) {
        CMatrix pi0 = CMatrix::Zero(4, 4);
        pi0(0, 0) = 1.0;
        PartyMeasurement meas;
        meas.emplace_back("0", pi0);
        meas.emplace_back("1", CMatrix(CMatrix::Identity(4, 4) - pi0));
        s.measurements.push_back(meas);
    }
    s.projective = true;
    OutcomeDistribution d = quantum_distribution(s);
    // Full product alphabet present, the eps^2 outcome stored as exact 0.
    CHECK(d.table.size() == 8);
    int nonzero = 0;
    for (const auto& [outcome, p] : d.table) {
        if (p != 0.0) ++nonzero;
        CHECK(p >= 0.0);
    }
    CHECK(nonzero == 1);
    CHECK(d.prob({"0", "0", "0"}) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("strategy and distribution validation reject malformed input") {
    TokenStrategy t;
    t.n = 3;
    t.mode = TokenMode::TC;
    t.tokens = {1, 1, 1};
    t.send_right_probs = {{0.5, 0.6}, {0.5, 0.5}, {0.5, 0.5}};
    CHECK_THROWS_AS(t.validate(), validation_error);

    t.send_right_probs[0] = {0.5, 0.5};
    CHECK_NOTHROW(t.validate());

    OutcomeDistribution d = classical_distribution(t);
    d.table.begin()->second += 0.5;
    CHECK_THROWS_AS(d.validate(), validation_error);
}
