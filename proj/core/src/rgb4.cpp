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

#include "ringcert/rgb4.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ringcert {

namespace {

const std::vector<std::string> kRgb4Labels = {"0", "1_0", "1_1", "2"};

std::string one_label(int i) { return i == 0 ? "1_0" : "1_1"; }

}  // namespace

Rgb4Params::Rgb4Params(double theta_in) : theta(theta_in) {
    if (!(theta >= 0.0 && theta <= M_PI / 4 + 1e-15))
        throw domain_error("theta must lie in [0, pi/4]");
    u0 = std::cos(theta);
    v0 = std::sin(theta);
    u1 = v0;
    v1 = -u0;
}

OutcomeDistribution rgb4_closed_form(double theta) {
    Rgb4Params p(theta);

    OutcomeDistribution d;
    d.party_labels = {kRgb4Labels, kRgb4Labels, kRgb4Labels};
    for (const auto& a : kRgb4Labels)
        for (const auto& b : kRgb4Labels)
            for (const auto& c : kRgb4Labels) d.table[{a, b, c}] = 0.0;

    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                double amp = p.u(i) * p.u(j) * p.u(k) + p.v(i) * p.v(j) * p.v(k);
                d.table[{one_label(i), one_label(j), one_label(k)}] = amp * amp / 8.0;
            }
    for (int i = 0; i < 2; ++i) {
        double pu = p.u(i) * p.u(i) / 8.0;
        double pv = p.v(i) * p.v(i) / 8.0;
        // (a,b,c) -> (c,a,b) cyclic images of the two mixed patterns.
        d.table[{one_label(i), "0", "2"}] = pu;
        d.table[{"2", one_label(i), "0"}] = pu;
        d.table[{"0", "2", one_label(i)}] = pu;
        d.table[{one_label(i), "2", "0"}] = pv;
        d.table[{"0", one_label(i), "2"}] = pv;
        d.table[{"2", "0", one_label(i)}] = pv;
    }
    d.validate();
    return d;
}

CanonicalRgb4Strategy rgb4_strategy(double theta, const std::vector<SourceJunk>& junk) {
    Rgb4Params p(theta);

    CanonicalRgb4Strategy out;
    out.theta = theta;
    out.junk = junk;
    if (out.junk.empty()) {
        out.junk.resize(3);
        for (auto& j : out.junk) j.states.assign(2, CVector::Ones(1));
    }
    if (out.junk.size() != 3)
        throw validation_error("need one junk description per source");

    out.strategy = canonical_tc_strategy({1, 1, 1},
                                         {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}},
                                         out.junk);

    // Swap the token-count measurement for the four-outcome one; outcome
    // "1_i" projects onto u_i|01> + v_i|10> on the (left, right) token pair.
    CVector one_bar0(4), one_bar1(4);
    one_bar0 << 0.0, p.u0, p.v0, 0.0;
    one_bar1 << 0.0, p.u1, p.v1, 0.0;
    CMatrix pi_zero = CMatrix::Zero(4, 4), pi_two = CMatrix::Zero(4, 4);
    pi_zero(0, 0) = 1.0;
    pi_two(3, 3) = 1.0;
    const std::vector<std::pair<std::string, CMatrix>> token_ops = {
        {"0", pi_zero},
        {"1_0", one_bar0 * one_bar0.adjoint()},
        {"1_1", one_bar1 * one_bar1.adjoint()},
        {"2", pi_two}};

    for (int party = 0; party < 3; ++party) {
        const int prev = (party + 2) % 3;
        const std::vector<int> pdims = {2, out.junk[prev].dim_left, 2,
                                        out.junk[party].dim_right};
        PartyMeasurement meas;
        for (const auto& [label, op] : token_ops)
            meas.emplace_back(label, embed_operator(op, pdims, {0, 2}));
        out.strategy.measurements[party] = std::move(meas);
    }
    out.strategy.validate();
    return out;
}

std::pair<StateVector, StateVector> global_token_states(
    const CanonicalRgb4Strategy& s) {
    CanonicalRgb4Strategy rebuilt = rgb4_strategy(s.theta, s.junk);
    if (s.strategy.layout.source_dims != rebuilt.strategy.layout.source_dims)
        throw validation_error("strategy layout does not match its construction data");
    for (int k = 0; k < 3; ++k) {
        if ((s.strategy.source_states[k].amplitudes -
             rebuilt.strategy.source_states[k].amplitudes)
                .norm() > kStructuralTol)
            throw validation_error("strategy is not in canonical form");
        const auto& meas = s.strategy.measurements[k];
        const auto& ref = rebuilt.strategy.measurements[k];
        if (meas.size() != ref.size())
            throw validation_error("strategy is not in canonical form");
        for (const auto& [label, op] : ref) {
            auto it = std::find_if(meas.begin(), meas.end(),
                                   [&](const auto& e) { return e.first == label; });
            if (it == meas.end() || max_abs(it->second - op) > kStructuralTol)
                throw validation_error("strategy is not in canonical form");
        }
    }

    auto branch_state = [&](int t) {
        StateVector global;
        for (int k = 0; k < 3; ++k) {
            const auto& j = s.junk[k];
            const int dr = 2 * j.dim_right, dl = 2 * j.dim_left;
            CVector amp = CVector::Zero(static_cast<Eigen::Index>(dr) * dl);
            for (int a = 0; a < j.dim_right; ++a)
                for (int b = 0; b < j.dim_left; ++b)
                    amp((t * j.dim_right + a) * dl + (1 - t) * j.dim_left + b) =
                        j.states[t](a * j.dim_left + b);
            StateVector part({dr, dl}, std::move(amp));
            global = (k == 0) ? part : tensor_product(global, part);
        }
        return permute_subsystems(global, source_to_party_permutation(3));
    };
    // t = 0: every source passes its token onward, each party sees |10>.
    return {branch_state(0), branch_state(1)};
}

namespace {

const CMatrix& labeled_op(const QuantumRingStrategy& s, int party,
                          const std::string& label) {
    for (const auto& [name, op] : s.measurements[party])
        if (name == label) return op;
    throw validation_error("party " + std::to_string(party + 1) +
                           " has no outcome '" + label + "'");
}

// <Psi^c| Pi^{1_i} Pi^{1_j} Pi^{1_k} |Psi^a> for one sign choice.
Complex coherence_term(const CanonicalRgb4Strategy& s, const StateVector& psi_c,
                       const StateVector& psi_a, int i, int j, int k) {
    const std::vector<int> dims = psi_a.dims;
    const int choice[3] = {i, j, k};
    CVector phi = psi_a.amplitudes;
    for (int party = 0; party < 3; ++party) {
        const CMatrix& op = labeled_op(s.strategy, party, one_label(choice[party]));
        phi = apply_on_slots(phi, dims, op, {2 * party, 2 * party + 1});
    }
    return psi_c.amplitudes.dot(phi);
}

}  // namespace

double coherence_r(const CanonicalRgb4Strategy& s) {
    auto [psi_c, psi_a] = global_token_states(s);
    double values[8];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                double sign = ((i + j + k) % 2 == 0) ? 1.0 : -1.0;
                values[4 * i + 2 * j + k] =
                    sign * 2.0 * coherence_term(s, psi_c, psi_a, i, j, k).real();
            }
    auto [lo, hi] = std::minmax_element(std::begin(values), std::end(values));
    double mean = 0.0;
    for (double v : values) mean += v / 8.0;
    if (*hi - *lo > kCheckTol) {
        std::ostringstream msg;
        msg << "sign-adjusted coherence terms disagree:";
        for (double v : values) msg << " " << v;
        throw consistency_error(msg.str());
    }
    return mean;
}

Rgb4ConsistencyReport consistency_probabilities(const CanonicalRgb4Strategy& s) {
    auto [psi_c, psi_a] = global_token_states(s);
    OutcomeDistribution dist = quantum_distribution(s.strategy);
    double r = coherence_r(s);
    const std::vector<int>& dims = psi_a.dims;

    Rgb4ConsistencyReport report;
    auto record = [&](const std::string& name, double residual) {
        report.checks.emplace_back(name, residual);
        report.max_residual = std::max(report.max_residual, residual);
    };
    auto project = [&](const CVector& v, int party, int i) {
        const CMatrix& op = labeled_op(s.strategy, party, one_label(i));
        return apply_on_slots(v, dims, op, {2 * party, 2 * party + 1});
    };

    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                const int choice[3] = {i, j, k};
                CVector sum = psi_c.amplitudes + psi_a.amplitudes;
                CVector pc = psi_c.amplitudes, pa = psi_a.amplitudes;
                for (int party = 0; party < 3; ++party) {
                    sum = project(sum, party, choice[party]);
                    pc = project(pc, party, choice[party]);
                    pa = project(pa, party, choice[party]);
                }
                double p = dist.prob({one_label(i), one_label(j), one_label(k)});
                std::string tuple =
                    one_label(i) + "," + one_label(j) + "," + one_label(k);
                record("P(" + tuple + ") vs projected sum",
                       std::abs(p - sum.squaredNorm() / 8.0));
                double sign = ((i + j + k) % 2 == 0) ? 1.0 : -1.0;
                record("8 P(" + tuple + ") vs q_c + q_a + sign r",
                       std::abs(8.0 * p - (pc.squaredNorm() + pa.squaredNorm() +
                                           sign * r)));
            }

    for (int i = 0; i < 2; ++i)
        for (int party = 0; party < 3; ++party) {
            std::vector<std::string> tuple_u(3), tuple_v(3);
            tuple_u[party] = one_label(i);
            tuple_u[(party + 1) % 3] = "0";
            tuple_u[(party + 2) % 3] = "2";
            tuple_v[party] = one_label(i);
            tuple_v[(party + 1) % 3] = "2";
            tuple_v[(party + 2) % 3] = "0";
            double qu = project(psi_a.amplitudes, party, i).squaredNorm() / 8.0;
            double qv = project(psi_c.amplitudes, party, i).squaredNorm() / 8.0;
            record("P(" + tuple_u[0] + "," + tuple_u[1] + "," + tuple_u[2] +
                       ") vs anticlockwise overlap",
                   std::abs(dist.prob(tuple_u) - qu));
            record("P(" + tuple_v[0] + "," + tuple_v[1] + "," + tuple_v[2] +
                       ") vs clockwise overlap",
                   std::abs(dist.prob(tuple_v) - qv));
        }
    return report;
}

}  // namespace ringcert
