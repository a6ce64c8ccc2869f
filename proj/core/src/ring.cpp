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

#include "ringcert/ring.hpp"

#include <algorithm>
#include <cmath>

namespace ringcert {

void RingLayout::validate() const {
    if (n < 3) throw validation_error("ring needs at least 3 parties");
    if (static_cast<int>(source_dims.size()) != n)
        throw validation_error("source_dims size must equal n");
    for (const auto& [dr, dl] : source_dims)
        if (dr < 1 || dl < 1) throw validation_error("source dimensions must be >= 1");
}

int RingLayout::party_left_dim(int party) const {
    // L_{k} comes from source k-1 (mod n).
    return source_dims[(party + n - 1) % n].second;
}

int RingLayout::party_right_dim(int party) const {
    return source_dims[party].first;
}

int RingLayout::party_dim(int party) const {
    return party_left_dim(party) * party_right_dim(party);
}

std::vector<int> RingLayout::source_major_dims() const {
    std::vector<int> d;
    for (const auto& [dr, dl] : source_dims) {
        d.push_back(dr);
        d.push_back(dl);
    }
    return d;
}

std::vector<int> RingLayout::party_major_dims() const {
    std::vector<int> d;
    for (int k = 0; k < n; ++k) {
        d.push_back(party_left_dim(k));
        d.push_back(party_right_dim(k));
    }
    return d;
}

std::vector<int> source_to_party_permutation(int n) {
    // Source-major slots: R_1 at 0, L_2 at 1, R_2 at 2, ..., R_n at 2n-2,
    // L_1 at 2n-1. Party-major slot 2k is L_{k+1}, slot 2k+1 is R_{k+1}.
    std::vector<int> perm(2 * n);
    for (int k = 0; k < n; ++k) {
        perm[2 * k] = (k == 0) ? 2 * n - 1 : 2 * k - 1;  // L_{k+1}
        perm[2 * k + 1] = 2 * k;                         // R_{k+1}
    }
    return perm;
}

void QuantumRingStrategy::validate(double tol) const {
    layout.validate();
    if (static_cast<int>(source_states.size()) != layout.n)
        throw validation_error("expected one state per source");
    if (static_cast<int>(measurements.size()) != layout.n)
        throw validation_error("expected one measurement per party");

    for (int k = 0; k < layout.n; ++k) {
        const auto& st = source_states[k];
        const auto [dr, dl] = layout.source_dims[k];
        if (st.dims.size() != 2 || st.dims[0] != dr || st.dims[1] != dl)
            throw validation_error("source " + std::to_string(k + 1) +
                                   ": dims do not match the layout");
        try {
            st.validate(tol);
        } catch (const validation_error& e) {
            throw validation_error("source " + std::to_string(k + 1) + ": " + e.what());
        }
    }

    for (int k = 0; k < layout.n; ++k) {
        const auto& meas = measurements[k];
        const std::string who = "party " + std::to_string(k + 1);
        if (meas.empty()) throw validation_error(who + ": empty measurement");
        const Eigen::Index d = static_cast<Eigen::Index>(layout.party_dim(k));
        CMatrix sum = CMatrix::Zero(d, d);
        std::vector<std::string> labels;
        for (const auto& [label, op] : meas) {
            if (op.rows() != d || op.cols() != d)
                throw validation_error(who + ": operator '" + label +
                                       "' has wrong dimension");
            if (!op.allFinite())
                throw validation_error(who + ": operator '" + label + "' not finite");
            if (max_abs(op - op.adjoint()) > tol)
                throw validation_error(who + ": operator '" + label + "' not Hermitian");
            Eigen::SelfAdjointEigenSolver<CMatrix> es((op + op.adjoint()) / 2.0);
            if (es.eigenvalues().minCoeff() < -tol)
                throw validation_error(who + ": operator '" + label +
                                       "' is not positive semidefinite");
            labels.push_back(label);
            sum += op;
        }
        std::sort(labels.begin(), labels.end());
        if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
            throw validation_error(who + ": duplicate outcome labels");
        if (max_abs(sum - CMatrix::Identity(d, d)) > tol)
            throw validation_error(who + ": operators do not sum to the identity");
        if (projective) {
            for (const auto& [label, op] : meas) {
                if (max_abs(op * op - op) > tol)
                    throw validation_error(who + ": operator '" + label +
                                           "' is not idempotent");
                for (const auto& [label2, op2] : meas) {
                    if (label2 == label) continue;
                    if (max_abs(op * op2) > tol)
                        throw validation_error(who + ": operators '" + label + "', '" +
                                               label2 + "' are not orthogonal");
                }
            }
        }
    }
}

namespace {

// Odometer over per-party outcome indices.
bool advance(std::vector<size_t>& idx, const std::vector<size_t>& sizes) {
    for (int k = static_cast<int>(idx.size()) - 1; k >= 0; --k) {
        if (++idx[k] < sizes[k]) return true;
        idx[k] = 0;
    }
    return false;
}

double clamp_prob(double p) { return std::abs(p) < kProbClamp ? 0.0 : p; }

}  // namespace

OutcomeDistribution quantum_distribution(const QuantumRingStrategy& s) {
    s.validate();
    const int n = s.layout.n;

    StateVector global = s.source_states[0];
    for (int k = 1; k < n; ++k) global = tensor_product(global, s.source_states[k]);
    global = permute_subsystems(global, source_to_party_permutation(n));
    const std::vector<int>& dims = global.dims;

    OutcomeDistribution out;
    for (int k = 0; k < n; ++k) {
        std::vector<std::string> labels;
        for (const auto& [label, _] : s.measurements[k]) labels.push_back(label);
        out.party_labels.push_back(std::move(labels));
    }

    std::vector<size_t> sizes(n), idx(n, 0);
    for (int k = 0; k < n; ++k) sizes[k] = s.measurements[k].size();

    do {
        CVector phi = global.amplitudes;
        std::vector<std::string> outcome(n);
        for (int k = 0; k < n; ++k) {
            const auto& [label, op] = s.measurements[k][idx[k]];
            outcome[k] = label;
            phi = apply_on_slots(phi, dims, op, {2 * k, 2 * k + 1});
        }
        double p = (global.amplitudes.adjoint() * phi)(0).real();
        out.table[outcome] = clamp_prob(p);
    } while (advance(idx, sizes));

    out.validate();
    return out;
}

void TokenStrategy::validate() const {
    if (n < 3) throw validation_error("ring needs at least 3 parties");
    if (static_cast<int>(tokens.size()) != n ||
        static_cast<int>(send_right_probs.size()) != n)
        throw validation_error("tokens and send_right_probs must have one entry per source");
    for (int k = 0; k < n; ++k) {
        if (tokens[k] < 1) throw validation_error("each source needs at least 1 token");
        if (mode == TokenMode::PTC && tokens[k] != 1)
            throw validation_error("parity mode requires exactly 1 token per source");
        const auto& p = send_right_probs[k];
        if (static_cast<int>(p.size()) != tokens[k] + 1)
            throw validation_error("source " + std::to_string(k + 1) +
                                   ": need tokens+1 probabilities");
        double sum = 0.0;
        for (double x : p) {
            if (!(x >= 0.0 && x <= 1.0))
                throw validation_error("probabilities must lie in [0, 1]");
            sum += x;
        }
        if (std::abs(sum - 1.0) > kCheckTol)
            throw validation_error("source " + std::to_string(k + 1) +
                                   ": probabilities must sum to 1");
    }
}

int TokenStrategy::total_tokens() const {
    int total = 0;
    for (int t : tokens) total += t;
    return total;
}

OutcomeDistribution classical_distribution(const TokenStrategy& t) {
    t.validate();
    const int n = t.n;

    OutcomeDistribution out;
    for (int k = 0; k < n; ++k) {
        std::vector<std::string> labels;
        if (t.mode == TokenMode::PTC) {
            labels = {"0", "1"};
        } else {
            // Party k can receive 0 .. tokens[k-1] + tokens[k].
            int hi = t.tokens[(k + n - 1) % n] + t.tokens[k];
            for (int a = 0; a <= hi; ++a) labels.push_back(std::to_string(a));
        }
        out.party_labels.push_back(std::move(labels));
    }
    std::vector<size_t> sizes(n);
    std::vector<size_t> idx(n, 0);
    for (int k = 0; k < n; ++k) sizes[k] = out.party_labels[k].size();
    do {
        std::vector<std::string> outcome(n);
        for (int k = 0; k < n; ++k) outcome[k] = out.party_labels[k][idx[k]];
        out.table[outcome] = 0.0;
    } while (advance(idx, sizes));

    // Enumerate the independent token splits: source k sends split[k] tokens
    // to party k, the rest to party k+1.
    std::vector<size_t> split(n, 0);
    std::vector<size_t> split_sizes(n);
    for (int k = 0; k < n; ++k) split_sizes[k] = t.tokens[k] + 1;
    do {
        double p = 1.0;
        for (int k = 0; k < n; ++k) p *= t.send_right_probs[k][split[k]];
        if (p == 0.0) continue;
        std::vector<std::string> outcome(n);
        for (int k = 0; k < n; ++k) {
            int received = static_cast<int>(split[k]) +
                           (t.tokens[(k + n - 1) % n] -
                            static_cast<int>(split[(k + n - 1) % n]));
            if (t.mode == TokenMode::PTC) received %= 2;
            outcome[k] = std::to_string(received);
        }
        out.table[outcome] += p;
    } while (advance(split, split_sizes));

    for (auto& [_, p] : out.table) p = clamp_prob(p);
    out.validate();
    return out;
}

double OutcomeDistribution::total() const {
    double s = 0.0;
    for (const auto& [_, p] : table) s += p;
    return s;
}

double OutcomeDistribution::prob(const std::vector<std::string>& outcome) const {
    auto it = table.find(outcome);
    if (it == table.end())
        throw validation_error("outcome tuple not present in the table");
    return it->second;
}

void OutcomeDistribution::validate(double tol) const {
    size_t expected = 1;
    for (const auto& labels : party_labels) {
        if (labels.empty()) throw validation_error("party with empty alphabet");
        expected *= labels.size();
    }
    if (table.size() != expected)
        throw validation_error("table does not cover the full product alphabet");
    for (const auto& [outcome, p] : table) {
        if (outcome.size() != party_labels.size())
            throw validation_error("outcome tuple of wrong length");
        if (!(p >= 0.0) || !std::isfinite(p))
            throw validation_error("negative or non-finite probability");
        for (size_t k = 0; k < outcome.size(); ++k) {
            const auto& alphabet = party_labels[k];
            if (std::find(alphabet.begin(), alphabet.end(), outcome[k]) == alphabet.end())
                throw validation_error("outcome label missing from party alphabet");
        }
    }
    if (std::abs(total() - 1.0) > tol)
        throw validation_error("probabilities sum to " + std::to_string(total()));
}

OutcomeDistribution coarse_grain(
    const OutcomeDistribution& d,
    const std::vector<std::map<std::string, std::string>>& maps) {
    if (maps.size() != d.party_labels.size())
        throw validation_error("need one label map per party");
    OutcomeDistribution out;
    out.party_labels.resize(d.party_labels.size());
    for (size_t k = 0; k < maps.size(); ++k) {
        for (const auto& label : d.party_labels[k]) {
            auto it = maps[k].find(label);
            if (it == maps[k].end())
                throw validation_error("party " + std::to_string(k + 1) +
                                       ": label '" + label + "' not mapped");
            auto& dst = out.party_labels[k];
            if (std::find(dst.begin(), dst.end(), it->second) == dst.end())
                dst.push_back(it->second);
        }
        std::sort(out.party_labels[k].begin(), out.party_labels[k].end());
    }
    for (const auto& [outcome, p] : d.table) {
        std::vector<std::string> mapped(outcome.size());
        for (size_t k = 0; k < outcome.size(); ++k) mapped[k] = maps[k].at(outcome[k]);
        out.table[mapped] += p;
    }
    // Fill absent combinations with exact zeros so the table stays complete.
    std::vector<size_t> sizes(out.party_labels.size());
    std::vector<size_t> idx(out.party_labels.size(), 0);
    for (size_t k = 0; k < sizes.size(); ++k) sizes[k] = out.party_labels[k].size();
    do {
        std::vector<std::string> outcome(sizes.size());
        for (size_t k = 0; k < sizes.size(); ++k) outcome[k] = out.party_labels[k][idx[k]];
        out.table.try_emplace(outcome, 0.0);
    } while (advance(idx, sizes));
    for (auto& [_, p] : out.table) p = clamp_prob(p);
    out.validate();
    return out;
}

std::map<std::string, double> marginal(const OutcomeDistribution& d, int party) {
    if (party < 0 || static_cast<size_t>(party) >= d.party_labels.size())
        throw validation_error("party index out of range");
    std::map<std::string, double> out;
    for (const auto& label : d.party_labels[party]) out[label] = 0.0;
    for (const auto& [outcome, p] : d.table) out[outcome[party]] += p;
    return out;
}

bool support_check(const OutcomeDistribution& d,
                   const std::function<bool(const std::vector<std::string>&)>& predicate,
                   double tol) {
    for (const auto& [outcome, p] : d.table)
        if (p > tol && !predicate(outcome)) return false;
    return true;
}

double distribution_distance(const OutcomeDistribution& a, const OutcomeDistribution& b) {
    double m = 0.0;
    for (const auto& [outcome, p] : a.table) {
        auto it = b.table.find(outcome);
        double q = (it == b.table.end()) ? 0.0 : it->second;
        m = std::max(m, std::abs(p - q));
    }
    for (const auto& [outcome, q] : b.table)
        if (!a.table.count(outcome)) m = std::max(m, std::abs(q));
    return m;
}

}  // namespace ringcert
