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

// Release gate: every check below must hold before a build ships. One line
// of output per criterion; the process exits nonzero if any line is [FAIL].

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ringcert/certify.hpp"
#include "ringcert/rgb4.hpp"
#include "ringcert/rigidity.hpp"
#include "ringcert/ring.hpp"
#include "ringcert/verify.hpp"

namespace {

using namespace ringcert;
using Clock = std::chrono::steady_clock;

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", value);
    return buf;
}

void report(int index, const char* label, bool ok, const std::string& detail) {
    std::printf("[%s] %d. %s (%s)\n", ok ? "PASS" : "FAIL", index, label,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::vector<double> angle_grid_16() {
    std::vector<double> grid;
    for (int k = 1; k <= 15; ++k) grid.push_back(0.05 * k);
    grid.push_back(kPi / 4.0);
    return grid;
}

std::vector<std::map<std::string, std::string>> merge_one_maps() {
    std::map<std::string, std::string> merge{
        {"0", "0"}, {"1_0", "1"}, {"1_1", "1"}, {"2", "2"}};
    return {merge, merge, merge};
}

TokenStrategy half_token_triangle() {
    TokenStrategy ts;
    ts.mode = TokenMode::TC;
    ts.n = 3;
    ts.tokens = {1, 1, 1};
    ts.send_right_probs = {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}};
    return ts;
}

std::vector<int> seeded_perm(int size, Rng& rng) {
    std::vector<int> perm(size);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = size - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);
    return perm;
}

std::vector<int> inverse_perm(const std::vector<int>& perm) {
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
    return inv;
}

void criterion_1_simulation_matches_closed_form() {
    const auto t0 = Clock::now();
    double max_dev = 0.0;
    for (double theta : angle_grid_16()) {
        const OutcomeDistribution closed = rgb4_closed_form(theta);
        const OutcomeDistribution simulated =
            quantum_distribution(rgb4_strategy(theta).strategy);
        max_dev = std::max(max_dev, distribution_distance(simulated, closed));
    }
    const double dt = seconds_since(t0);
    report(1, "four-outcome simulation matches the closed form",
           max_dev <= 1e-10 && dt < 5.0,
           "max deviation " + fmt(max_dev) + ", " +
               fmt(dt) + " s, caps 1e-10 / 5 s");
}

void criterion_2_coarse_graining() {
    const OutcomeDistribution half = classical_distribution(half_token_triangle());
    double max_dev = 0.0;
    bool supports = true;
    for (double theta : angle_grid_16()) {
        const OutcomeDistribution coarse =
            coarse_grain(rgb4_closed_form(theta), merge_one_maps());
        max_dev = std::max(max_dev, distribution_distance(coarse, half));
        supports = supports &&
                   support_check(coarse, [](const std::vector<std::string>& outcome) {
                       int sum = 0;
                       for (const auto& label : outcome) sum += std::stoi(label);
                       return sum == 3;
                   });
    }
    report(2, "coarse-graining gives the half-split token distribution",
           max_dev <= 1e-12 && supports,
           "max deviation " + fmt(max_dev) + ", support a+b+c=3 " +
               (supports ? "holds" : "violated") + ", cap 1e-12");
}

void criterion_3_floor_extrema() {
    const auto [theta_star, r_star] = r_floor_maximize();
    const double root = r_floor_root();
    const bool ok = std::abs(theta_star - 0.36) <= 0.01 &&
                    std::abs(r_star - 0.025) <= 5e-4 &&
                    std::abs(root - 0.48) <= 0.01;
    report(3, "floor maximum and root land at the expected angles", ok,
           "theta* = " + fmt(theta_star) + " (0.36 +- 0.01), r* = " +
               fmt(r_star) + " (0.025 +- 5e-4), root = " +
               fmt(root) + " (0.48 +- 0.01)");
}

void criterion_4_certified_bounds() {
    const auto [theta_star, r_star] = r_floor_maximize();
    (void)theta_star;
    const auto t0 = Clock::now();
    const double eof = entanglement_bound(r_star);
    const double hmin = hmin_bound(r_star);
    const double dt = seconds_since(t0);
    report(4, "certified entanglement and randomness at the floor maximum",
           eof >= 0.025 && hmin >= 0.037 && hmin <= 0.039 && dt < 1.0,
           "eof " + fmt(eof) + " >= 0.025, hmin " +
               fmt(hmin) + " in [0.037, 0.039], " +
               fmt(dt) + " s < 1 s");
}

void criterion_5_coherence_oracle() {
    double max_dev = 0.0;
    bool consistent = true;
    std::string note;
    for (int j = 1; j <= 20; ++j) {
        const double theta = (kPi / 4.0) * j / 20.0;
        const double ideal = std::pow(std::sin(2.0 * theta), 3) / 4.0;
        try {
            max_dev = std::max(max_dev,
                               std::abs(coherence_r(rgb4_strategy(theta)) - ideal));
        } catch (const std::exception& e) {
            consistent = false;
            note = e.what();
            break;
        }
    }
    bool dominates = true;
    for (double theta = 0.001; theta < 0.48; theta += 0.001) {
        const double ideal = std::pow(std::sin(2.0 * theta), 3) / 4.0;
        dominates = dominates && ideal + 1e-12 >= r_lower_bound(theta);
    }
    report(5, "coherence equals its closed form and dominates the floor",
           consistent && max_dev <= 1e-10 && dominates,
           consistent ? "max deviation " + fmt(max_dev) +
                            " <= 1e-10 on 20 angles, floor dominated: " +
                            (dominates ? "yes" : "no")
                      : "eight-term consistency failed: " + note);
}

void criterion_6_feasibility_oracle() {
    const auto t0 = Clock::now();
    double worst_margin = 1.0;
    for (int j = 0; j < 20; ++j) {
        const double theta = 0.05 + 0.4 * (j + 0.5) / 20.0;
        const double r_min = r_feasibility_oracle(theta);
        worst_margin = std::min(worst_margin, r_min - r_lower_bound(theta));
    }
    const double dt = seconds_since(t0);
    report(6, "feasibility bisection never undercuts the floor",
           worst_margin >= -1e-9 && dt < 60.0,
           "worst margin " + fmt(worst_margin) + " >= -1e-9, " +
               fmt(dt) + " s < 60 s");
}

void criterion_7_bound_oracles() {
    double eof_dev = 0.0;
    double xy_dev = 0.0;
    for (double r : {0.004, 0.015, 0.025, 0.1, 0.2}) {
        eof_dev = std::max(eof_dev, std::abs(entanglement_bound_oracle(r) -
                                             entanglement_bound(r)));
        xy_dev = std::max(xy_dev,
                          std::abs(hmin_xy_oracle(r) - std::sqrt(4.0 * r)));
    }
    report(7, "grid oracles agree with the closed-form bounds",
           eof_dev <= 1e-6 && xy_dev <= 1e-4,
           "eof oracle deviation " + fmt(eof_dev) +
               " <= 1e-6, xy oracle deviation " + fmt(xy_dev) +
               " <= 1e-4");
}

void criterion_8_rigidity_suites() {
    const auto t0 = Clock::now();
    const VerificationReport lemmas = run_lemma_suite(1, 100, {2, 3});
    const VerificationReport rigidity = run_rigidity_suite(1, 50, {2, 3});
    const double dt = seconds_since(t0);
    const bool ok = lemmas.ok() && rigidity.ok() &&
                    lemmas.max_residual <= 1e-10 && dt < 60.0;
    report(8, "chain, classifier, dilation, and stabilizer suites pass", ok,
           "lemma failures " + std::to_string(lemmas.failures.size()) +
               ", residual " + fmt(lemmas.max_residual) +
               "; rigidity failures " + std::to_string(rigidity.failures.size()) +
               ", residual " + fmt(rigidity.max_residual) + "; " +
               fmt(dt) + " s < 60 s");
}

void criterion_9_token_functions() {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string note = "identity, relabeled, and uniform cases all behaved";

    // Canonical triangle: the lexicographic search must land on the identity.
    {
        TokenStrategy ts = half_token_triangle();
        ts.send_right_probs = {{0.3, 0.7}, {0.5, 0.5}, {0.25, 0.75}};
        const TokenSearchInput in = token_search_input(ts);
        const auto tf = find_token_functions(in);
        if (!tf || !verify_token_functions(*tf, in)) {
            ok = false;
            note = "canonical search failed";
        } else {
            for (int k = 0; k < 3 && ok; ++k)
                if (tf->to_party[k] != std::vector<int>{0, 1} ||
                    tf->to_next[k] != std::vector<int>{0, 1}) {
                    ok = false;
                    note = "canonical search returned non-identity functions";
                }
        }
    }

    // Relabeled wires: the recovered functions must invert the permutations.
    if (ok) {
        TokenStrategy ts;
        ts.mode = TokenMode::TC;
        ts.n = 3;
        ts.tokens = {2, 2, 2};
        ts.send_right_probs = {{0.2, 0.3, 0.5}, {0.5, 0.3, 0.2}, {0.1, 0.6, 0.3}};
        const TokenSearchInput base = token_search_input(ts);

        Rng rng(20260819);
        std::vector<std::vector<int>> right(3), left(3);
        for (int k = 0; k < 3; ++k) {
            right[k] = seeded_perm(3, rng);
            left[k] = seeded_perm(3, rng);
        }
        TokenSearchInput relabeled = base;
        for (int k = 0; k < 3; ++k) {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    relabeled.joint[k](right[k][i], left[k][j]) = base.joint[k](i, j);
            const int prev = (k + 2) % 3;
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l)
                    relabeled.response[k](left[prev][j], right[k][l]) =
                        base.response[k](j, l);
        }
        const auto tf = find_token_functions(relabeled);
        if (!tf || !verify_token_functions(*tf, relabeled)) {
            ok = false;
            note = "relabeled search failed";
        } else {
            for (int k = 0; k < 3 && ok; ++k)
                if (tf->to_party[k] != inverse_perm(right[k]) ||
                    tf->to_next[k] != inverse_perm(left[k])) {
                    ok = false;
                    note = "relabeled search did not invert the relabeling";
                }
        }
    }

    // Uniform messages admit no token interpretation.
    if (ok) {
        TokenSearchInput in;
        in.n = 3;
        in.tokens = {1, 1, 1};
        for (int k = 0; k < 3; ++k) {
            in.joint.push_back(RMatrix::Constant(2, 2, 0.25));
            Eigen::MatrixXi resp(2, 2);
            resp << 0, 1, 1, 2;
            in.response.push_back(resp);
        }
        if (find_token_functions(in)) {
            ok = false;
            note = "uniform input unexpectedly admitted token functions";
        }
    }

    const double dt = seconds_since(t0);
    report(9, "token-function search recovers exactly the right relabelings",
           ok && dt < 10.0, note + ", " + fmt(dt) + " s < 10 s");
}

}  // namespace

int main() {
    std::printf("ringcert acceptance gate\n");
    criterion_1_simulation_matches_closed_form();
    criterion_2_coarse_graining();
    criterion_3_floor_extrema();
    criterion_4_certified_bounds();
    criterion_5_coherence_oracle();
    criterion_6_feasibility_oracle();
    criterion_7_bound_oracles();
    criterion_8_rigidity_suites();
    criterion_9_token_functions();
    if (g_failures == 0) {
        std::printf("all 9 criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
