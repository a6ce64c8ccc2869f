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

#include "ringcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ringcert/entropy.hpp"
#include "ringcert/errors.hpp"
#include "ringcert/rgb4.hpp"

namespace ringcert {

namespace {

constexpr double kThetaSup = 0.48;

double r_ideal_closed(double theta) {
    const double s = std::sin(2.0 * theta);
    return s * s * s / 4.0;
}

}  // namespace

double r_lower_bound(double theta) {
    if (!(theta > 0.0) || !(theta <= kThetaSup))
        throw domain_error("r_lower_bound: theta must lie in (0, 0.48]");
    const double s = std::sin(theta);
    return 0.5 * s * s * s *
           (3.0 * std::cos(theta) + std::cos(3.0 * theta) - 6.0 * s);
}

std::pair<double, double> r_floor_maximize(double resolution) {
    if (!(resolution >= 1e-7) || !(resolution <= 1e-2))
        throw domain_error("r_floor_maximize: resolution must be in [1e-7, 1e-2]");
    // Coarse scan.  The floor is smooth and single-peaked on (0, 0.48), so a
    // grid pass followed by golden-section refinement is reliable.
    double best_theta = resolution;
    double best_value = -std::numeric_limits<double>::infinity();
    for (double t = resolution; t < kThetaSup; t += resolution) {
        const double value = r_lower_bound(t);
        if (value > best_value) {
            best_value = value;
            best_theta = t;
        }
    }
    double lo = std::max(best_theta - resolution, resolution / 2.0);
    double hi = std::min(best_theta + resolution, kThetaSup);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - gr * (hi - lo);
    double b = lo + gr * (hi - lo);
    double fa = r_lower_bound(a);
    double fb = r_lower_bound(b);
    while (hi - lo > 1e-12) {
        if (fa > fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - gr * (hi - lo);
            fa = r_lower_bound(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + gr * (hi - lo);
            fb = r_lower_bound(b);
        }
    }
    const double theta_star = (lo + hi) / 2.0;
    return {theta_star, r_lower_bound(theta_star)};
}

double r_floor_root(double tol) {
    if (!(tol > 0.0)) throw domain_error("r_floor_root: tol must be positive");
    double lo = 0.4;   // floor positive here
    double hi = 0.5;   // floor negative here
    const double s0 = std::sin(lo);
    const double flo = 0.5 * s0 * s0 * s0 *
                       (3.0 * std::cos(lo) + std::cos(3.0 * lo) - 6.0 * s0);
    const double s1 = std::sin(hi);
    const double fhi = 0.5 * s1 * s1 * s1 *
                       (3.0 * std::cos(hi) + std::cos(3.0 * hi) - 6.0 * s1);
    if (!(flo > 0.0) || !(fhi < 0.0))
        throw consistency_error("r_floor_root: bracket does not straddle the root");
    while (hi - lo > tol) {
        const double mid = (lo + hi) / 2.0;
        const double s = std::sin(mid);
        const double f = 0.5 * s * s * s *
                         (3.0 * std::cos(mid) + std::cos(3.0 * mid) - 6.0 * s);
        if (f > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2.0;
}

FeasibilityProblem::FeasibilityProblem(double theta_in) : theta(theta_in) {
    if (!(theta_in > 0.0) || !(theta_in < M_PI / 4.0 + 1e-15))
        throw domain_error("FeasibilityProblem: theta must lie in (0, pi/4]");
    u = std::cos(theta_in);
    v = std::sin(theta_in);
}

std::array<double, 4> FeasibilityProblem::box_radii(double r) const {
    const double u2 = u * u, u3 = u2 * u;
    const double v2 = v * v, v3 = v2 * v;
    const double s_plus = u3 + v3, s_minus = u3 - v3;
    const double c_minus = u2 * v - u * v2, c_plus = u2 * v + u * v2;
    return {(s_plus * s_plus - r) / 2.0, (c_minus * c_minus + r) / 2.0,
            (c_plus * c_plus - r) / 2.0, (s_minus * s_minus + r) / 2.0};
}

bool FeasibilityProblem::feasible(double r, int grid) const {
    const auto m = box_radii(r);
    for (double radius : m)
        if (radius < 0.0) return false;
    // Two of the four correction variables are fixed by normalization and by
    // the two-outcome marginal, leaving a rectangle in (xi_1, xi_2).  Scan
    // it; each grid point is checked against the surviving box constraints
    // in closed form, so a hit certifies feasibility outright.
    const double target0 = u * u - 0.5;  // xi_0 + 2 xi_1 + xi_2
    const double target3 = 0.5 - u * u;  // xi_3 + xi_1 + 2 xi_2
    for (int i = 0; i <= grid; ++i) {
        const double xi1 = -m[1] + (2.0 * m[1] * i) / grid;
        for (int j = 0; j <= grid; ++j) {
            const double xi2 = -m[2] + (2.0 * m[2] * j) / grid;
            const double xi0 = target0 - 2.0 * xi1 - xi2;
            const double xi3 = target3 - xi1 - 2.0 * xi2;
            if (std::abs(xi0) <= m[0] && std::abs(xi3) <= m[3]) return true;
        }
    }
    return false;
}

double r_feasibility_oracle(double theta, double bisect_tol, int grid) {
    if (!(bisect_tol > 0.0))
        throw domain_error("r_feasibility_oracle: bisect_tol must be positive");
    if (grid < 10)
        throw domain_error("r_feasibility_oracle: grid must be at least 10");
    const FeasibilityProblem problem(theta);
    double hi = r_ideal_closed(theta);
    if (!problem.feasible(hi, grid))
        throw consistency_error(
            "r_feasibility_oracle: ideal coherence point not recognized as "
            "feasible; grid too coarse");
    double lo = 0.0;
    if (problem.feasible(lo, grid)) return 0.0;
    // Invariant: hi feasible (verified), lo infeasible as far as the grid
    // can tell.  Returning the final hi keeps the estimate one-sided: a grid
    // hit is always genuine, so hi >= true infimum at every step.
    while (hi - lo > bisect_tol) {
        const double mid = (lo + hi) / 2.0;
        if (problem.feasible(mid, grid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double entanglement_bound(double r) {
    if (!(r >= 0.0) || !(r <= 0.25))
        throw domain_error("entanglement_bound: r must lie in [0, 1/4]");
    const double disc = std::max(0.0, 1.0 - 16.0 * r * r);
    return binary_entropy((1.0 - std::sqrt(disc)) / 2.0);
}

double entanglement_bound_oracle(double r, int grid, int rounds) {
    if (!(r >= 0.0) || !(r <= 0.25))
        throw domain_error("entanglement_bound_oracle: r must lie in [0, 1/4]");
    if (grid < 8 || rounds < 1)
        throw domain_error("entanglement_bound_oracle: grid/rounds too small");
    if (r == 0.0) return 0.0;
    // Minimize p h2(q1) + (1-p) h2(q2) subject to
    // p sqrt(q1(1-q1)) + (1-p) sqrt(q2(1-q2)) >= 2r over two-point
    // decompositions.  The constraint is active at any minimum (shrinking a
    // q_k toward 0 lowers both sides), so parametrize the boundary exactly:
    // pick (p, R1) and recover R2 = (2r - p R1)/(1 - p); each R maps back to
    // the smaller root q = (1 - sqrt(1 - 4R^2))/2.  Grid over (p, R1) with
    // nested refinement around the incumbent.
    auto q_of = [](double big_r) {
        const double disc = std::max(0.0, 1.0 - 4.0 * big_r * big_r);
        return (1.0 - std::sqrt(disc)) / 2.0;
    };
    auto objective = [&](double p, double r1) {
        double value = std::numeric_limits<double>::infinity();
        if (p >= 1.0) {
            if (r1 < 2.0 * r - 1e-15) return value;
            return binary_entropy(q_of(std::max(r1, 2.0 * r)));
        }
        const double r2 = (2.0 * r - p * r1) / (1.0 - p);
        if (r2 < -1e-12 || r2 > 0.5 + 1e-12) return value;
        return p * binary_entropy(q_of(r1)) +
               (1.0 - p) * binary_entropy(q_of(std::clamp(r2, 0.0, 0.5)));
    };
    double p_lo = 0.0, p_hi = 1.0, r_lo = 0.0, r_hi = 0.5;
    double best = std::numeric_limits<double>::infinity();
    double best_p = 1.0, best_r1 = 2.0 * r;
    for (int round = 0; round < rounds; ++round) {
        for (int i = 0; i <= grid; ++i) {
            const double p = p_lo + (p_hi - p_lo) * i / grid;
            for (int j = 0; j <= grid; ++j) {
                const double r1 = r_lo + (r_hi - r_lo) * j / grid;
                const double value = objective(p, r1);
                if (value < best) {
                    best = value;
                    best_p = p;
                    best_r1 = r1;
                }
            }
        }
        const double p_step = (p_hi - p_lo) / grid;
        const double r_step = (r_hi - r_lo) / grid;
        p_lo = std::max(0.0, best_p - p_step);
        p_hi = std::min(1.0, best_p + p_step);
        r_lo = std::max(0.0, best_r1 - r_step);
        r_hi = std::min(0.5, best_r1 + r_step);
    }
    return best;
}

double hmin_bound(double r) {
    if (!(r >= 0.0) || !(r <= 0.25))
        throw domain_error("hmin_bound: r must lie in [0, 1/4]");
    const double disc = std::max(0.0, 1.0 - 4.0 * r);
    return -std::log2((1.0 + std::sqrt(disc)) / 2.0);
}

double hmin_xy_oracle(double r, double resolution) {
    if (!(r >= 0.0) || !(r <= 0.25))
        throw domain_error("hmin_xy_oracle: r must lie in [0, 1/4]");
    if (!(resolution > 0.0) || !(resolution <= 1e-2))
        throw domain_error("hmin_xy_oracle: resolution must be in (0, 1e-2]");
    if (r == 0.0) return 0.0;
    // Minimize (X + Y)/2 over X, Y in [0, 1] with X Y >= 4r.  The constraint
    // is active, so set Y = 4r / X exactly and scan X in [4r, 1] (below 4r
    // the partner Y would exceed 1).
    const double product = 4.0 * r;
    double best = std::numeric_limits<double>::infinity();
    double best_x = 1.0;
    double x_lo = product, x_hi = 1.0;
    for (int round = 0; round < 3; ++round) {
        const int steps = static_cast<int>((x_hi - x_lo) / resolution) + 2;
        for (int i = 0; i <= steps; ++i) {
            const double x = x_lo + (x_hi - x_lo) * i / steps;
            const double value = (x + product / x) / 2.0;
            if (value < best) {
                best = value;
                best_x = x;
            }
        }
        const double step = (x_hi - x_lo) / steps;
        x_lo = std::max(product, best_x - step);
        x_hi = std::min(1.0, best_x + step);
        resolution /= steps;
    }
    return best;
}

CertificateBundle certificate(double theta) {
    if (!(theta > 0.0) || !(theta < kThetaSup))
        throw domain_error("certificate: theta must lie in (0, 0.48)");
    CertificateBundle bundle;
    bundle.theta = theta;
    // The whole supported window sits below pi/4, so the ideal coherence is
    // always available from the simulated strategy itself.
    bundle.r_ideal = coherence_r(rgb4_strategy(theta));
    bundle.r_floor = r_lower_bound(theta);
    const double r_eval = std::max(bundle.r_floor, 0.0);
    if (bundle.r_floor <= 0.0)
        bundle.notes.push_back(
            "closed-form floor is non-positive at this angle; entropy bounds "
            "evaluated at r = 0 are vacuous");
    bundle.eof_bound = entanglement_bound(r_eval);
    bundle.hmin_bound = ringcert::hmin_bound(r_eval);
    // Cross-checks: each closed form against its independent oracle.
    const double eof_dev =
        std::abs(entanglement_bound_oracle(r_eval) - bundle.eof_bound);
    bundle.oracle_residuals.emplace_back("eof_oracle_abs_dev", eof_dev);
    const double xy_dev =
        std::abs(hmin_xy_oracle(r_eval) - std::sqrt(4.0 * r_eval));
    bundle.oracle_residuals.emplace_back("hmin_xy_oracle_abs_dev", xy_dev);
    if (theta <= M_PI / 4.0 + 1e-15) {
        const double r_min = r_feasibility_oracle(theta);
        bundle.oracle_residuals.emplace_back("feasibility_margin",
                                             r_min - bundle.r_floor);
    }
    return bundle;
}

}  // namespace ringcert
