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

#ifndef RINGCERT_CERTIFY_HPP
#define RINGCERT_CERTIFY_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "ringcert/tensor.hpp"

namespace ringcert {

// Closed-form lower bound on the surviving coherence weight of any
// distribution that reproduces the four-outcome triangle statistics at
// angle theta:
//   R(theta) = (1/2) sin^3(theta) (3 cos(theta) + cos(3 theta) - 6 sin(theta)).
// Positive on (0, theta_max) with theta_max ~ 0.4805; callers that need a
// guaranteed-positive floor should clamp at zero.
double r_lower_bound(double theta);

// Maximizes r_lower_bound over theta in (0, 0.48).  Deterministic: coarse
// grid at `resolution` followed by golden-section refinement.  Returns
// (theta_star, floor_value).  resolution must be <= 1e-2 and >= 1e-7.
std::pair<double, double> r_floor_maximize(double resolution = 1e-4);

// Root of r_lower_bound in (0.4, 0.5), located by bisection to `tol`.
double r_floor_root(double tol = 1e-10);

// Linear feasibility region for the signed coherence parameter r at a given
// angle.  The eight renormalized outcome weights q~_x of the coarse-grained
// parity variable are linear in r, and a hidden decomposition exists iff the
// four correction variables xi_x fit inside the box |xi_x| <= m_x(r) while
// satisfying two elimination identities.  `feasible` scans the surviving
// two-dimensional (xi_1, xi_2) box on a grid; a grid hit is an exact witness
// because the constraints are evaluated in closed form at the grid point.
struct FeasibilityProblem {
    double theta = 0.0;
    double u = 1.0;  // cos(theta)
    double v = 0.0;  // sin(theta)

    explicit FeasibilityProblem(double theta_in);

    // Box radii (m0, m1, m2, m3) at coherence value r.  A negative radius
    // means the corresponding weight went negative: infeasible outright.
    std::array<double, 4> box_radii(double r) const;

    // True if some (xi_1, xi_2) grid point satisfies all four constraints.
    bool feasible(double r, int grid) const;
};

// One-sided numerical estimate of the smallest coherence value r compatible
// with the observed statistics at `theta`.  Bisects on r between 0 and the
// ideal value sin^3(2 theta)/4, maintaining the invariant that `hi` is
// verified feasible, and returns the final hi.  Because every feasibility
// verdict used to shrink the bracket is an exact witness, the returned value
// never undershoots the true infimum by more than the bracket width.
double r_feasibility_oracle(double theta, double bisect_tol = 1e-6,
                            int grid = 400);

// Entanglement-of-formation floor certified by a surviving coherence r:
//   E(r) = h2( (1 - sqrt(1 - 16 r^2)) / 2 ),  r in [0, 1/4].
double entanglement_bound(double r);

// Independent check of entanglement_bound: minimizes sum_k p_k h2(q_k) over
// two-point decompositions subject to sum_k p_k sqrt(q_k (1 - q_k)) >= 2r,
// by exact boundary parametrization and nested grid refinement.  Agrees
// with the closed form to ~1e-6.
double entanglement_bound_oracle(double r, int grid = 200, int rounds = 4);

// Min-entropy floor on the adversary's guessing probability:
//   H(r) = -log2( (1 + sqrt(1 - 4 r)) / 2 ),  r in [0, 1/4].
double hmin_bound(double r);

// Independent check of the algebraic core of hmin_bound: minimizes
// (X + Y)/2 subject to X Y >= 4r over X, Y in [0, 1], which equals
// sqrt(4 r).  Grid plus refinement; exact at the endpoints.
double hmin_xy_oracle(double r, double resolution = 1e-4);

// Everything the pipeline can certify at one angle, bundled for reporting.
struct CertificateBundle {
    double theta = 0.0;
    double r_ideal = 0.0;      // coherence realized by the canonical strategy
    double r_floor = 0.0;      // closed-form floor R(theta)
    double eof_bound = 0.0;    // entanglement bound at max(r_floor, 0)
    double hmin_bound = 0.0;   // min-entropy bound at max(r_floor, 0)
    // Named residuals of the independent oracle cross-checks run as part of
    // assembling the bundle.
    std::vector<std::pair<std::string, double>> oracle_residuals;
    std::vector<std::string> notes;
};

// Assembles a full certificate at `theta` in (0, 0.48): realized coherence,
// closed-form floor, entropy bounds at the floor, and the oracle residuals
// backing each closed form.  r_ideal comes from the simulated canonical
// strategy when theta <= pi/4 and from the closed form otherwise (noted).
CertificateBundle certificate(double theta);

}  // namespace ringcert

#endif  // RINGCERT_CERTIFY_HPP
