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

#ifndef RINGCERT_ENTROPY_HPP
#define RINGCERT_ENTROPY_HPP

#include "ringcert/tensor.hpp"

namespace ringcert {

// h(q) = -q log2 q - (1-q) log2(1-q), with h(0) = h(1) = 0.
// Throws domain_error outside [0, 1].
double binary_entropy(double q);

// S(rho) = -tr(rho log2 rho) in bits. rho must be Hermitian with unit trace
// within 1e-10; eigenvalues in [-1e-10, 0) are clamped to 0, anything more
// negative is a domain error.
double von_neumann_entropy(const CMatrix& rho, double tol = kCheckTol);

// Uhlmann fidelity F(rho, sigma) = tr|sqrt(rho) sqrt(sigma)| (so F in [0,1],
// F = 1 iff equal). Both arguments must be density matrices.
double fidelity(const CMatrix& rho, const CMatrix& sigma, double tol = kCheckTol);

// Trace distance D = 0.5 * tr|rho - sigma|.
double trace_distance(const CMatrix& rho, const CMatrix& sigma, double tol = kCheckTol);

// Positive-semidefinite square root via eigendecomposition, clamping
// eigenvalues in [-tol, 0) to 0.
CMatrix psd_sqrt(const CMatrix& m, double tol = kCheckTol);

}  // namespace ringcert

#endif
