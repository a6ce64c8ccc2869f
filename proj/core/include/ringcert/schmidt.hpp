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

#ifndef RINGCERT_SCHMIDT_HPP
#define RINGCERT_SCHMIDT_HPP

#include <vector>

#include "ringcert/tensor.hpp"

namespace ringcert {

// Default threshold on singular values when deciding a numerical rank.
inline constexpr double kRankTol = 1e-8;

// Bipartite decomposition, for states (coefficients descending, orthonormal
// vector columns) and for operators (see operator_schmidt for conventions).
struct SchmidtDecomposition {
    RVector coefficients;   // nonnegative, descending
    CMatrix left_vectors;   // one column per coefficient
    CMatrix right_vectors;  // one column per coefficient
    int numerical_rank = 0;
};

// Schmidt decomposition of v across the bipartition (left_slots | rest).
// left_slots are subsystem indices in increasing order; both sides keep their
// original relative subsystem order. Phase convention: the largest-magnitude
// entry of each left vector is real positive, with the compensating phase on
// the right vector, so sum_i c_i (l_i ⊗ r_i) reproduces v itself.
SchmidtDecomposition schmidt_decompose(const StateVector& v,
                                       const std::vector<int>& left_slots,
                                       double tol = kRankTol);

// Reassembles sum_i c_i (l_i ⊗ r_i) in the (left | right) slot order.
CVector schmidt_reconstruct(const SchmidtDecomposition& d);

// Operator decomposition O = sum_k c_k A_k ⊗ B_k on C^{da} ⊗ C^{db}, with
// {A_k} and {B_k} each orthonormal in the Hilbert-Schmidt inner product.
// Columns of left/right_vectors are A_k and B_k vectorized row-major
// (index a*da + a'); numerical_rank counts coefficients above tol. An
// operator is a tensor product exactly when the rank is 1.
SchmidtDecomposition operator_schmidt(const CMatrix& o, int dim_a, int dim_b,
                                      double tol = kRankTol);

// Reassembles sum_k c_k A_k ⊗ B_k from an operator decomposition.
CMatrix operator_schmidt_reconstruct(const SchmidtDecomposition& d, int dim_a,
                                     int dim_b);

// Row-major vec/unvec helpers matching the operator_schmidt convention.
CVector vec_row_major(const CMatrix& m);
CMatrix unvec_row_major(const CVector& v, int rows, int cols);

}  // namespace ringcert

#endif
