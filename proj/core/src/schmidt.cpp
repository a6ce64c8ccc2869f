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

#include "ringcert/schmidt.hpp"

#include <algorithm>
#include <cmath>

namespace ringcert {

namespace {

// Rotates column pairs so the largest-magnitude entry of each left column is
// real positive; the right column absorbs the opposite phase.
void fix_phases(CMatrix& left, CMatrix& right) {
    for (Eigen::Index k = 0; k < left.cols(); ++k) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < left.rows(); ++i) {
            double a = std::abs(left(i, k));
            if (a > best + 1e-15) {
                best = a;
                imax = i;
            }
        }
        if (best <= 0.0) continue;
        Complex ph = left(imax, k) / best;
        left.col(k) /= ph;
        right.col(k) *= ph;
    }
}

int count_rank(const RVector& s, double tol) {
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol) ++r;
    return r;
}

}  // namespace

SchmidtDecomposition schmidt_decompose(const StateVector& v,
                                       const std::vector<int>& left_slots,
                                       double tol) {
    v.validate(1e-9);
    const auto m = v.dims.size();
    for (size_t i = 1; i < left_slots.size(); ++i)
        if (left_slots[i] <= left_slots[i - 1])
            throw validation_error("left slots must be strictly increasing");
    if (left_slots.empty() || left_slots.size() >= m)
        throw validation_error("cut must leave subsystems on both sides");

    std::vector<int> right_slots;
    {
        std::vector<bool> is_left(m, false);
        for (int s : left_slots) {
            if (s < 0 || static_cast<size_t>(s) >= m)
                throw validation_error("left slot out of range");
            is_left[s] = true;
        }
        for (size_t s = 0; s < m; ++s)
            if (!is_left[s]) right_slots.push_back(static_cast<int>(s));
    }

    // Reorder to (left | right), then reshape: row index runs over the left
    // block, column index over the right block.
    std::vector<int> perm = left_slots;
    perm.insert(perm.end(), right_slots.begin(), right_slots.end());
    StateVector w = permute_subsystems(v, perm);
    long long dl = 1, dr = 1;
    for (size_t i = 0; i < left_slots.size(); ++i) dl *= w.dims[i];
    for (size_t i = left_slots.size(); i < m; ++i) dr *= w.dims[i];

    CMatrix mat(dl, dr);
    for (long long i = 0; i < dl; ++i)
        for (long long j = 0; j < dr; ++j) mat(i, j) = w.amplitudes(i * dr + j);

    Eigen::JacobiSVD<CMatrix> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtDecomposition out;
    out.coefficients = svd.singularValues();
    out.left_vectors = svd.matrixU();
    out.right_vectors = svd.matrixV().conjugate();  // v = sum_i s_i u_i ⊗ conj(v_i)
    fix_phases(out.left_vectors, out.right_vectors);
    out.numerical_rank = count_rank(out.coefficients, tol);
    return out;
}

CVector schmidt_reconstruct(const SchmidtDecomposition& d) {
    const auto dl = d.left_vectors.rows();
    const auto dr = d.right_vectors.rows();
    CVector out = CVector::Zero(dl * dr);
    for (Eigen::Index k = 0; k < d.coefficients.size(); ++k)
        out += d.coefficients(k) *
               kron(CVector(d.left_vectors.col(k)), CVector(d.right_vectors.col(k)));
    return out;
}

CVector vec_row_major(const CMatrix& m) {
    CVector v(m.rows() * m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
    return v;
}

CMatrix unvec_row_major(const CVector& v, int rows, int cols) {
    if (v.size() != static_cast<Eigen::Index>(rows) * cols)
        throw dimension_error("vector size does not match requested shape");
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
    return m;
}

SchmidtDecomposition operator_schmidt(const CMatrix& o, int dim_a, int dim_b,
                                      double tol) {
    const long long da = dim_a, db = dim_b;
    if (o.rows() != da * db || o.cols() != da * db)
        throw dimension_error("operator size does not match dim_a * dim_b");

    // Realignment: R[(a,a'), (b,b')] = O[(a,b), (a',b')]. A singular triple
    // (c, u, v) of R gives the product component c * unvec(u) ⊗ unvec(conj(v)).
    CMatrix r(da * da, db * db);
    for (long long a = 0; a < da; ++a)
        for (long long ap = 0; ap < da; ++ap)
            for (long long b = 0; b < db; ++b)
                for (long long bp = 0; bp < db; ++bp)
                    r(a * da + ap, b * db + bp) = o(a * db + b, ap * db + bp);

    Eigen::JacobiSVD<CMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtDecomposition out;
    out.coefficients = svd.singularValues();
    out.left_vectors = svd.matrixU();
    out.right_vectors = svd.matrixV().conjugate();
    fix_phases(out.left_vectors, out.right_vectors);
    out.numerical_rank = count_rank(out.coefficients, tol);
    return out;
}

CMatrix operator_schmidt_reconstruct(const SchmidtDecomposition& d, int dim_a,
                                     int dim_b) {
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dim_a) * dim_b,
                                static_cast<Eigen::Index>(dim_a) * dim_b);
    for (Eigen::Index k = 0; k < d.coefficients.size(); ++k) {
        CMatrix a = unvec_row_major(d.left_vectors.col(k), dim_a, dim_a);
        CMatrix b = unvec_row_major(d.right_vectors.col(k), dim_b, dim_b);
        out += d.coefficients(k) * kron(a, b);
    }
    return out;
}

}  // namespace ringcert
