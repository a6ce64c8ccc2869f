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

#include "ringcert/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ringcert {

namespace {

long long checked_dim_product(const std::vector<int>& dims) {
    long long p = 1;
    for (int d : dims) {
        if (d < 1) throw dimension_error("subsystem dimension must be >= 1");
        p *= d;
        if (p > (1LL << 26)) throw capacity_error("total dimension too large");
    }
    return p;
}

// Strides for the most-significant-first index convention.
std::vector<long long> strides_of(const std::vector<int>& dims) {
    std::vector<long long> s(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
        s[i] = s[i + 1] * dims[i + 1];
    return s;
}

}  // namespace

StateVector::StateVector(std::vector<int> d, CVector a)
    : dims(std::move(d)), amplitudes(std::move(a)) {}

int StateVector::total_dim() const {
    return static_cast<int>(checked_dim_product(dims));
}

void StateVector::validate(double tol) const {
    long long p = checked_dim_product(dims);
    if (amplitudes.size() != p)
        throw validation_error("state size does not match subsystem dimensions");
    if (!amplitudes.allFinite())
        throw validation_error("state has non-finite amplitudes");
    double n = amplitudes.norm();
    if (std::abs(n - 1.0) > tol)
        throw validation_error("state is not normalized: |norm-1| = " +
                               std::to_string(std::abs(n - 1.0)));
}

bool is_finite(const CMatrix& m) { return m.allFinite(); }

double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CVector kron(const CVector& a, const CVector& b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    std::vector<int> dims = a.dims;
    dims.insert(dims.end(), b.dims.begin(), b.dims.end());
    return StateVector(std::move(dims), kron(a.amplitudes, b.amplitudes));
}

StateVector permute_subsystems(const StateVector& v, const std::vector<int>& perm) {
    const auto m = v.dims.size();
    if (perm.size() != m) throw dimension_error("permutation length mismatch");
    std::vector<bool> seen(m, false);
    for (int p : perm) {
        if (p < 0 || static_cast<size_t>(p) >= m || seen[p])
            throw validation_error("not a permutation of subsystem slots");
        seen[p] = true;
    }
    std::vector<int> new_dims(m);
    for (size_t i = 0; i < m; ++i) new_dims[i] = v.dims[perm[i]];

    const auto old_strides = strides_of(v.dims);
    const auto new_strides = strides_of(new_dims);
    const long long total = checked_dim_product(v.dims);
    if (v.amplitudes.size() != total)
        throw validation_error("state size does not match subsystem dimensions");

    CVector out(total);
    std::vector<int> idx(m, 0);
    for (long long g_old = 0; g_old < total; ++g_old) {
        long long rem = g_old;
        long long g_new = 0;
        for (size_t s = 0; s < m; ++s) {
            idx[s] = static_cast<int>(rem / old_strides[s]);
            rem %= old_strides[s];
        }
        for (size_t p = 0; p < m; ++p) g_new += idx[perm[p]] * new_strides[p];
        out(g_new) = v.amplitudes(g_old);
    }
    return StateVector(std::move(new_dims), std::move(out));
}

namespace {

struct SlotSplit {
    std::vector<int> slots;          // acting slots, listed order
    std::vector<int> rest;           // remaining slots, increasing order
    std::vector<long long> strides;  // full-space strides
    long long slot_dim = 1;
    long long rest_dim = 1;

    SlotSplit(const std::vector<int>& dims, const std::vector<int>& acting)
        : slots(acting), strides(strides_of(dims)) {
        std::vector<bool> used(dims.size(), false);
        for (int s : slots) {
            if (s < 0 || static_cast<size_t>(s) >= dims.size() || used[s])
                throw validation_error("acting slots must be distinct and in range");
            used[s] = true;
            slot_dim *= dims[s];
        }
        for (size_t s = 0; s < dims.size(); ++s)
            if (!used[s]) {
                rest.push_back(static_cast<int>(s));
                rest_dim *= dims[s];
            }
    }

    // Global index from (acting multi-index a, rest multi-index r), both in the
    // most-significant-first convention over their own slot lists.
    long long global_index(long long a, long long r, const std::vector<int>& dims) const {
        long long g = 0;
        for (int i = static_cast<int>(slots.size()) - 1; i >= 0; --i) {
            int d = dims[slots[i]];
            g += (a % d) * strides[slots[i]];
            a /= d;
        }
        for (int i = static_cast<int>(rest.size()) - 1; i >= 0; --i) {
            int d = dims[rest[i]];
            g += (r % d) * strides[rest[i]];
            r /= d;
        }
        return g;
    }
};

}  // namespace

CMatrix embed_operator(const CMatrix& op, const std::vector<int>& dims,
                       const std::vector<int>& slots) {
    SlotSplit split(dims, slots);
    if (op.rows() != split.slot_dim || op.cols() != split.slot_dim)
        throw dimension_error("operator size does not match the acting slots");
    const long long total = checked_dim_product(dims);
    CMatrix out = CMatrix::Zero(total, total);
    for (long long a = 0; a < split.slot_dim; ++a)
        for (long long b = 0; b < split.slot_dim; ++b) {
            Complex val = op(a, b);
            if (val == Complex(0.0, 0.0)) continue;
            for (long long r = 0; r < split.rest_dim; ++r)
                out(split.global_index(a, r, dims), split.global_index(b, r, dims)) = val;
        }
    return out;
}

CVector apply_on_slots(const CVector& v, const std::vector<int>& dims,
                       const CMatrix& op, const std::vector<int>& slots) {
    SlotSplit split(dims, slots);
    if (op.rows() != split.slot_dim || op.cols() != split.slot_dim)
        throw dimension_error("operator size does not match the acting slots");
    if (v.size() != checked_dim_product(dims))
        throw dimension_error("state size does not match subsystem dimensions");
    CVector out(v.size());
    CVector gathered(split.slot_dim);
    for (long long r = 0; r < split.rest_dim; ++r) {
        for (long long a = 0; a < split.slot_dim; ++a)
            gathered(a) = v(split.global_index(a, r, dims));
        CVector res = op * gathered;
        for (long long a = 0; a < split.slot_dim; ++a)
            out(split.global_index(a, r, dims)) = res(a);
    }
    return out;
}

CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep) {
    const long long total = checked_dim_product(dims);
    if (m.rows() != total || m.cols() != total)
        throw dimension_error("matrix size does not match subsystem dimensions");
    for (size_t i = 1; i < keep.size(); ++i)
        if (keep[i] <= keep[i - 1])
            throw validation_error("keep slots must be strictly increasing");
    SlotSplit split(dims, keep);  // validates the slot list
    CMatrix out = CMatrix::Zero(split.slot_dim, split.slot_dim);
    for (long long a = 0; a < split.slot_dim; ++a)
        for (long long b = 0; b < split.slot_dim; ++b) {
            Complex acc(0.0, 0.0);
            for (long long r = 0; r < split.rest_dim; ++r)
                acc += m(split.global_index(a, r, dims), split.global_index(b, r, dims));
            out(a, b) = acc;
        }
    return out;
}

double Rng::uniform() {
    // 53-bit mantissa from the top bits of the generator output.
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * M_PI * u2);
    has_spare_ = true;
    return mag * std::cos(2.0 * M_PI * u2);
}

Complex Rng::complex_gaussian() {
    double re = gaussian();
    double im = gaussian();
    return Complex(re, im);
}

int Rng::uniform_int(int lo, int hi) {
    if (hi < lo) throw domain_error("empty integer range");
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
}

CMatrix Rng::gaussian_matrix(int rows, int cols) {
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
    return m;
}

CVector Rng::random_state(int dim) {
    if (dim < 1) throw dimension_error("state dimension must be >= 1");
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = complex_gaussian();
    return v / v.norm();
}

CMatrix Rng::random_density(int dim) {
    CMatrix g = gaussian_matrix(dim, dim);
    CMatrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

CMatrix random_unitary(int dim, Rng& rng) {
    if (dim < 1) throw dimension_error("unitary dimension must be >= 1");
    CMatrix g = rng.gaussian_matrix(dim, dim);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

CMatrix random_unitary(int dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(dim, rng);
}

}  // namespace ringcert
