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
#include <vector>

#include "ringcert/entropy.hpp"
#include "ringcert/errors.hpp"
#include "ringcert/schmidt.hpp"
#include "ringcert/tensor.hpp"

using namespace ringcert;

namespace {

CVector basis_vector(int dim, int i) {
    CVector v = CVector::Zero(dim);
    v(i) = 1.0;
    return v;
}

StateVector random_state_vector(std::vector<int> dims, Rng& rng) {
    int total = 1;
    for (int d : dims) total *= d;
    return StateVector(std::move(dims), rng.random_state(total));
}

}  // namespace

TEST_CASE("kron puts the first factor in the most significant index block") {
    // |i> (x) |j> on dims (2,3) must land at global index i*3 + j.
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) {
            CVector v = kron(basis_vector(2, i), basis_vector(3, j));
            for (int g = 0; g < 6; ++g)
                CHECK(std::abs(v(g) - (g == i * 3 + j ? 1.0 : 0.0)) == 0.0);
        }

    // Mixed-product rule on matrices.
    Rng rng(11);
    CMatrix a = rng.gaussian_matrix(2, 2), b = rng.gaussian_matrix(3, 3);
    CMatrix c = rng.gaussian_matrix(2, 2), d = rng.gaussian_matrix(3, 3);
    CHECK(max_abs(kron(a, b) * kron(c, d) - kron(CMatrix(a * c), CMatrix(b * d))) <
          1e-12);
}

TEST_CASE("StateVector validates size and normalization") {
    CVector good(2);
    good << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CHECK_NOTHROW(StateVector({2}, good).validate());

    CVector unnorm(2);
    unnorm << 1.0, 1.0;
    CHECK_THROWS_AS(StateVector({2}, unnorm).validate(), validation_error);

    CHECK_THROWS_AS(StateVector({3}, good).validate(), validation_error);
}

TEST_CASE("permute_subsystems moves amplitudes with the slots") {
    // perm[new_slot] = old_slot, exercised on a basis product state.
    StateVector v({2, 3, 4},
                  kron(kron(basis_vector(2, 1), basis_vector(3, 2)), basis_vector(4, 3)));
    StateVector w = permute_subsystems(v, {2, 0, 1});
    CHECK(w.dims == std::vector<int>{4, 2, 3});
    // New order is (old slot 2, old slot 0, old slot 1) = (3, 1, 2).
    CHECK(std::abs(w.amplitudes((3 * 2 + 1) * 3 + 2) - 1.0) < 1e-15);

    // Random state: permuting by the inverse undoes the permutation.
    Rng rng(5);
    StateVector r = random_state_vector({2, 3, 2, 2}, rng);
    std::vector<int> perm = {3, 1, 0, 2};
    std::vector<int> inv(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
    StateVector back = permute_subsystems(permute_subsystems(r, perm), inv);
    CHECK(max_abs(back.amplitudes - r.amplitudes) < 1e-14);
}

TEST_CASE("embed_operator respects the slot list order") {
    Rng rng(7);
    CMatrix a = rng.gaussian_matrix(2, 2), b = rng.gaussian_matrix(2, 2);
    std::vector<int> dims = {2, 2};
    // kron(a, b) on slots (1, 0): a acts on slot 1, b on slot 0, so the
    // embedded operator in global order (slot 0, slot 1) is kron(b, a).
    CHECK(max_abs(embed_operator(kron(a, b), dims, {1, 0}) - kron(b, a)) < 1e-13);
    CHECK(max_abs(embed_operator(kron(a, b), dims, {0, 1}) - kron(a, b)) < 1e-13);

    // Identity fill on untouched slots.
    std::vector<int> dims3 = {2, 3, 2};
    CMatrix e = embed_operator(a, dims3, {2});
    CHECK(max_abs(e - kron(CMatrix(CMatrix::Identity(6, 6)), a)) < 1e-13);
}

TEST_CASE("apply_on_slots agrees with the embedded matrix") {
    Rng rng(13);
    std::vector<int> dims = {2, 3, 2};
    for (int trial = 0; trial < 20; ++trial) {
        StateVector v = random_state_vector(dims, rng);
        CMatrix op = rng.gaussian_matrix(4, 4);  // acts on slots (2, 0)
        CVector direct = apply_on_slots(v.amplitudes, dims, op, {2, 0});
        CVector embedded = embed_operator(op, dims, {2, 0}) * v.amplitudes;
        CHECK(max_abs(direct - embedded) < 1e-12);
    }
}

TEST_CASE("partial_trace preserves trace and splits product states") {
    Rng rng(17);
    CMatrix rho = rng.random_density(2);
    CMatrix sigma = rng.random_density(3);
    CMatrix both = kron(rho, sigma);

    CHECK(max_abs(partial_trace(both, {2, 3}, {0}) - rho) < 1e-12);
    CHECK(max_abs(partial_trace(both, {2, 3}, {1}) - sigma) < 1e-12);
    CHECK(max_abs(partial_trace(both, {2, 3}, {0, 1}) - both) < 1e-12);

    for (int trial = 0; trial < 10; ++trial) {
        CMatrix m = rng.random_density(12);
        Complex before = m.trace();
        Complex after = partial_trace(m, {2, 3, 2}, {1}).trace();
        CHECK(std::abs(before - after) < 1e-12);
    }
}

TEST_CASE("schmidt_decompose reconstructs and fixes phases") {
    Rng rng(23);
    // Bipartitions with total dimension at most 8.
    std::vector<std::vector<int>> shapes = {{2, 2}, {2, 4}, {3, 2}, {2, 2, 2}};
    for (const auto& dims : shapes) {
        for (int trial = 0; trial < 25; ++trial) {
            StateVector v = random_state_vector(dims, rng);
            std::vector<int> left = {0};
            SchmidtDecomposition d = schmidt_decompose(v, left);

            // Coefficients descending and consistent with normalization.
            double sq = 0.0;
            for (int i = 0; i + 1 < d.coefficients.size(); ++i)
                CHECK(d.coefficients(i) >= d.coefficients(i + 1) - 1e-14);
            for (int i = 0; i < d.coefficients.size(); ++i)
                sq += d.coefficients(i) * d.coefficients(i);
            CHECK(std::abs(sq - 1.0) < 1e-10);

            // Largest-magnitude entry of each left vector is real positive.
            for (int c = 0; c < d.numerical_rank; ++c) {
                int arg = 0;
                for (int rix = 1; rix < d.left_vectors.rows(); ++rix)
                    if (std::abs(d.left_vectors(rix, c)) >
                        std::abs(d.left_vectors(arg, c)))
                        arg = rix;
                CHECK(d.left_vectors(arg, c).imag() == doctest::Approx(0.0).epsilon(1e-10));
                CHECK(d.left_vectors(arg, c).real() > 0.0);
            }

            CHECK(max_abs(schmidt_reconstruct(d) - v.amplitudes) < 1e-10);
        }
    }

    // Non-contiguous left slots: reconstruction lives in (left | right) order.
    StateVector v = random_state_vector({2, 3, 2}, rng);
    SchmidtDecomposition d = schmidt_decompose(v, {0, 2});
    StateVector regrouped = permute_subsystems(v, {0, 2, 1});
    CHECK(max_abs(schmidt_reconstruct(d) - regrouped.amplitudes) < 1e-10);
}

TEST_CASE("operator_schmidt rank separates products from entanglers") {
    Rng rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        int da = rng.uniform_int(2, 4), db = rng.uniform_int(2, 4);
        CMatrix a = rng.gaussian_matrix(da, da), b = rng.gaussian_matrix(db, db);
        SchmidtDecomposition d = operator_schmidt(kron(a, b), da, db);
        CHECK(d.numerical_rank == 1);
        CHECK(max_abs(operator_schmidt_reconstruct(d, da, db) - kron(a, b)) < 1e-10);
    }

    CMatrix cnot = CMatrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    CHECK(operator_schmidt(cnot, 2, 2).numerical_rank == 2);

    for (int trial = 0; trial < 10; ++trial) {
        // Generic two-qubit unitaries are not products.
        CMatrix u = random_unitary(4, 1000 + trial);
        CHECK(operator_schmidt(u, 2, 2).numerical_rank > 1);
    }
}

TEST_CASE("vec_row_major round trip") {
    Rng rng(31);
    CMatrix m = rng.gaussian_matrix(3, 4);
    CHECK(max_abs(unvec_row_major(vec_row_major(m), 3, 4) - m) == 0.0);
}

TEST_CASE("binary entropy endpoints and symmetry") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)).epsilon(1e-14));
    CHECK_THROWS_AS(binary_entropy(-0.1), domain_error);
    CHECK_THROWS_AS(binary_entropy(1.1), domain_error);
}

TEST_CASE("von Neumann entropy on known states and clamping") {
    Rng rng(37);
    CVector psi = rng.random_state(4);
    CMatrix pure = psi * psi.adjoint();
    CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-9));

    CMatrix mixed = CMatrix::Identity(4, 4) / 4.0;
    CHECK(von_neumann_entropy(mixed) == doctest::Approx(2.0).epsilon(1e-12));

    // Eigenvalues in [-tol, 0] are treated as 0; worse is rejected.
    CMatrix near = CMatrix::Zero(3, 3);
    near(0, 0) = 0.5 + 2.5e-11;
    near(1, 1) = 0.5 + 2.5e-11;
    near(2, 2) = -5e-11;
    CHECK(von_neumann_entropy(near) == doctest::Approx(1.0).epsilon(1e-9));

    CMatrix bad = CMatrix::Zero(3, 3);
    bad(0, 0) = 0.5 + 5e-9;
    bad(1, 1) = 0.5 + 5e-9;
    bad(2, 2) = -1e-8;
    CHECK_THROWS_AS(von_neumann_entropy(bad), domain_error);
}

TEST_CASE("psd_sqrt squares back") {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        CMatrix rho = rng.random_density(4);
        CMatrix s = psd_sqrt(rho);
        CHECK(max_abs(CMatrix(s * s) - rho) < 1e-10);
    }
}

TEST_CASE("trace distance obeys the Fuchs-van de Graaf upper bound") {
    // D <= sqrt(1 - F^2), the direction the min-entropy bound relies on.
    Rng rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        int d = rng.uniform_int(2, 4);
        CMatrix rho = rng.random_density(d);
        CMatrix sigma = rng.random_density(d);
        double f = fidelity(rho, sigma);
        double dist = trace_distance(rho, sigma);
        CHECK(dist <= std::sqrt(std::max(0.0, 1.0 - f * f)) + 1e-9);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0 + 1e-9);
        CHECK(dist >= -1e-12);
    }
    CMatrix rho = rng.random_density(3);
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(trace_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("seeded randomness is reproducible") {
    Rng a(42), b(42);
    for (int i = 0; i < 50; ++i) {
        CHECK(a.uniform() == b.uniform());
        CHECK(a.gaussian() == b.gaussian());
    }
    CHECK(max_abs(random_unitary(5, 9) - random_unitary(5, 9)) == 0.0);

    Rng rng(45);
    CVector s = rng.random_state(6);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    CMatrix u = random_unitary(4, 46);
    CHECK(max_abs(CMatrix(u.adjoint() * u) - CMatrix::Identity(4, 4)) < 1e-12);
    CMatrix rho = rng.random_density(4);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
}
