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

#ifndef RINGCERT_TENSOR_HPP
#define RINGCERT_TENSOR_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ringcert/errors.hpp"

namespace ringcert {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Default tolerance for structural checks (normalization, completeness,
// hermiticity). Rank decisions use a looser default, see schmidt.hpp.
inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kCheckTol = 1e-10;

// Multi-index convention used throughout: subsystem 0 is the most significant
// digit, i.e. a composite index over dims (d0, d1, ..., dm) is
//   g = (((i0 * d1) + i1) * d2 + i2) ...
// which matches the index layout of kron(A0, A1, ...). All multi-system
// operators are built by embedding local operators with identities on the
// remaining slots; subsystems are never reordered implicitly.

// A pure state on an explicit list of subsystem dimensions.
struct StateVector {
    std::vector<int> dims;
    CVector amplitudes;

    StateVector() = default;
    StateVector(std::vector<int> d, CVector a);

    int total_dim() const;
    // Throws validation_error unless amplitudes are finite, the size matches
    // the dims product, and the norm is 1 within tol.
    void validate(double tol = kStructuralTol) const;
};

bool is_finite(const CMatrix& m);
double max_abs(const CMatrix& m);

// Kronecker products; the first factor is the most significant index block.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);
StateVector tensor_product(const StateVector& a, const StateVector& b);

// Reorders subsystems: perm[new_slot] = old_slot. perm must be a permutation
// of 0..dims.size()-1.
StateVector permute_subsystems(const StateVector& v, const std::vector<int>& perm);

// Embeds an operator acting on the listed slots (in the listed order, which
// defines its row/column multi-index) into the full space, identity elsewhere.
CMatrix embed_operator(const CMatrix& op, const std::vector<int>& dims,
                       const std::vector<int>& slots);

// Applies an operator on the listed slots to a state without forming the
// embedded matrix.
CVector apply_on_slots(const CVector& v, const std::vector<int>& dims,
                       const CMatrix& op, const std::vector<int>& slots);

// Traces out every subsystem not listed in keep; keep is given in increasing
// slot order and the result's subsystems follow that order.
CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep);

// Deterministic seeded randomness. std::mt19937_64 plus an explicit
// Box-Muller transform, so streams are identical across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform();                   // [0, 1)
    double gaussian();                  // standard normal
    Complex complex_gaussian();         // independent N(0,1) parts
    int uniform_int(int lo, int hi);    // inclusive range
    CMatrix gaussian_matrix(int rows, int cols);
    CVector random_state(int dim);      // Haar-distributed unit vector
    CMatrix random_density(int dim);    // Wishart-normalized density matrix

  private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Haar-like random unitary: complex Gaussian matrix, QR, R-diagonal phases
// absorbed into Q. Deterministic per seed.
CMatrix random_unitary(int dim, std::uint64_t seed);
CMatrix random_unitary(int dim, Rng& rng);

}  // namespace ringcert

#endif
