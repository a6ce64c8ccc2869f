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

#include "ringcert/entropy.hpp"

#include <cmath>

namespace ringcert {

namespace {

void check_density(const CMatrix& m, double tol, const char* what) {
    if (m.rows() != m.cols()) throw dimension_error(std::string(what) + ": not square");
    if (!m.allFinite()) throw validation_error(std::string(what) + ": non-finite entries");
    if (max_abs(m - m.adjoint()) > tol)
        throw domain_error(std::string(what) + ": not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > tol || std::abs(m.trace().imag()) > tol)
        throw domain_error(std::string(what) + ": trace is not 1");
}

RVector clamped_eigenvalues(const CMatrix& herm, double tol, const char* what) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
    RVector ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -tol)
            throw domain_error(std::string(what) + ": eigenvalue " +
                               std::to_string(ev(i)) + " below -tolerance");
        if (ev(i) < 0.0) ev(i) = 0.0;
    }
    return ev;
}

}  // namespace

double binary_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0))
        throw domain_error("binary_entropy argument outside [0, 1]");
    double h = 0.0;
    if (q > 0.0) h -= q * std::log2(q);
    if (q < 1.0) h -= (1.0 - q) * std::log2(1.0 - q);
    return h;
}

double von_neumann_entropy(const CMatrix& rho, double tol) {
    check_density(rho, tol, "von_neumann_entropy");
    CMatrix herm = (rho + rho.adjoint()) / 2.0;
    RVector ev = clamped_eigenvalues(herm, tol, "von_neumann_entropy");
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > 0.0) s -= ev(i) * std::log2(ev(i));
    return s;
}

CMatrix psd_sqrt(const CMatrix& m, double tol) {
    CMatrix herm = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
    RVector ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -tol)
            throw domain_error("psd_sqrt: matrix is not positive semidefinite");
        ev(i) = std::sqrt(std::max(ev(i), 0.0));
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const CMatrix& rho, const CMatrix& sigma, double tol) {
    check_density(rho, tol, "fidelity(rho)");
    check_density(sigma, tol, "fidelity(sigma)");
    if (rho.rows() != sigma.rows())
        throw dimension_error("fidelity: dimension mismatch");
    // F = sum of singular values of sqrt(rho) * sqrt(sigma).
    CMatrix prod = psd_sqrt(rho, tol) * psd_sqrt(sigma, tol);
    Eigen::JacobiSVD<CMatrix> svd(prod);
    double f = svd.singularValues().sum();
    return std::min(f, 1.0 + 10 * tol);
}

double trace_distance(const CMatrix& rho, const CMatrix& sigma, double tol) {
    check_density(rho, tol, "trace_distance(rho)");
    check_density(sigma, tol, "trace_distance(sigma)");
    if (rho.rows() != sigma.rows())
        throw dimension_error("trace_distance: dimension mismatch");
    CMatrix diff = ((rho - sigma) + (rho - sigma).adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(diff);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace ringcert
