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

#include "ringcert/rigidity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace ringcert {

namespace {

constexpr double kSupportTol = 1e-12;

int parse_token_label(const std::string& label, int max_value) {
    int value = -1;
    auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), value);
    if (ec != std::errc() || ptr != label.data() + label.size() || value < 0 ||
        value > max_value)
        throw validation_error("outcome label '" + label +
                               "' does not name a token count in range");
    return value;
}

void check_pvm(const PartyMeasurement& meas, double tol, const std::string& who) {
    if (meas.empty()) throw validation_error(who + ": empty measurement");
    const Eigen::Index d = meas.front().second.rows();
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& [label, op] : meas) {
        if (op.rows() != d || op.cols() != d)
            throw validation_error(who + ": inconsistent operator dimensions");
        if (max_abs(op - op.adjoint()) > tol)
            throw validation_error(who + ": operator '" + label + "' not Hermitian");
        if (max_abs(op * op - op) > tol)
            throw validation_error(who + ": operator '" + label + "' not idempotent");
        sum += op;
    }
    if (max_abs(sum - CMatrix::Identity(d, d)) > tol)
        throw validation_error(who + ": operators do not sum to the identity");
}

}  // namespace

void PartyUnitary::validate(double tol) const {
    const Eigen::Index d = matrix.rows();
    if (matrix.cols() != d) throw validation_error("party unitary is not square");
    if (max_abs(matrix.adjoint() * matrix - CMatrix::Identity(d, d)) > tol)
        throw validation_error("party unitary is not unitary");
    for (size_t a = 0; a < phases.size(); ++a) {
        if (std::abs(std::abs(phases[a].second) - 1.0) > tol)
            throw validation_error("phase for '" + phases[a].first +
                                   "' is not unit modulus");
        for (size_t b = a + 1; b < phases.size(); ++b)
            if (std::abs(phases[a].second - phases[b].second) <= tol)
                throw validation_error("phases for '" + phases[a].first + "' and '" +
                                       phases[b].first + "' coincide");
    }
}

PartyUnitary build_party_unitary(const PartyMeasurement& pvm, int total_tokens,
                                 int n_parties) {
    if (total_tokens < 1 || n_parties < 3)
        throw domain_error("need total_tokens >= 1 and n_parties >= 3");
    check_pvm(pvm, kCheckTol, "build_party_unitary");

    PartyUnitary out;
    const Eigen::Index d = pvm.front().second.rows();
    out.matrix = CMatrix::Zero(d, d);
    std::vector<int> seen;
    for (const auto& [label, op] : pvm) {
        int x = parse_token_label(label, total_tokens);
        if (std::find(seen.begin(), seen.end(), x) != seen.end())
            throw validation_error("duplicate token value " + std::to_string(x));
        seen.push_back(x);
        double phi = 2.0 * M_PI * (x + 1.0 / n_parties) / (total_tokens + 1);
        Complex phase = std::polar(1.0, phi);
        out.matrix += phase * op;
        out.phases.emplace_back(label, phase);
    }
    out.validate(kCheckTol);
    return out;
}

PartyUnitary build_parity_unitary(const PartyMeasurement& pvm) {
    check_pvm(pvm, kCheckTol, "build_parity_unitary");
    if (pvm.size() != 2)
        throw validation_error("parity unitary needs a binary measurement");
    PartyUnitary out;
    const Eigen::Index d = pvm.front().second.rows();
    out.matrix = CMatrix::Zero(d, d);
    for (const auto& [label, op] : pvm) {
        int x = parse_token_label(label, 1);
        Complex phase = (x == 1) ? Complex(1, 0) : Complex(-1, 0);
        out.matrix += phase * op;
        out.phases.emplace_back(label, phase);
    }
    out.validate(kCheckTol);
    return out;
}

double stabilizer_residual(const QuantumRingStrategy& s,
                           const std::vector<PartyUnitary>& units) {
    s.validate();
    const int n = s.layout.n;
    if (static_cast<int>(units.size()) != n)
        throw validation_error("expected one unitary per party");

    StateVector global = s.source_states[0];
    for (int k = 1; k < n; ++k) global = tensor_product(global, s.source_states[k]);
    global = permute_subsystems(global, source_to_party_permutation(n));

    CVector phi = global.amplitudes;
    for (int k = 0; k < n; ++k) {
        units[k].validate();
        if (units[k].matrix.rows() != s.layout.party_dim(k))
            throw dimension_error("unitary for party " + std::to_string(k + 1) +
                                  " has wrong dimension");
        phi = apply_on_slots(phi, global.dims, units[k].matrix, {2 * k, 2 * k + 1});
    }
    return (phi - global.amplitudes).norm();
}

bool pvm_from_unitarity(const std::vector<CMatrix>& povm,
                        const std::vector<Complex>& phases, double tol) {
    if (povm.empty() || povm.size() != phases.size())
        throw validation_error("need one phase per POVM element");
    const Eigen::Index d = povm.front().rows();
    CMatrix sum = CMatrix::Zero(d, d);
    CMatrix u = CMatrix::Zero(d, d);
    for (size_t a = 0; a < povm.size(); ++a) {
        const CMatrix& e = povm[a];
        if (e.rows() != d || e.cols() != d)
            throw dimension_error("POVM elements of inconsistent dimension");
        if (max_abs(e - e.adjoint()) > tol)
            throw validation_error("POVM element is not Hermitian");
        Eigen::SelfAdjointEigenSolver<CMatrix> es((e + e.adjoint()) / 2.0);
        if (es.eigenvalues().minCoeff() < -tol)
            throw validation_error("POVM element is not positive semidefinite");
        if (std::abs(std::abs(phases[a]) - 1.0) > tol)
            throw validation_error("phases must be unit modulus");
        for (size_t b = a + 1; b < phases.size(); ++b)
            if (std::abs(phases[a] - phases[b]) <= tol)
                throw validation_error("phases must be pairwise distinct");
        sum += e;
        u += phases[a] * e;
    }
    if (max_abs(sum - CMatrix::Identity(d, d)) > tol)
        throw validation_error("POVM does not sum to the identity");

    if (max_abs(u.adjoint() * u - CMatrix::Identity(d, d)) > tol) return false;

    // Unitarity of a distinct-phase combination forces each element to be a
    // projector; a violation here means the numerics are inconsistent.
    for (const CMatrix& e : povm)
        if (max_abs(e * e - e) > tol)
            throw consistency_error(
                "phase combination is unitary but an element is not idempotent");
    return true;
}

std::optional<std::pair<CMatrix, CMatrix>> factor_product_unitary(const CMatrix& u,
                                                                  int dim_left,
                                                                  int dim_right,
                                                                  double tol) {
    const Eigen::Index d = static_cast<Eigen::Index>(dim_left) * dim_right;
    if (u.rows() != d || u.cols() != d)
        throw dimension_error("unitary size does not match dim_left * dim_right");
    if (max_abs(u.adjoint() * u - CMatrix::Identity(d, d)) > kCheckTol)
        throw precondition_error("input is not unitary");

    SchmidtDecomposition dec = operator_schmidt(u, dim_left, dim_right, tol);
    if (dec.numerical_rank != 1) return std::nullopt;

    CMatrix v = std::sqrt(static_cast<double>(dim_left)) *
                unvec_row_major(dec.left_vectors.col(0), dim_left, dim_left);
    CMatrix w = std::sqrt(static_cast<double>(dim_right)) *
                unvec_row_major(dec.right_vectors.col(0), dim_right, dim_right);

    Complex det = v.determinant();
    if (std::abs(det) > kSupportTol) {
        Complex rot = std::polar(1.0, -std::arg(det) / dim_left);
        v *= rot;
        w /= rot;
    }
    if (max_abs(u - kron(v, w)) > tol) return std::nullopt;
    return std::make_pair(std::move(v), std::move(w));
}

PartyMeasurement coarse_grain_measurement(const PartyMeasurement& meas,
                                          const std::map<std::string, std::string>& map) {
    std::map<std::string, CMatrix> merged;
    for (const auto& [label, op] : meas) {
        auto it = map.find(label);
        if (it == map.end())
            throw validation_error("label '" + label + "' not mapped");
        auto [slot, inserted] = merged.try_emplace(it->second, op);
        if (!inserted) slot->second += op;
    }
    PartyMeasurement out;
    for (auto& [label, op] : merged) out.emplace_back(label, std::move(op));
    return out;
}

namespace {

CVector max_entangled(int d) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(d) * d);
    for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    return v;
}

// State sum_i lambda_i |ii> from the diagonal of Lambda / sqrt(d).
CVector scaled_pair_state(const CMatrix& lambda) {
    const int d = static_cast<int>(lambda.rows());
    CVector v = CVector::Zero(static_cast<Eigen::Index>(d) * d);
    for (int i = 0; i < d; ++i)
        v(i * d + i) = lambda(i, i) / std::sqrt(static_cast<double>(d));
    return v;
}

// Partial transpose on the second tensor slot of an operator on (da, db).
CMatrix transpose_second(const CMatrix& m, int da, int db) {
    CMatrix out(m.rows(), m.cols());
    for (int i = 0; i < da; ++i)
        for (int ip = 0; ip < da; ++ip)
            for (int j = 0; j < db; ++j)
                for (int jp = 0; jp < db; ++jp)
                    out(i * db + j, ip * db + jp) = m(i * db + jp, ip * db + j);
    return out;
}

}  // namespace

ChainOperators build_chain_operators(const QuantumRingStrategy& s,
                                     const std::vector<PartyUnitary>& units) {
    s.validate();
    const int n = s.layout.n;
    if (static_cast<int>(units.size()) != n)
        throw validation_error("expected one unitary per party");

    ChainOperators out;
    out.n = n;
    // Schmidt data per source; bases[k] = (right-side basis on R_k,
    // left-side basis on L_{k+1}).
    std::vector<CMatrix> basis_r(n), basis_l(n);
    for (int k = 0; k < n; ++k) {
        const auto [dr, dl] = s.layout.source_dims[k];
        SchmidtDecomposition dec = schmidt_decompose(s.source_states[k], {0});
        if (dr != dl || dec.numerical_rank != dr)
            throw precondition_error("source " + std::to_string(k + 1) +
                                     " does not have full Schmidt rank on both sides");
        out.schmidt_dims.push_back(dr);
        CMatrix lambda = CMatrix::Zero(dr, dr);
        for (int i = 0; i < dr; ++i)
            lambda(i, i) = std::sqrt(static_cast<double>(dr)) * dec.coefficients(i);
        out.lambda.push_back(std::move(lambda));
        basis_r[k] = dec.left_vectors;
        basis_l[k] = dec.right_vectors;
    }

    for (int k = 0; k < n; ++k) {
        const int prev = (k + n - 1) % n;
        units[k].validate();
        if (units[k].matrix.rows() != s.layout.party_dim(k))
            throw dimension_error("unitary for party " + std::to_string(k + 1) +
                                  " has wrong dimension");
        // Rotate the party unitary into the Schmidt bases of its two sources.
        CMatrix basis = kron(basis_l[prev], basis_r[k]);
        CMatrix u = basis.adjoint() * units[k].matrix * basis;
        CMatrix ll = kron(out.lambda[prev], out.lambda[k]);
        out.g.push_back(ll * u.transpose());
        out.f.push_back(u.adjoint() * ll);
        out.rotated_units.push_back(std::move(u));
    }

    if (n % 2 == 1) {
        const int last = n - 1;
        const int prev = n - 2;
        const int dp = out.schmidt_dims[prev];
        const int dn = out.schmidt_dims[last];
        CMatrix m = out.rotated_units[last].adjoint() *
                    kron(out.lambda[prev], CMatrix::Identity(dn, dn));
        out.q = transpose_second(m, dp, dn);
        CMatrix lambda_inv = CMatrix::Zero(dn, dn);
        for (int i = 0; i < dn; ++i) lambda_inv(i, i) = 1.0 / out.lambda[last](i, i).real();
        out.q_tilde = out.q * kron(CMatrix::Identity(dp, dp), lambda_inv);
    }
    return out;
}

double chain_defining_residual(const ChainOperators& c, int party) {
    if (party < 0 || party >= c.n) throw domain_error("party index out of range");
    const int prev = (party + c.n - 1) % c.n;
    const int dp = c.schmidt_dims[prev];
    const int dk = c.schmidt_dims[party];
    const std::vector<int> dims = {dp, dp, dk, dk};

    CVector pair = kron(scaled_pair_state(c.lambda[prev]), scaled_pair_state(c.lambda[party]));
    CVector omega = kron(max_entangled(dp), max_entangled(dk));

    CVector lhs_g = apply_on_slots(pair, dims, c.rotated_units[party], {1, 2});
    CVector rhs_g = apply_on_slots(omega, dims, c.g[party], {0, 3});
    double res_g = (lhs_g - rhs_g).norm();

    CVector lhs_f =
        apply_on_slots(pair, dims, c.rotated_units[party].adjoint(), {1, 2});
    CVector rhs_f = apply_on_slots(omega, dims, c.f[party], {1, 2});
    double res_f = (lhs_f - rhs_f).norm();

    return std::max(res_g, res_f);
}

double chain_equality_residual(const ChainOperators& c) {
    const int n = c.n;
    // Rotated source-major slots: R_1 L_2 R_2 L_3 ... R_n L_1 with source k
    // contributing dims (d_k, d_k).
    std::vector<int> dims;
    CVector omega;
    for (int k = 0; k < n; ++k) {
        dims.push_back(c.schmidt_dims[k]);
        dims.push_back(c.schmidt_dims[k]);
        omega = (k == 0) ? max_entangled(c.schmidt_dims[k])
                         : CVector(kron(omega, max_entangled(c.schmidt_dims[k])));
    }
    auto slot_r = [&](int k) { return 2 * k; };                      // R_{k+1}, 0-based k
    auto slot_l = [&](int k) { return k == 0 ? 2 * n - 1 : 2 * k - 1; };  // L_{k+1}

    CVector lhs = omega, rhs = omega;
    if (n % 2 == 0) {
        for (int k = 1; k < n; k += 2)  // parties 2, 4, ..., n
            lhs = apply_on_slots(lhs, dims, c.g[k],
                                 {slot_r(k - 1), slot_l((k + 1) % n)});
        for (int k = 0; k < n; k += 2)  // parties 1, 3, ..., n-1
            rhs = apply_on_slots(rhs, dims, c.f[k], {slot_l(k), slot_r(k)});
    } else {
        lhs = apply_on_slots(lhs, dims, c.lambda[n - 1], {slot_r(n - 1)});
        for (int k = 1; k < n; k += 2)  // parties 2, 4, ..., n-1
            lhs = apply_on_slots(lhs, dims, c.g[k],
                                 {slot_r(k - 1), slot_l((k + 1) % n)});
        rhs = apply_on_slots(rhs, dims, c.q, {slot_l(n - 1), slot_l(0)});
        for (int k = 0; k < n - 1; k += 2)  // parties 1, 3, ..., n-2
            rhs = apply_on_slots(rhs, dims, c.f[k], {slot_l(k), slot_r(k)});
    }
    return (lhs - rhs).norm();
}

ChainHarnessResult lemma_chain_harness(std::uint64_t seed, int n_systems,
                                          const std::vector<int>& dims,
                                          ChainParity parity, bool adversarial) {
    if (n_systems < 3) throw domain_error("need at least 3 systems");
    if ((n_systems % 2 == 0) != (parity == ChainParity::kEven))
        throw validation_error("parity does not match the system count");
    if (parity == ChainParity::kEven && n_systems < 4)
        throw domain_error("even chains need at least 4 systems");
    if (static_cast<int>(dims.size()) != n_systems)
        throw dimension_error("need one dimension per system");
    long long total = 1;
    for (int d : dims) {
        if (d < 2 || d > 4) throw capacity_error("system dimensions must be in 2..4");
        total *= d;
    }
    if (total > 4096) throw capacity_error("chain space too large");

    Rng rng(seed);
    std::vector<CMatrix> c(n_systems);
    for (int j = 0; j < n_systems; ++j) {
        for (;;) {
            CMatrix g = rng.gaussian_matrix(dims[j], dims[j]);
            Eigen::JacobiSVD<CMatrix> svd(g);
            if (svd.singularValues().minCoeff() >
                0.2 * svd.singularValues().maxCoeff()) {
                c[j] = g / g.norm();
                break;
            }
        }
    }

    const bool odd = parity == ChainParity::kOdd;
    const int m = n_systems / 2;
    Complex zeta = std::polar(1.0, 2.0 * M_PI * rng.uniform());

    struct Factor {
        CMatrix op;
        int sys_a, sys_b;
    };
    std::vector<Factor> a_ops, b_ops;
    for (int k = 0; k < m; ++k)
        a_ops.push_back({kron(c[2 * k], c[2 * k + 1]), 2 * k, 2 * k + 1});
    if (odd) a_ops.push_back({kron(c[n_systems - 1], c[0].inverse()), n_systems - 1, 0});
    for (int k = 0; k < m; ++k)
        b_ops.push_back(
            {kron(c[2 * k + 1], c[(2 * k + 2) % n_systems]), 2 * k + 1,
             (2 * k + 2) % n_systems});
    a_ops[0].op *= zeta;
    b_ops[0].op *= zeta;

    if (adversarial) {
        // Entangling bump on the first factor.
        CMatrix noise = rng.gaussian_matrix(a_ops[0].op.rows(), a_ops[0].op.cols());
        a_ops[0].op += 0.5 * max_abs(a_ops[0].op) / max_abs(noise) * noise;
    }

    CMatrix lhs = CMatrix::Identity(total, total);
    for (const auto& fac : a_ops)
        lhs = lhs * embed_operator(fac.op, dims, {fac.sys_a, fac.sys_b});
    CMatrix rhs = CMatrix::Identity(total, total);
    for (const auto& fac : b_ops)
        rhs = rhs * embed_operator(fac.op, dims, {fac.sys_a, fac.sys_b});

    ChainHarnessResult out;
    out.equality_residual = max_abs(lhs - rhs) / std::max(max_abs(lhs), 1e-300);
    for (const auto& fac : a_ops)
        out.a_ranks.push_back(
            operator_schmidt(fac.op, dims[fac.sys_a], dims[fac.sys_b]).numerical_rank);
    for (const auto& fac : b_ops)
        out.b_ranks.push_back(
            operator_schmidt(fac.op, dims[fac.sys_a], dims[fac.sys_b]).numerical_rank);
    out.all_product =
        std::all_of(out.a_ranks.begin(), out.a_ranks.end(), [](int r) { return r == 1; }) &&
        std::all_of(out.b_ranks.begin(), out.b_ranks.end(), [](int r) { return r == 1; });
    if (adversarial)
        out.passed = out.equality_residual > 1e-2 && out.a_ranks[0] > 1;
    else
        out.passed = out.equality_residual <= 1e-10 && out.all_product;
    return out;
}

NaimarkDilation naimark_dilate_binary(const CMatrix& e0, const CMatrix& e1, double tol) {
    const Eigen::Index d = e0.rows();
    if (e0.cols() != d || e1.rows() != d || e1.cols() != d)
        throw dimension_error("POVM elements must be square and equal-sized");
    for (const CMatrix* e : {&e0, &e1}) {
        if (max_abs(*e - e->adjoint()) > tol)
            throw precondition_error("POVM element is not Hermitian");
        Eigen::SelfAdjointEigenSolver<CMatrix> es((*e + e->adjoint()) / 2.0);
        if (es.eigenvalues().minCoeff() < -tol)
            throw precondition_error("POVM element is not positive semidefinite");
    }
    CMatrix p = e0 + e1;
    if (max_abs(p * p - p) > tol)
        throw precondition_error("element sum is not a projector");

    Eigen::SelfAdjointEigenSolver<CMatrix> es_p((p + p.adjoint()) / 2.0);
    std::vector<Eigen::Index> range;
    for (Eigen::Index i = 0; i < d; ++i)
        if (es_p.eigenvalues()(i) > 0.5) range.push_back(i);
    const Eigen::Index s = static_cast<Eigen::Index>(range.size());
    CMatrix b(d, s);
    for (Eigen::Index i = 0; i < s; ++i) b.col(i) = es_p.eigenvectors().col(range[i]);

    // Diagonalize E_0 on the range of P; each eigenpair gets a 2x2 rotation on
    // the flag qubit.
    Eigen::SelfAdjointEigenSolver<CMatrix> es_m(
        CMatrix((b.adjoint() * e0 * b + (b.adjoint() * e0 * b).adjoint()) / 2.0));
    CMatrix v = kron(CMatrix(CMatrix::Identity(d, d) - p),
                     CMatrix(CMatrix::Identity(2, 2)));
    for (Eigen::Index k = 0; k < s; ++k) {
        double pk = std::clamp(es_m.eigenvalues()(k), 0.0, 1.0);
        CVector phi = b * es_m.eigenvectors().col(k);
        CVector e_flag0 = CVector::Zero(2), e_flag1 = CVector::Zero(2);
        e_flag0(0) = 1.0;
        e_flag1(1) = 1.0;
        CVector col0 = std::sqrt(pk) * kron(phi, e_flag0) +
                       std::sqrt(1.0 - pk) * kron(phi, e_flag1);
        CVector col1 = std::sqrt(1.0 - pk) * kron(phi, e_flag0) -
                       std::sqrt(pk) * kron(phi, e_flag1);
        v += col0 * kron(phi, e_flag0).adjoint() + col1 * kron(phi, e_flag1).adjoint();
    }

    NaimarkDilation out;
    CMatrix flag0 = CMatrix::Zero(2, 2), flag1 = CMatrix::Zero(2, 2);
    flag0(0, 0) = 1.0;
    flag1(1, 1) = 1.0;
    out.pi0 = v.adjoint() * kron(p, flag0) * v;
    out.pi1 = v.adjoint() * kron(p, flag1) * v;
    out.v = std::move(v);
    return out;
}

void TokenSearchInput::validate() const {
    if (n < 3) throw validation_error("ring needs at least 3 parties");
    if (n > 8) throw capacity_error("token search supports at most 8 parties");
    if (static_cast<int>(joint.size()) != n ||
        static_cast<int>(response.size()) != n ||
        static_cast<int>(tokens.size()) != n)
        throw validation_error("need joint, response, and tokens entries per source");
    for (int k = 0; k < n; ++k) {
        if (tokens[k] < 1 || tokens[k] > 3)
            throw capacity_error("token counts must be in 1..3");
        if (joint[k].rows() < 1 || joint[k].rows() > 5 || joint[k].cols() < 1 ||
            joint[k].cols() > 5)
            throw capacity_error("message alphabets must have size 1..5");
        double sum = 0.0;
        for (Eigen::Index i = 0; i < joint[k].rows(); ++i)
            for (Eigen::Index j = 0; j < joint[k].cols(); ++j) {
                double p = joint[k](i, j);
                if (!(p >= 0.0) || !std::isfinite(p))
                    throw validation_error("joint probabilities must be nonnegative");
                sum += p;
            }
        if (std::abs(sum - 1.0) > kCheckTol)
            throw validation_error("joint distribution of source " +
                                   std::to_string(k + 1) + " does not sum to 1");
    }
    for (int p = 0; p < n; ++p) {
        const int prev = (p + n - 1) % n;
        if (response[p].rows() != joint[prev].cols() ||
            response[p].cols() != joint[p].rows())
            throw validation_error("response table of party " + std::to_string(p + 1) +
                                   " does not match the wire alphabets");
    }
}

namespace {

// All functions alphabet -> {0..max_val} in lexicographic order of their
// value tuples.
std::vector<std::vector<int>> all_functions(int alphabet, int max_val) {
    std::vector<std::vector<int>> out;
    std::vector<int> f(alphabet, 0);
    for (;;) {
        out.push_back(f);
        int i = alphabet - 1;
        while (i >= 0 && f[i] == max_val) f[i--] = 0;
        if (i < 0) break;
        ++f[i];
    }
    return out;
}

}  // namespace

std::optional<TokenFunctions> find_token_functions(const TokenSearchInput& in) {
    in.validate();
    const int n = in.n;

    // Per source: candidate (to_party, to_next) pairs obeying the sum rule on
    // the support, in lexicographic order.
    std::vector<std::vector<std::pair<std::vector<int>, std::vector<int>>>> candidates(n);
    for (int k = 0; k < n; ++k) {
        const int ar = static_cast<int>(in.joint[k].rows());
        const int al = static_cast<int>(in.joint[k].cols());
        auto rights = all_functions(ar, in.tokens[k]);
        auto lefts = all_functions(al, in.tokens[k]);
        for (const auto& tr : rights)
            for (const auto& tl : lefts) {
                bool ok = true;
                for (int i = 0; ok && i < ar; ++i)
                    for (int j = 0; ok && j < al; ++j)
                        if (in.joint[k](i, j) > kSupportTol &&
                            tr[i] + tl[j] != in.tokens[k])
                            ok = false;
                if (ok) candidates[k].emplace_back(tr, tl);
            }
        if (candidates[k].empty()) return std::nullopt;
    }

    // Support of each wire.
    std::vector<std::vector<bool>> right_support(n), left_support(n);
    for (int k = 0; k < n; ++k) {
        right_support[k].assign(in.joint[k].rows(), false);
        left_support[k].assign(in.joint[k].cols(), false);
        for (Eigen::Index i = 0; i < in.joint[k].rows(); ++i)
            for (Eigen::Index j = 0; j < in.joint[k].cols(); ++j)
                if (in.joint[k](i, j) > kSupportTol) {
                    right_support[k][i] = true;
                    left_support[k][j] = true;
                }
    }

    auto party_consistent = [&](int p, const std::vector<int>& tl_prev,
                                const std::vector<int>& tr_own) {
        const int prev = (p + n - 1) % n;
        for (size_t j = 0; j < tl_prev.size(); ++j) {
            if (!left_support[prev][j]) continue;
            for (size_t l = 0; l < tr_own.size(); ++l) {
                if (!right_support[p][l]) continue;
                if (in.response[p](static_cast<Eigen::Index>(j),
                                   static_cast<Eigen::Index>(l)) !=
                    tl_prev[j] + tr_own[l])
                    return false;
            }
        }
        return true;
    };

    std::vector<size_t> choice(n, 0);
    long long nodes = 0;
    // Depth-first over sources in order; the first complete assignment found
    // is lexicographically least.
    std::function<std::optional<TokenFunctions>(int)> dfs =
        [&](int k) -> std::optional<TokenFunctions> {
        if (++nodes > 50'000'000) throw capacity_error("token-function search too large");
        if (k == n) {
            TokenFunctions tf;
            tf.to_party.resize(n);
            tf.to_next.resize(n);
            tf.induced_probs.resize(n);
            for (int s = 0; s < n; ++s) {
                tf.to_party[s] = candidates[s][choice[s]].first;
                tf.to_next[s] = candidates[s][choice[s]].second;
                tf.induced_probs[s].assign(in.tokens[s] + 1, 0.0);
                for (Eigen::Index i = 0; i < in.joint[s].rows(); ++i)
                    for (Eigen::Index j = 0; j < in.joint[s].cols(); ++j)
                        tf.induced_probs[s][tf.to_party[s][i]] += in.joint[s](i, j);
            }
            return tf;
        }
        for (size_t c = 0; c < candidates[k].size(); ++c) {
            choice[k] = c;
            if (k >= 1 && !party_consistent(k, candidates[k - 1][choice[k - 1]].second,
                                            candidates[k][c].first))
                continue;
            if (k == n - 1 &&
                !party_consistent(0, candidates[n - 1][c].second,
                                  candidates[0][choice[0]].first))
                continue;
            if (auto r = dfs(k + 1)) return r;
        }
        return std::nullopt;
    };
    return dfs(0);
}

bool verify_token_functions(const TokenFunctions& tf, const TokenSearchInput& in) {
    in.validate();
    const int n = in.n;
    if (static_cast<int>(tf.to_party.size()) != n ||
        static_cast<int>(tf.to_next.size()) != n ||
        static_cast<int>(tf.induced_probs.size()) != n)
        return false;
    for (int k = 0; k < n; ++k) {
        if (static_cast<Eigen::Index>(tf.to_party[k].size()) != in.joint[k].rows() ||
            static_cast<Eigen::Index>(tf.to_next[k].size()) != in.joint[k].cols())
            return false;
        for (int v : tf.to_party[k])
            if (v < 0 || v > in.tokens[k]) return false;
        for (int v : tf.to_next[k])
            if (v < 0 || v > in.tokens[k]) return false;
        // (i) sum rule on the support.
        for (Eigen::Index i = 0; i < in.joint[k].rows(); ++i)
            for (Eigen::Index j = 0; j < in.joint[k].cols(); ++j)
                if (in.joint[k](i, j) > kSupportTol &&
                    tf.to_party[k][i] + tf.to_next[k][j] != in.tokens[k])
                    return false;
        // (iii) induced distribution consistent on both wires.
        if (static_cast<int>(tf.induced_probs[k].size()) != in.tokens[k] + 1)
            return false;
        std::vector<double> from_right(in.tokens[k] + 1, 0.0);
        std::vector<double> from_left(in.tokens[k] + 1, 0.0);
        for (Eigen::Index i = 0; i < in.joint[k].rows(); ++i)
            for (Eigen::Index j = 0; j < in.joint[k].cols(); ++j) {
                from_right[tf.to_party[k][i]] += in.joint[k](i, j);
                from_left[in.tokens[k] - tf.to_next[k][j]] += in.joint[k](i, j);
            }
        for (int t = 0; t <= in.tokens[k]; ++t)
            if (std::abs(from_right[t] - tf.induced_probs[k][t]) > 1e-9 ||
                std::abs(from_left[t] - tf.induced_probs[k][t]) > 1e-9)
                return false;
    }
    // (ii) responses decompose into token sums on the support.
    for (int p = 0; p < n; ++p) {
        const int prev = (p + n - 1) % n;
        std::vector<bool> lsupp(in.joint[prev].cols(), false);
        std::vector<bool> rsupp(in.joint[p].rows(), false);
        for (Eigen::Index i = 0; i < in.joint[prev].rows(); ++i)
            for (Eigen::Index j = 0; j < in.joint[prev].cols(); ++j)
                if (in.joint[prev](i, j) > kSupportTol) lsupp[j] = true;
        for (Eigen::Index i = 0; i < in.joint[p].rows(); ++i)
            for (Eigen::Index j = 0; j < in.joint[p].cols(); ++j)
                if (in.joint[p](i, j) > kSupportTol) rsupp[i] = true;
        for (size_t j = 0; j < lsupp.size(); ++j) {
            if (!lsupp[j]) continue;
            for (size_t l = 0; l < rsupp.size(); ++l) {
                if (!rsupp[l]) continue;
                if (in.response[p](static_cast<Eigen::Index>(j),
                                   static_cast<Eigen::Index>(l)) !=
                    tf.to_next[prev][j] + tf.to_party[p][l])
                    return false;
            }
        }
    }
    return true;
}

TokenSearchInput token_search_input(const TokenStrategy& t) {
    t.validate();
    TokenSearchInput in;
    in.n = t.n;
    in.tokens = t.tokens;
    for (int k = 0; k < t.n; ++k) {
        RMatrix joint = RMatrix::Zero(t.tokens[k] + 1, t.tokens[k] + 1);
        for (int i = 0; i <= t.tokens[k]; ++i)
            joint(i, t.tokens[k] - i) = t.send_right_probs[k][i];
        in.joint.push_back(std::move(joint));
    }
    for (int p = 0; p < t.n; ++p) {
        const int prev = (p + t.n - 1) % t.n;
        Eigen::MatrixXi resp(t.tokens[prev] + 1, t.tokens[p] + 1);
        for (int j = 0; j <= t.tokens[prev]; ++j)
            for (int l = 0; l <= t.tokens[p]; ++l)
                resp(j, l) = (t.mode == TokenMode::PTC) ? (j + l) % 2 : j + l;
        in.response.push_back(std::move(resp));
    }
    return in;
}

void SourceJunk::validate(int n_tokens) const {
    if (dim_right < 1 || dim_left < 1)
        throw validation_error("junk dimensions must be >= 1");
    if (static_cast<int>(states.size()) != n_tokens + 1)
        throw validation_error("need one junk state per token split");
    for (const auto& st : states) {
        if (st.size() != static_cast<Eigen::Index>(dim_right) * dim_left)
            throw validation_error("junk state size does not match its dimensions");
        if (std::abs(st.norm() - 1.0) > kStructuralTol)
            throw validation_error("junk states must be normalized");
    }
}

namespace {

enum class OutputRule { kCount, kParity };

QuantumRingStrategy canonical_strategy(const std::vector<int>& tokens,
                                       const std::vector<std::vector<double>>& probs,
                                       const std::vector<SourceJunk>& junk_in,
                                       OutputRule rule) {
    const int n = static_cast<int>(tokens.size());
    TokenStrategy checker;
    checker.n = n;
    checker.mode = rule == OutputRule::kParity ? TokenMode::PTC : TokenMode::TC;
    checker.tokens = tokens;
    checker.send_right_probs = probs;
    checker.validate();

    std::vector<SourceJunk> junk = junk_in;
    if (junk.empty()) {
        junk.resize(n);
        for (int k = 0; k < n; ++k)
            junk[k].states.assign(tokens[k] + 1, CVector::Ones(1));
    }
    if (static_cast<int>(junk.size()) != n)
        throw validation_error("need one junk description per source");
    for (int k = 0; k < n; ++k) junk[k].validate(tokens[k]);

    QuantumRingStrategy s;
    s.layout.n = n;
    s.projective = true;
    for (int k = 0; k < n; ++k)
        s.layout.source_dims.emplace_back((tokens[k] + 1) * junk[k].dim_right,
                                          (tokens[k] + 1) * junk[k].dim_left);
    for (int k = 0; k < n; ++k) {
        const int dr = junk[k].dim_right;
        const int dl = junk[k].dim_left;
        const int nt = tokens[k];
        CVector amp = CVector::Zero(static_cast<Eigen::Index>(nt + 1) * dr * (nt + 1) * dl);
        const int dim_l_total = (nt + 1) * dl;
        for (int t = 0; t <= nt; ++t) {
            double w = std::sqrt(probs[k][t]);
            if (w == 0.0) continue;
            for (int a = 0; a < dr; ++a)
                for (int b = 0; b < dl; ++b)
                    amp((t * dr + a) * dim_l_total + (nt - t) * dl + b) =
                        w * junk[k].states[t](a * dl + b);
        }
        s.source_states.emplace_back(
            std::vector<int>{(nt + 1) * dr, (nt + 1) * dl}, std::move(amp));
    }

    for (int p = 0; p < n; ++p) {
        const int prev = (p + n - 1) % n;
        const int nl = tokens[prev], nr = tokens[p];
        const int djl = junk[prev].dim_left, djr = junk[p].dim_right;
        const std::vector<int> pdims = {nl + 1, djl, nr + 1, djr};
        PartyMeasurement meas;
        const int lo = 0;
        const int hi = rule == OutputRule::kParity ? 1 : nl + nr;
        for (int a = lo; a <= hi; ++a) {
            CMatrix tok = CMatrix::Zero((nl + 1) * (nr + 1), (nl + 1) * (nr + 1));
            for (int tl = 0; tl <= nl; ++tl)
                for (int tr = 0; tr <= nr; ++tr) {
                    bool hit = rule == OutputRule::kParity ? ((tl + tr) % 2 == a)
                                                           : (tl + tr == a);
                    if (hit) tok(tl * (nr + 1) + tr, tl * (nr + 1) + tr) = 1.0;
                }
            meas.emplace_back(std::to_string(a), embed_operator(tok, pdims, {0, 2}));
        }
        s.measurements.push_back(std::move(meas));
    }
    s.validate();
    return s;
}

}  // namespace

QuantumRingStrategy canonical_tc_strategy(
    const std::vector<int>& tokens,
    const std::vector<std::vector<double>>& send_right_probs,
    const std::vector<SourceJunk>& junk) {
    return canonical_strategy(tokens, send_right_probs, junk, OutputRule::kCount);
}

QuantumRingStrategy canonical_ptc_strategy(const std::vector<double>& p_clockwise,
                                           const std::vector<SourceJunk>& junk) {
    std::vector<int> tokens(p_clockwise.size(), 1);
    std::vector<std::vector<double>> probs;
    for (double p : p_clockwise) {
        if (!(p >= 0.0 && p <= 1.0))
            throw validation_error("probabilities must lie in [0, 1]");
        probs.push_back({p, 1.0 - p});
    }
    return canonical_strategy(tokens, probs, junk, OutputRule::kParity);
}

std::vector<PartyUnitary> canonical_tc_units(const QuantumRingStrategy& s,
                                             int total_tokens) {
    std::vector<PartyUnitary> units;
    for (const auto& meas : s.measurements)
        units.push_back(build_party_unitary(meas, total_tokens, s.layout.n));
    return units;
}

std::vector<PartyUnitary> canonical_ptc_units(const QuantumRingStrategy& s) {
    std::vector<PartyUnitary> units;
    for (const auto& meas : s.measurements) units.push_back(build_parity_unitary(meas));
    return units;
}

}  // namespace ringcert
