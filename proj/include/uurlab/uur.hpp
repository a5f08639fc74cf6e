// Copyright 2026 The uurlab Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "uurlab/matrix.hpp"
#include "uurlab/report.hpp"
#include "uurlab/states.hpp"
#include "uurlab/unitary.hpp"

namespace uurlab {

/// Gram matrix of the operators I, U_1, ..., U_n under the state-weighted
/// inner product: entry (j, k) is <U_j' U_k> with the identity prepended at
/// index 0. Hermitian with unit diagonal; positive semidefinite for every
/// valid state, which is the uncertainty relation this library verifies.
struct GramMatrix {
    int n = 0;  // number of non-identity operators
    ComplexMatrix entries;
};

inline GramMatrix gram_matrix(const DensityMatrix& state, const std::vector<UnitaryOp>& unitaries) {
    for (const UnitaryOp& u : unitaries) {
        require(u.dim() == state.dim(), "gram_matrix: operator dimension mismatch");
    }
    const Eigen::Index m = static_cast<Eigen::Index>(unitaries.size()) + 1;
    auto op = [&](Eigen::Index j) -> ComplexMatrix {
        return j == 0 ? identity_matrix(state.dim()) : unitaries[static_cast<size_t>(j - 1)].matrix();
    };
    GramMatrix g;
    g.n = static_cast<int>(unitaries.size());
    g.entries = ComplexMatrix(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index k = j; k < m; ++k) {
            Complex val = expectation(state, ComplexMatrix(op(j).adjoint() * op(k)));
            g.entries(j, k) = val;
            g.entries(k, j) = std::conj(val);
        }
    }
    return g;
}

/// Leibniz expansion of the Gram determinant: sum over permutations of
/// signed products of pair means, each mean computed directly from the
/// state. Shares no code with the LU factorisation used by uur_evaluate,
/// so it serves as an independent determinant oracle for small n.
inline Complex gram_det_by_permutations(const DensityMatrix& state,
                                        const std::vector<UnitaryOp>& unitaries) {
    const size_t m = unitaries.size() + 1;
    auto op = [&](size_t j) -> ComplexMatrix {
        return j == 0 ? identity_matrix(state.dim()) : unitaries[j - 1].matrix();
    };
    std::vector<std::vector<Complex>> mean(m, std::vector<Complex>(m));
    for (size_t j = 0; j < m; ++j) {
        for (size_t k = 0; k < m; ++k) {
            mean[j][k] = expectation(state, ComplexMatrix(op(j).adjoint() * op(k)));
        }
    }
    std::vector<size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    Complex det(0.0, 0.0);
    do {
        int inversions = 0;
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = i + 1; j < m; ++j) {
                inversions += perm[i] > perm[j] ? 1 : 0;
            }
        }
        Complex term(inversions % 2 == 0 ? 1.0 : -1.0, 0.0);
        for (size_t j = 0; j < m; ++j) {
            term *= mean[j][perm[j]];
        }
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

/// det G >= 0, with the matrix positivity diagnostics attached. Saturation
/// (a minimum uncertainty state) is declared at |det G| <= 1e-9, suited to
/// double precision determinants of matrices up to 5x5 with entries of
/// order one.
inline RelationReport uur_evaluate(const DensityMatrix& state,
                                   const std::vector<UnitaryOp>& unitaries) {
    GramMatrix g = gram_matrix(state, unitaries);
    PsdDiagnostics diag = psd_diagnostics(g.entries);
    RelationReport rep = make_relation("unitary-gram-det", diag.det.real(), 0.0,
                                       RelationSense::GreaterEqual, 1e-9);
    rep.min_eig = diag.min_eig;
    return rep;
}

/// Var U := 1 - |<U>|^2, the disturbance of the state by U. Zero exactly
/// when U rephases the state; one when it maps it to an orthogonal state.
inline double variance_unitary(const DensityMatrix& state, const UnitaryOp& u) {
    require(u.dim() == state.dim(), "variance_unitary: dimension mismatch");
    Complex mean = expectation(state, u.matrix());
    return std::max(0.0, 1.0 - std::norm(mean));
}

/// Var A = <A^2> - <A>^2 for a Hermitian observable (distinct from the
/// unitary variance above).
inline double variance_hermitian(const DensityMatrix& state, const ComplexMatrix& a) {
    require(is_hermitian(a), "variance_hermitian: operator must be Hermitian");
    require(a.rows() == state.dim(), "variance_hermitian: dimension mismatch");
    double second = expectation(state, ComplexMatrix(a * a)).real();
    double first = expectation(state, a).real();
    return second - first * first;
}

/// Var U Var V >= |<U'V> - <U'><V>|^2, the two-operator case. The slack
/// equals det G of the corresponding 3x3 Gram matrix identically.
inline RelationReport uur_pair(const DensityMatrix& state, const UnitaryOp& u,
                               const UnitaryOp& v) {
    require(u.dim() == state.dim() && v.dim() == state.dim(), "uur_pair: dimension mismatch");
    Complex mu = expectation(state, u.matrix());
    Complex mv = expectation(state, v.matrix());
    Complex muv = expectation(state, ComplexMatrix(u.matrix().adjoint() * v.matrix()));
    double lhs = std::max(0.0, 1.0 - std::norm(mu)) * std::max(0.0, 1.0 - std::norm(mv));
    double rhs = std::norm(muv - std::conj(mu) * mv);
    return make_relation("unitary-pair", lhs, rhs, RelationSense::GreaterEqual, 1e-10);
}

struct BargmannValue {
    Complex value;
    double modulus = 0.0;
    double phase = 0.0;  // principal argument in (-pi, pi]
};

/// Cyclic invariant <U_1' U_2><U_2' U_3>...<U_m' U_1>. Unchanged when any
/// U_j picks up a global phase (the phases telescope around the cycle). For
/// a pure state it is the projective invariant of the states U_j|psi>,
/// i.e. the trace of the cyclic projector product, whose phase is the
/// geometric phase of the state cycle.
inline BargmannValue bargmann_invariant(const DensityMatrix& state,
                                        const std::vector<UnitaryOp>& cycle) {
    require(cycle.size() >= 2, "bargmann_invariant: need at least two operators");
    Complex value(1.0, 0.0);
    for (size_t j = 0; j < cycle.size(); ++j) {
        const UnitaryOp& a = cycle[j];
        const UnitaryOp& b = cycle[(j + 1) % cycle.size()];
        require(a.dim() == state.dim() && b.dim() == state.dim(),
                "bargmann_invariant: dimension mismatch");
        value *= expectation(state, ComplexMatrix(a.matrix().adjoint() * b.matrix()));
    }
    BargmannValue result;
    result.value = value;
    result.modulus = std::abs(value);
    result.phase = std::arg(value);
    if (result.phase <= -pi) {
        result.phase += 2.0 * pi;
    }
    return result;
}

/// The phase form of the two-operator relation:
/// cos Phi >= (|<U>|^2 + |<V>|^2 + |<U'V>|^2 - 1) / (2 |<U><U'V><V'>|)
/// with Phi the phase of the three-leg invariant <U><U'V><V'>. When that
/// invariant vanishes the phase is undefined and the report is flagged
/// indeterminate; uur_pair is then the authoritative check.
inline RelationReport uur_bargmann_pair(const DensityMatrix& state, const UnitaryOp& u,
                                        const UnitaryOp& v) {
    require(u.dim() == state.dim() && v.dim() == state.dim(),
            "uur_bargmann_pair: dimension mismatch");
    Complex mu = expectation(state, u.matrix());
    Complex mv = expectation(state, v.matrix());
    Complex muv = expectation(state, ComplexMatrix(u.matrix().adjoint() * v.matrix()));
    Complex invariant = mu * muv * std::conj(mv);
    RelationReport rep;
    rep.name = "bargmann-phase-pair";
    rep.sense = RelationSense::GreaterEqual;
    rep.tol = 1e-9;
    if (std::abs(invariant) < 1e-12) {
        rep.indeterminate = true;
        return rep;
    }
    double lhs = std::cos(std::arg(invariant));
    double rhs = (std::norm(mu) + std::norm(mv) + std::norm(muv) - 1.0) /
                 (2.0 * std::abs(invariant));
    rep = make_relation("bargmann-phase-pair", lhs, rhs, RelationSense::GreaterEqual, 1e-9);
    return rep;
}

/// Var A Var B >= |<[A,B]>|^2 / 4 + Cov(A,B)^2 for Hermitian A, B, with
/// Cov(A,B) = <AB+BA>/2 - <A><B>.
inline RelationReport rs_pair(const DensityMatrix& state, const ComplexMatrix& a,
                              const ComplexMatrix& b) {
    require(is_hermitian(a) && is_hermitian(b), "rs_pair: operators must be Hermitian");
    require(a.rows() == state.dim() && b.rows() == state.dim(), "rs_pair: dimension mismatch");
    double var_a = variance_hermitian(state, a);
    double var_b = variance_hermitian(state, b);
    Complex comm = expectation(state, ComplexMatrix(a * b - b * a));
    double sym = expectation(state, ComplexMatrix(a * b + b * a)).real() / 2.0;
    double cov = sym - expectation(state, a).real() * expectation(state, b).real();
    double lhs = var_a * var_b;
    double rhs = 0.25 * std::norm(comm) + cov * cov;
    return make_relation("robertson-schrodinger", lhs, rhs, RelationSense::GreaterEqual, 1e-10);
}

struct ScaledVarianceRow {
    double eps = 0.0;
    double var_u_scaled = 0.0;  // Var e^{i eps A} / eps^2
    double var_v_scaled = 0.0;  // Var e^{i eps B} / eps^2
    double rhs_scaled = 0.0;    // |<U'V> - <U'><V>|^2 / eps^4
};

struct ScaledVarianceTable {
    std::vector<ScaledVarianceRow> rows;
    double var_a = 0.0;    // limiting value of var_u_scaled
    double var_b = 0.0;    // limiting value of var_v_scaled
    double rhs_limit = 0.0;  // limiting value of rhs_scaled (the rs_pair rhs)
    double fit_constant = 0.0;  // smallest C with every residual <= C * eps
};

/// Probes the small-angle limit in which the unitary pair relation for
/// e^{i eps A}, e^{i eps B} contracts to the Robertson-Schrodinger relation:
/// Var e^{i eps A}/eps^2 -> Var A and the scaled right-hand side approaches
/// the commutator-plus-covariance form. Residuals are bounded by
/// fit_constant * eps on the probed grid (the even structure of the variance
/// makes its residual quadratic in eps, so the linear bound is loose there).
inline ScaledVarianceTable rs_limit_probe(const DensityMatrix& state, const ComplexMatrix& a,
                                          const ComplexMatrix& b,
                                          const std::vector<double>& eps_list) {
    require(is_hermitian(a) && is_hermitian(b), "rs_limit_probe: operators must be Hermitian");
    ScaledVarianceTable table;
    table.var_a = variance_hermitian(state, a);
    table.var_b = variance_hermitian(state, b);
    table.rhs_limit = rs_pair(state, a, b).rhs;
    for (double eps : eps_list) {
        require(eps > 0.0 && eps <= 0.5, "rs_limit_probe: eps must lie in (0, 0.5]");
        UnitaryOp u(exp_i_hermitian(a, eps));
        UnitaryOp v(exp_i_hermitian(b, eps));
        Complex mu = expectation(state, u.matrix());
        Complex mv = expectation(state, v.matrix());
        Complex muv = expectation(state, ComplexMatrix(u.matrix().adjoint() * v.matrix()));
        ScaledVarianceRow row;
        row.eps = eps;
        row.var_u_scaled = (1.0 - std::norm(mu)) / (eps * eps);
        row.var_v_scaled = (1.0 - std::norm(mv)) / (eps * eps);
        row.rhs_scaled = std::norm(muv - std::conj(mu) * mv) / (eps * eps * eps * eps);
        table.rows.push_back(row);
        double worst = std::max({std::abs(row.var_u_scaled - table.var_a),
                                 std::abs(row.var_v_scaled - table.var_b),
                                 std::abs(row.rhs_scaled - table.rhs_limit)});
        table.fit_constant = std::max(table.fit_constant, worst / eps);
    }
    return table;
}

/// Minimum eigenvalue of the centred matrix M_jk = <U_j' U_k> - <U_j'><U_k>
/// over the bare operator list (no identity prepended). Nonnegative for
/// every state: the Schur complement form of the Gram matrix positivity.
inline double schwarz_matrix_check(const DensityMatrix& state,
                                   const std::vector<UnitaryOp>& unitaries) {
    require(!unitaries.empty(), "schwarz_matrix_check: need at least one operator");
    const Eigen::Index n = static_cast<Eigen::Index>(unitaries.size());
    ComplexMatrix c(n, n);
    ComplexVector u(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        require(unitaries[static_cast<size_t>(j)].dim() == state.dim(),
                "schwarz_matrix_check: dimension mismatch");
        u(j) = expectation(state, unitaries[static_cast<size_t>(j)].matrix());
        for (Eigen::Index k = j; k < n; ++k) {
            Complex val = expectation(
                state, ComplexMatrix(unitaries[static_cast<size_t>(j)].matrix().adjoint() *
                                     unitaries[static_cast<size_t>(k)].matrix()));
            c(j, k) = val;
            c(k, j) = std::conj(val);
        }
    }
    ComplexMatrix m = c - u.conjugate() * u.transpose();
    m = 0.5 * (m + ComplexMatrix(m.adjoint()));
    return hermitian_eigenvalues(m)(0);
}

/// |<AB> - (a.b + i (a x b).r)| for A = a.sigma, B = b.sigma: the product
/// identity underlying the qubit corollaries. Zero to roundoff for every
/// qubit state.
inline double qubit_product_identity_residual(const DensityMatrix& state, const Vector3& a,
                                              const Vector3& b) {
    require(state.dim() == 2, "qubit_product_identity_residual: qubit states only");
    require(std::abs(a.norm() - 1.0) <= 1e-9 && std::abs(b.norm() - 1.0) <= 1e-9,
            "qubit_product_identity_residual: directions must be unit vectors");
    Complex lhs = expectation(state, ComplexMatrix(pauli_dot(a) * pauli_dot(b)));
    Vector3 r = to_bloch(state).r;
    Complex rhs(a.dot(b), a.cross(b).dot(r));
    return std::abs(lhs - rhs);
}

/// Gap of the first-moment bound
/// <A>^2 + <B>^2 - 2 (a.b) <A><B> <= 1 - (a.b)^2 - ((a x b).r)^2,
/// returned as rhs - lhs. Equals (1 - |r|^2)(1 - (a.b)^2), so it vanishes
/// exactly for pure states (and degenerately for parallel directions).
inline double qubit_moment_bound_gap(const DensityMatrix& state, const Vector3& a,
                                     const Vector3& b) {
    require(state.dim() == 2, "qubit_moment_bound_gap: qubit states only");
    require(std::abs(a.norm() - 1.0) <= 1e-9 && std::abs(b.norm() - 1.0) <= 1e-9,
            "qubit_moment_bound_gap: directions must be unit vectors");
    Vector3 r = to_bloch(state).r;
    double ma = expectation(state, pauli_dot(a)).real();
    double mb = expectation(state, pauli_dot(b)).real();
    double ab = a.dot(b);
    double lhs = ma * ma + mb * mb - 2.0 * ab * ma * mb;
    double rhs = 1.0 - ab * ab - std::pow(a.cross(b).dot(r), 2);
    return rhs - lhs;
}

/// The tight state-independent qubit relation for A = a.sigma, B = b.sigma:
/// DA^2 + DB^2 + 2 |a.b| sqrt(1-DA^2) sqrt(1-DB^2) >= 1 + (a.b)^2.
/// The product identity is re-verified internally as a guard.
inline RelationReport qubit_tight_relation(const DensityMatrix& state, const Vector3& a,
                                           const Vector3& b) {
    require(qubit_product_identity_residual(state, a, b) <= 1e-10,
            "qubit_tight_relation: product identity violated");
    double ma = expectation(state, pauli_dot(a)).real();
    double mb = expectation(state, pauli_dot(b)).real();
    double da2 = std::max(0.0, 1.0 - ma * ma);
    double db2 = std::max(0.0, 1.0 - mb * mb);
    double ab = a.dot(b);
    double lhs = da2 + db2 + 2.0 * std::abs(ab) * std::sqrt(1.0 - da2) * std::sqrt(1.0 - db2);
    double rhs = 1.0 + ab * ab;
    return make_relation("qubit-tight", lhs, rhs, RelationSense::GreaterEqual, 1e-10);
}

}  // namespace uurlab
