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

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uurlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Vector3 = Eigen::Vector3d;

inline constexpr double pi = std::numbers::pi;

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw std::invalid_argument(message);
    }
}

inline ComplexMatrix identity_matrix(Eigen::Index dim) {
    return ComplexMatrix::Identity(dim, dim);
}

inline ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

inline ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

/// n.x * sigma_x + n.y * sigma_y + n.z * sigma_z for an arbitrary real 3-vector n.
inline ComplexMatrix pauli_dot(const Vector3& n) {
    ComplexMatrix m(2, 2);
    m << n.z(), Complex(n.x(), -n.y()), Complex(n.x(), n.y()), -n.z();
    return m;
}

inline double hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double unitarity_defect(const ComplexMatrix& m) {
    return (m.adjoint() * m - identity_matrix(m.cols())).cwiseAbs().maxCoeff();
}

inline bool is_square(const ComplexMatrix& m) {
    return m.rows() == m.cols() && m.rows() >= 1;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10) {
    return is_square(m) && hermiticity_defect(m) <= tol;
}

inline bool is_unitary(const ComplexMatrix& m, double tol = 1e-10) {
    return is_square(m) && unitarity_defect(m) <= tol;
}

/// Eigenvalues of a Hermitian matrix, ascending.
inline RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
    require(is_hermitian(m, 1e-8), "hermitian_eigenvalues: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    require(solver.info() == Eigen::Success, "hermitian_eigenvalues: eigensolver failed");
    return solver.eigenvalues();
}

/// exp(i * scale * h) for Hermitian h, computed through the spectral decomposition.
inline ComplexMatrix exp_i_hermitian(const ComplexMatrix& h, double scale = 1.0) {
    require(is_hermitian(h, 1e-10), "exp_i_hermitian: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    require(solver.info() == Eigen::Success, "exp_i_hermitian: eigensolver failed");
    const auto& values = solver.eigenvalues();
    const ComplexMatrix& vectors = solver.eigenvectors();
    ComplexVector phases(values.size());
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        phases[k] = std::exp(Complex(0, scale * values[k]));
    }
    return vectors * phases.asDiagonal() * vectors.adjoint();
}

struct PsdDiagnostics {
    Complex det;
    double min_eig;
};

/// Determinant and smallest eigenvalue of a Hermitian matrix. Both outputs are
/// real-valued up to roundoff; the determinant keeps its (tiny) imaginary part
/// so callers can see the numerical noise floor.
inline PsdDiagnostics psd_diagnostics(const ComplexMatrix& m, double hermitian_tol = 1e-10) {
    require(is_square(m), "psd_diagnostics: matrix must be square");
    require(hermiticity_defect(m) <= hermitian_tol, "psd_diagnostics: matrix is not Hermitian");
    PsdDiagnostics out;
    out.det = m.determinant();
    out.min_eig = hermitian_eigenvalues(m).minCoeff();
    return out;
}

}  // namespace uurlab
