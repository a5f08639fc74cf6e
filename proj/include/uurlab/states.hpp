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

#include <cmath>
#include <utility>

#include "uurlab/matrix.hpp"

namespace uurlab {

class PureState {
  public:
    explicit PureState(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
        require(amps_.size() >= 1, "PureState: empty amplitude vector");
        require(std::abs(amps_.norm() - 1.0) <= 1e-12, "PureState: vector is not normalised");
    }

    static PureState normalized(const ComplexVector& amplitudes) {
        double n = amplitudes.norm();
        require(n > 1e-14, "PureState::normalized: vector has (near) zero norm");
        return PureState(amplitudes / n);
    }

    static PureState basis_state(Eigen::Index dim, Eigen::Index k) {
        require(dim >= 1 && k >= 0 && k < dim, "PureState::basis_state: index out of range");
        ComplexVector v = ComplexVector::Zero(dim);
        v[k] = 1.0;
        return PureState(std::move(v));
    }

    Eigen::Index dim() const { return amps_.size(); }
    const ComplexVector& vec() const { return amps_; }

  private:
    ComplexVector amps_;
};

class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
        require(is_square(rho_), "DensityMatrix: matrix must be square");
        require(hermiticity_defect(rho_) <= 1e-12, "DensityMatrix: matrix is not Hermitian");
        require(std::abs(rho_.trace() - Complex(1, 0)) <= 1e-12, "DensityMatrix: trace is not 1");
        require(hermitian_eigenvalues(rho_).minCoeff() >= -1e-10,
                "DensityMatrix: matrix is not positive semidefinite");
    }

    static DensityMatrix from_pure(const PureState& psi) {
        return DensityMatrix(psi.vec() * psi.vec().adjoint());
    }

    static DensityMatrix maximally_mixed(Eigen::Index dim) {
        require(dim >= 1, "DensityMatrix::maximally_mixed: dim must be >= 1");
        return DensityMatrix(identity_matrix(dim) / static_cast<double>(dim));
    }

    Eigen::Index dim() const { return rho_.rows(); }
    const ComplexMatrix& matrix() const { return rho_; }

    double purity() const { return (rho_ * rho_).trace().real(); }

  private:
    ComplexMatrix rho_;
};

struct BlochVector {
    Vector3 r;

    explicit BlochVector(const Vector3& v) : r(v) {
        require(r.norm() <= 1.0 + 1e-12, "BlochVector: length exceeds 1");
    }
    BlochVector(double x, double y, double z) : BlochVector(Vector3(x, y, z)) {}

    double norm() const { return r.norm(); }
};

inline Complex expectation(const DensityMatrix& rho, const ComplexMatrix& op) {
    require(is_square(op) && op.rows() == rho.dim(), "expectation: operator dimension mismatch");
    return (rho.matrix() * op).trace();
}

inline Complex expectation(const PureState& psi, const ComplexMatrix& op) {
    require(is_square(op) && op.rows() == psi.dim(), "expectation: operator dimension mismatch");
    return psi.vec().dot(op * psi.vec());
}

inline BlochVector to_bloch(const DensityMatrix& rho) {
    require(rho.dim() == 2, "to_bloch: only defined for qubit states");
    return BlochVector(expectation(rho, pauli_x()).real(),
                       expectation(rho, pauli_y()).real(),
                       expectation(rho, pauli_z()).real());
}

inline DensityMatrix from_bloch(const BlochVector& b) {
    return DensityMatrix(0.5 * (identity_matrix(2) + pauli_dot(b.r)));
}

/// Pure qubit state with the given unit Bloch vector:
/// (cos(theta/2), e^{i phi} sin(theta/2)) in the z basis.
inline PureState pure_from_bloch(const BlochVector& b) {
    require(std::abs(b.norm() - 1.0) <= 1e-9, "pure_from_bloch: Bloch vector must have unit length");
    double theta = std::atan2(std::hypot(b.r.x(), b.r.y()), b.r.z());
    double phi = std::atan2(b.r.y(), b.r.x());
    ComplexVector v(2);
    v[0] = std::cos(theta / 2);
    v[1] = std::exp(Complex(0, phi)) * std::sin(theta / 2);
    return PureState::normalized(v);
}

}  // namespace uurlab
