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

class UnitaryOp {
  public:
    explicit UnitaryOp(ComplexMatrix u) : u_(std::move(u)) {
        require(is_square(u_), "UnitaryOp: matrix must be square");
        require(unitarity_defect(u_) <= 1e-10, "UnitaryOp: matrix is not unitary");
    }

    static UnitaryOp identity(Eigen::Index dim) {
        require(dim >= 1, "UnitaryOp::identity: dim must be >= 1");
        return UnitaryOp(identity_matrix(dim));
    }

    Eigen::Index dim() const { return u_.rows(); }
    const ComplexMatrix& matrix() const { return u_; }

    UnitaryOp adjoint() const { return UnitaryOp(u_.adjoint()); }

    friend UnitaryOp operator*(const UnitaryOp& a, const UnitaryOp& b) {
        require(a.dim() == b.dim(), "UnitaryOp: dimension mismatch in product");
        return UnitaryOp(a.u_ * b.u_);
    }

  private:
    ComplexMatrix u_;
};

/// cos(angle/2) I + i sin(angle/2) axis.sigma for a unit axis.
///
/// Under conjugation this turns the Bloch vector by `angle` about `axis`
/// (left-handed about the axis; the convention is fixed project-wide and
/// pinned by tests, so composition and inversion behave as expected).
inline UnitaryOp rotation_unitary(const Vector3& axis, double angle) {
    require(std::abs(axis.norm() - 1.0) <= 1e-9, "rotation_unitary: axis must be a unit vector");
    ComplexMatrix u = std::cos(angle / 2) * identity_matrix(2) +
                      Complex(0, 1) * std::sin(angle / 2) * pauli_dot(axis);
    return UnitaryOp(std::move(u));
}

/// The rotation that carries the Bloch vector `from` onto `to` along the
/// shorter great-circle arc. Antipodal inputs turn by pi about an arbitrary
/// perpendicular axis.
inline UnitaryOp rotation_taking(const Vector3& from, const Vector3& to) {
    require(std::abs(from.norm() - 1.0) <= 1e-9 && std::abs(to.norm() - 1.0) <= 1e-9,
            "rotation_taking: both vectors must be unit length");
    Vector3 cross = from.cross(to);
    double angle = std::atan2(cross.norm(), from.dot(to));
    if (cross.norm() <= 1e-14) {
        if (from.dot(to) > 0) {
            return UnitaryOp::identity(2);
        }
        // Antipodal: any axis perpendicular to `from` works.
        Vector3 helper = std::abs(from.x()) < 0.9 ? Vector3(1, 0, 0) : Vector3(0, 1, 0);
        Vector3 axis = from.cross(helper).normalized();
        return rotation_unitary(axis, pi);
    }
    // rotation_unitary turns left-handed, so hand it the reversed axis.
    return rotation_unitary((to.cross(from)).normalized(), angle);
}

/// |tr(a† b)| / dim, which is 1 exactly when a and b agree up to a global phase.
inline double phase_alignment(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(is_square(a) && a.rows() == b.rows() && a.cols() == b.cols(),
            "phase_alignment: dimension mismatch");
    return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

inline bool equal_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-10) {
    return 1.0 - phase_alignment(a, b) <= tol;
}

/// Rotation axis of a qubit unitary, up to overall sign. Throws for operators
/// proportional to the identity, which have no axis.
inline Vector3 rotation_axis(const UnitaryOp& u) {
    require(u.dim() == 2, "rotation_axis: only defined for qubit unitaries");
    const ComplexMatrix& m = u.matrix();
    // Pauli components: m = c0 I + c . sigma. For any qubit unitary c is a
    // real vector times a global complex phase.
    Complex cx = 0.5 * (m(1, 0) + m(0, 1));
    Complex cy = 0.5 * Complex(0, 1) * (m(0, 1) - m(1, 0));
    Complex cz = 0.5 * (m(0, 0) - m(1, 1));
    Vector3 abs_parts(std::abs(cx), std::abs(cy), std::abs(cz));
    if (abs_parts.maxCoeff() <= 1e-9) {
        throw std::domain_error("rotation_axis: operator is proportional to the identity");
    }
    int k = 0;
    abs_parts.maxCoeff(&k);
    Complex lead = k == 0 ? cx : (k == 1 ? cy : cz);
    Complex phase = lead / std::abs(lead);
    Vector3 axis((cx / phase).real(), (cy / phase).real(), (cz / phase).real());
    return axis.normalized();
}

}  // namespace uurlab
