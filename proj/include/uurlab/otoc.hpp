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

#include "uurlab/matrix.hpp"
#include "uurlab/overlap.hpp"
#include "uurlab/report.hpp"
#include "uurlab/states.hpp"
#include "uurlab/unitary.hpp"

namespace uurlab {

/// Out-of-time-order correlator F = <W_t' V' W_t V> of two unitaries on a
/// state. F = 1 exactly when V and W_t commute; the drift of F away from 1
/// measures how badly W_t fails to commute with V as seen by the state.
inline Complex otoc_value(const DensityMatrix& state, const UnitaryOp& v, const UnitaryOp& w_t) {
    require(state.dim() == v.dim() && v.dim() == w_t.dim(), "otoc_value: dimension mismatch");
    ComplexMatrix correlator =
        w_t.matrix().adjoint() * v.matrix().adjoint() * w_t.matrix() * v.matrix();
    return expectation(state, correlator);
}

/// Overlap bound for a pair of unitaries on one state:
/// |<U'V>| <= cos(theta_U - theta_V) with theta_U = arccos|<U>|.
/// The moduli are clamped into [0, 1] before the arccos.
inline RelationReport overlap_bound(const DensityMatrix& state, const UnitaryOp& u,
                                    const UnitaryOp& v) {
    require(state.dim() == u.dim() && u.dim() == v.dim(), "overlap_bound: dimension mismatch");
    double lhs = std::abs(expectation(state, ComplexMatrix(u.matrix().adjoint() * v.matrix())));
    double theta_u = angle_from_overlap_modulus(std::abs(expectation(state, u.matrix())));
    double theta_v = angle_from_overlap_modulus(std::abs(expectation(state, v.matrix())));
    return make_relation("unitary-overlap", lhs, std::cos(theta_u - theta_v),
                         RelationSense::LessEqual, 1e-10);
}

/// Both OTOC bounds evaluated on concrete data. With
/// theta_vw = arccos|<V W_t>| and theta_wv = arccos|<W_t V>|:
///   modulus bound      |F| <= cos(theta_vw - theta_wv)
///   commutator bound   <[V, W_t]' [V, W_t]> = 2 (1 - Re F)
///                                          >= 4 sin^2((theta_vw - theta_wv) / 2)
/// Both are the pair overlap bound applied to (V W_t, W_t V), whose relative
/// overlap is exactly F.
struct OtocReport {
    Complex f{0.0, 0.0};
    double theta_vw = 0.0;
    double theta_wv = 0.0;
    double modulus_bound = 0.0;
    double commutator_lhs = 0.0;
    double commutator_rhs = 0.0;

    RelationReport modulus_relation() const {
        return make_relation("otoc-modulus", std::abs(f), modulus_bound,
                             RelationSense::LessEqual, 1e-10);
    }

    RelationReport commutator_relation() const {
        return make_relation("otoc-commutator", commutator_lhs, commutator_rhs,
                             RelationSense::GreaterEqual, 1e-10);
    }
};

inline OtocReport otoc_bounds(const DensityMatrix& state, const UnitaryOp& v,
                              const UnitaryOp& w_t) {
    require(state.dim() == v.dim() && v.dim() == w_t.dim(), "otoc_bounds: dimension mismatch");
    OtocReport report;
    report.f = otoc_value(state, v, w_t);
    double vw = std::abs(expectation(state, ComplexMatrix(v.matrix() * w_t.matrix())));
    double wv = std::abs(expectation(state, ComplexMatrix(w_t.matrix() * v.matrix())));
    report.theta_vw = angle_from_overlap_modulus(vw);
    report.theta_wv = angle_from_overlap_modulus(wv);
    report.modulus_bound = std::cos(report.theta_vw - report.theta_wv);
    // Nonnegative in exact arithmetic (|F| <= 1); clamp so roundoff at F = 1
    // cannot leak a negative mean square commutator into reports.
    report.commutator_lhs = std::max(0.0, 2.0 * (1.0 - report.f.real()));
    double half_gap = 0.5 * (report.theta_vw - report.theta_wv);
    report.commutator_rhs = 4.0 * std::sin(half_gap) * std::sin(half_gap);
    return report;
}

/// Heisenberg evolution W_t = e^{iHt} W e^{-iHt} under a Hermitian generator.
/// t = 0 hands back W unchanged, so time sweeps anchor exactly at the input.
/// The bound evaluators accept any W_t, so nothing downstream depends on the
/// operator having been produced this way.
inline UnitaryOp heisenberg_evolve(const UnitaryOp& w, const ComplexMatrix& h, double t) {
    require(is_square(h) && h.rows() == w.dim(), "heisenberg_evolve: dimension mismatch");
    require(is_hermitian(h), "heisenberg_evolve: generator must be Hermitian");
    if (t == 0.0) {
        return w;
    }
    ComplexMatrix frame = exp_i_hermitian(h, t);
    return UnitaryOp(ComplexMatrix(frame * w.matrix() * frame.adjoint()));
}

}  // namespace uurlab
