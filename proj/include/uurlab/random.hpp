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

#include <cstdint>
#include <random>

#include <Eigen/QR>

#include "uurlab/matrix.hpp"
#include "uurlab/states.hpp"
#include "uurlab/unitary.hpp"

namespace uurlab {

/// Deterministic generator for (seed, stream). Distinct streams from the same
/// seed are independent for practical purposes, which keeps parallel scans
/// reproducible without sharing generator state.
inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x75754c41u};
    return std::mt19937_64(seq);
}

inline ComplexMatrix random_ginibre(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            g(r, c) = Complex(gauss(rng), gauss(rng));
        }
    }
    return g;
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of the R diagonal folded into Q, which removes the QR sign ambiguity.
inline UnitaryOp haar_random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
    require(dim >= 1, "haar_random_unitary: dim must be >= 1");
    ComplexMatrix g = random_ginibre(dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    ComplexVector phases(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        phases(j) = std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0);
    }
    return UnitaryOp(q * phases.asDiagonal());
}

inline UnitaryOp haar_random_unitary(Eigen::Index dim, std::uint64_t seed) {
    std::mt19937_64 rng = seeded_rng(seed);
    return haar_random_unitary(dim, rng);
}

inline PureState random_pure_state(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        v(j) = Complex(gauss(rng), gauss(rng));
    }
    return PureState::normalized(v);
}

inline PureState random_pure_state(Eigen::Index dim, std::uint64_t seed) {
    std::mt19937_64 rng = seeded_rng(seed);
    return random_pure_state(dim, rng);
}

inline ComplexMatrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
    ComplexMatrix g = random_ginibre(dim, rng);
    return ComplexMatrix(0.5 * (g + g.adjoint()));
}

/// Full-rank random state: a Ginibre matrix G gives G G† / tr(G G†). The
/// optional purity_blend in [0, 1] mixes toward a random pure state, with 1
/// giving exactly that pure state.
inline DensityMatrix random_density_matrix(Eigen::Index dim, std::mt19937_64& rng,
                                           double purity_blend = 0.0) {
    require(purity_blend >= 0.0 && purity_blend <= 1.0,
            "random_density_matrix: purity_blend must lie in [0, 1]");
    ComplexMatrix g = random_ginibre(dim, rng);
    ComplexMatrix w = g * g.adjoint();
    w /= w.trace();
    if (purity_blend > 0.0) {
        PureState psi = random_pure_state(dim, rng);
        ComplexMatrix proj = psi.vec() * psi.vec().adjoint();
        w = (1.0 - purity_blend) * w + purity_blend * proj;
    }
    return DensityMatrix(w);
}

inline Vector3 random_unit_vector(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (true) {
        Vector3 v(gauss(rng), gauss(rng), gauss(rng));
        double n = v.norm();
        if (n > 1e-12) {
            return v / n;
        }
    }
}

}  // namespace uurlab
