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
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uurlab/matrix.hpp"
#include "uurlab/report.hpp"
#include "uurlab/states.hpp"
#include "uurlab/unitary.hpp"

namespace uurlab {

/// arccos of an overlap modulus, with the argument clamped into [0, 1].
/// Moduli within 1e-14 of unity collapse to angle zero: arccos turns a
/// one-ulp defect near 1 into ~1e-8 of angle, which would otherwise swamp
/// saturation checks carried out at much tighter tolerances.
inline double angle_from_overlap_modulus(double modulus) {
    double m = std::min(std::max(modulus, 0.0), 1.0);
    if (m >= 1.0 - 1e-14) {
        return 0.0;
    }
    return std::acos(m);
}

/// The pure state U|psi>.
inline PureState apply_unitary(const UnitaryOp& u, const PureState& psi) {
    require(u.dim() == psi.dim(), "apply_unitary: dimension mismatch");
    return PureState(ComplexVector(u.matrix() * psi.vec()));
}

/// Pairwise transition probabilities of three pure states, together with the
/// derived state angles theta_jk = arccos sqrt(T_jk) in [0, pi/2].
struct OverlapTriple {
    double t12 = 0.0;
    double t13 = 0.0;
    double t23 = 0.0;
    double theta12 = 0.0;
    double theta13 = 0.0;
    double theta23 = 0.0;

    OverlapTriple(double t12_in, double t13_in, double t23_in) {
        for (double t : {t12_in, t13_in, t23_in}) {
            require(t >= -1e-12 && t <= 1.0 + 1e-12,
                    "OverlapTriple: transition probabilities must lie in [0, 1]");
        }
        t12 = std::min(std::max(t12_in, 0.0), 1.0);
        t13 = std::min(std::max(t13_in, 0.0), 1.0);
        t23 = std::min(std::max(t23_in, 0.0), 1.0);
        theta12 = angle_from_overlap_modulus(std::sqrt(t12));
        theta13 = angle_from_overlap_modulus(std::sqrt(t13));
        theta23 = angle_from_overlap_modulus(std::sqrt(t23));
    }

    /// Builds a triple from possibly out-of-range probabilities. Estimates
    /// derived from fitted visibilities can overshoot [0, 1] by noise; they
    /// are clipped into range before use instead of rejected.
    static OverlapTriple from_clipped(double t12_in, double t13_in, double t23_in) {
        auto clip = [](double t) { return std::min(std::max(t, 0.0), 1.0); };
        return OverlapTriple(clip(t12_in), clip(t13_in), clip(t23_in));
    }
};

/// |<psi1|psi2>|^2, clamped into [0, 1].
inline double transition_probability(const PureState& psi1, const PureState& psi2) {
    require(psi1.dim() == psi2.dim(), "transition_probability: dimension mismatch");
    Complex overlap = psi1.vec().dot(psi2.vec());
    return std::min(std::norm(overlap), 1.0);
}

/// The transition-probability triple of three pure states.
inline OverlapTriple overlap_triple(const PureState& psi1, const PureState& psi2,
                                    const PureState& psi3) {
    return OverlapTriple(transition_probability(psi1, psi2), transition_probability(psi1, psi3),
                         transition_probability(psi2, psi3));
}

/// The triple for the states (psi, U psi, V psi), evaluated directly from
/// expectation values of U, V and U'V.
inline OverlapTriple pair_overlap_triple(const UnitaryOp& u, const UnitaryOp& v,
                                         const PureState& psi) {
    require(u.dim() == psi.dim() && v.dim() == psi.dim(),
            "pair_overlap_triple: dimension mismatch");
    Complex mu = expectation(psi, u.matrix());
    Complex mv = expectation(psi, v.matrix());
    Complex muv = expectation(psi, ComplexMatrix(u.matrix().adjoint() * v.matrix()));
    return OverlapTriple::from_clipped(std::norm(mu), std::norm(mv), std::norm(muv));
}

/// T12 + T13 + T23 - 2 sqrt(T12 T13 T23) <= 1, valid for the transition
/// probabilities of any three pure states. An infeasible verdict means no
/// three pure states can realise the triple.
inline RelationReport our_evaluate(const OverlapTriple& triple) {
    double lhs = triple.t12 + triple.t13 + triple.t23 -
                 2.0 * std::sqrt(triple.t12 * triple.t13 * triple.t23);
    return make_relation("overlap-three", lhs, 1.0, RelationSense::LessEqual, 1e-9);
}

/// Defect of (theta12, theta23, theta13) from the realisable polytope: the
/// [0, pi/2] cube cut down by the three triangle inequalities. Zero inside,
/// otherwise the largest constraint violation in radians.
inline double overlap_polytope_defect(const OverlapTriple& triple) {
    double a = triple.theta12;
    double b = triple.theta23;
    double c = triple.theta13;
    double defect = 0.0;
    for (double t : {a, b, c}) {
        defect = std::max({defect, -t, t - 0.5 * pi});
    }
    return std::max({defect, a - b - c, b - c - a, c - a - b});
}

/// Which angle-sum identity holds at geodesic saturation. The named state
/// sits between the other two on the connecting Fubini-Study geodesic.
enum class GeodesicBranch { first_between, second_between, third_between };

struct GeodesicReport {
    OverlapTriple triple;
    GeodesicBranch branch;
    double residual = 0.0;
    /// Defects of the three identities, indexed as the enum: theta23 =
    /// theta12 + theta13, theta13 = theta12 + theta23, theta12 = theta13 +
    /// theta23.
    std::array<double, 3> branch_defects{};
    /// More than one identity holds (coincident or orthogonal states).
    bool degenerate = false;
    bool in_polytope = false;
    double polytope_defect = 0.0;
};

/// Tests whether the angle triple satisfies a geodesic identity: saturation
/// of the three-state overlap bound is equivalent to one state angle being
/// the sum of the other two.
inline GeodesicReport geodesic_check(const OverlapTriple& triple) {
    GeodesicReport report{triple,
                          GeodesicBranch::first_between,
                          0.0,
                          {std::abs(triple.theta23 - (triple.theta12 + triple.theta13)),
                           std::abs(triple.theta13 - (triple.theta12 + triple.theta23)),
                           std::abs(triple.theta12 - (triple.theta13 + triple.theta23))},
                          false,
                          false,
                          0.0};
    size_t best = 0;
    for (size_t j = 1; j < 3; ++j) {
        if (report.branch_defects[j] < report.branch_defects[best]) {
            best = j;
        }
    }
    report.branch = static_cast<GeodesicBranch>(best);
    report.residual = report.branch_defects[best];
    int near_zero = 0;
    for (double d : report.branch_defects) {
        near_zero += d <= 1e-9 ? 1 : 0;
    }
    report.degenerate = near_zero >= 2;
    report.polytope_defect = overlap_polytope_defect(triple);
    report.in_polytope = report.polytope_defect <= 1e-9;
    return report;
}

/// The geodesic test on three pure states.
inline GeodesicReport geodesic_check(const PureState& psi1, const PureState& psi2,
                                     const PureState& psi3) {
    return geodesic_check(overlap_triple(psi1, psi2, psi3));
}

struct TraceTriangleReport {
    /// One triangle inequality per pair held apart: sqrt(1 - T_jk) bounded by
    /// the sum of the distances through the remaining state; indexed (1,2),
    /// (1,3), (2,3).
    std::array<RelationReport, 3> permutations;
    bool all_hold = false;
    /// The triple passes every trace-distance triangle inequality yet is
    /// excluded by the (strictly stronger) three-state overlap bound.
    bool weaker_than_overlap = false;
};

/// Triangle inequality for trace distance, d_jk = sqrt(1 - T_jk), in all
/// three permutations.
inline TraceTriangleReport trace_triangle_evaluate(const OverlapTriple& triple) {
    auto dist = [](double t) { return std::sqrt(std::max(0.0, 1.0 - t)); };
    auto one = [&](const char* name, double far, double via_a, double via_b) {
        return make_relation(name, dist(far), dist(via_a) + dist(via_b), RelationSense::LessEqual,
                             1e-9);
    };
    TraceTriangleReport report{
        {one("trace-triangle-12", triple.t12, triple.t13, triple.t23),
         one("trace-triangle-13", triple.t13, triple.t12, triple.t23),
         one("trace-triangle-23", triple.t23, triple.t12, triple.t13)},
        false,
        false};
    report.all_hold = report.permutations[0].holds() && report.permutations[1].holds() &&
                      report.permutations[2].holds();
    report.weaker_than_overlap = report.all_hold && our_evaluate(triple).infeasible();
    return report;
}

struct AreaPhaseReport {
    /// Phase of the cyclic overlap product <psi1|psi2><psi2|psi3><psi3|psi1>.
    double phase = 0.0;
    /// Area of the Bloch-vector spherical triangle in steradians.
    double area = 0.0;
    /// |area - 2 |phase||.
    double defect = 0.0;
};

/// Checks the geometric-phase/solid-angle correspondence for qubit triples:
/// the triangle area equals twice the magnitude of the cyclic overlap phase.
/// The area comes from l'Huilier's formula on the pairwise Bloch angles,
/// which stays stable for thin triangles.
inline AreaPhaseReport bargmann_area_check(const PureState& psi1, const PureState& psi2,
                                           const PureState& psi3) {
    require(psi1.dim() == 2 && psi2.dim() == 2 && psi3.dim() == 2,
            "bargmann_area_check: qubit states only");
    Complex z12 = psi1.vec().dot(psi2.vec());
    Complex z23 = psi2.vec().dot(psi3.vec());
    Complex z31 = psi3.vec().dot(psi1.vec());
    if (std::abs(z12) < 1e-12 || std::abs(z23) < 1e-12 || std::abs(z31) < 1e-12) {
        throw std::domain_error(
            "bargmann_area_check: undefined-phase (the triple contains an orthogonal pair)");
    }
    AreaPhaseReport report;
    report.phase = std::arg(z12 * z23 * z31);
    auto bloch = [](const PureState& s) { return to_bloch(DensityMatrix::from_pure(s)).r; };
    Vector3 a = bloch(psi1);
    Vector3 b = bloch(psi2);
    Vector3 c = bloch(psi3);
    auto arc = [](const Vector3& p, const Vector3& q) {
        return std::atan2(p.cross(q).norm(), p.dot(q));
    };
    double g12 = arc(a, b);
    double g13 = arc(a, c);
    double g23 = arc(b, c);
    double s = 0.5 * (g12 + g13 + g23);
    double prod = std::tan(0.5 * s) * std::tan(0.5 * (s - g12)) * std::tan(0.5 * (s - g13)) *
                  std::tan(0.5 * (s - g23));
    report.area = 4.0 * std::atan(std::sqrt(std::max(0.0, prod)));
    report.defect = std::abs(report.area - 2.0 * std::abs(report.phase));
    return report;
}

/// Defects of the two angle-sum identities behind saturation of the overlap
/// bound on (psi, U psi, V psi): index 0 is |theta_uv - (theta_u + theta_v)|,
/// index 1 is |theta_uv - |theta_u - theta_v||.
inline std::array<double, 2> mus_branch_defects(const UnitaryOp& u, const UnitaryOp& v,
                                                const PureState& psi) {
    require(u.dim() == psi.dim() && v.dim() == psi.dim(), "mus_branch_defects: dimension mismatch");
    double theta_u = angle_from_overlap_modulus(std::abs(expectation(psi, u.matrix())));
    double theta_v = angle_from_overlap_modulus(std::abs(expectation(psi, v.matrix())));
    double theta_uv = angle_from_overlap_modulus(
        std::abs(expectation(psi, ComplexMatrix(u.matrix().adjoint() * v.matrix()))));
    return {std::abs(theta_uv - (theta_u + theta_v)),
            std::abs(theta_uv - std::abs(theta_u - theta_v))};
}

/// Distance of psi from being a minimum uncertainty state of the pair (U, V):
/// the smaller of the two branch defects. Zero exactly when (psi, U psi,
/// V psi) saturate the three-state overlap bound.
inline double mus_residual(const UnitaryOp& u, const UnitaryOp& v, const PureState& psi) {
    std::array<double, 2> defects = mus_branch_defects(u, v, psi);
    return std::min(defects[0], defects[1]);
}

struct MusGridPoint {
    double theta = 0.0;
    double phi = 0.0;
    double residual = 0.0;
    double our_lhs = 0.0;
};

/// One refined saturation point. `sign` records the branch that vanishes:
/// 0 for theta_uv = theta_u + theta_v, 1 for theta_uv = |theta_u - theta_v|.
struct MusCurvePoint {
    double theta = 0.0;
    double phi = 0.0;
    double residual = 0.0;
    int sign = 0;
};

/// The solution set of one branch: a 1-parameter family of minimum
/// uncertainty states. Its curve arcs terminate at the rotation-axis states
/// of U and V, where the two branch conditions coincide and the active sign
/// flips, so a family can consist of several arcs joined at those junctions.
struct MusFamily {
    int sign = 0;
    std::vector<MusCurvePoint> points;
};

/// Whether the rotation-axis states of U and V appear in the solution set.
struct MusAxisHits {
    bool plus_u = false;
    bool minus_u = false;
    bool plus_v = false;
    bool minus_v = false;

    bool all() const { return plus_u && minus_u && plus_v && minus_v; }
};

struct MusSolutionSet {
    int grid_resolution = 0;
    /// Row-major Bloch grid: polar theta in [0, pi], azimuth phi in [0, 2 pi).
    std::vector<MusGridPoint> grid;
    std::vector<MusFamily> families;
    MusAxisHits axis_hits;
    /// Commuting pairs saturate on the whole sphere; reported as this
    /// distinguished outcome instead of as curve families.
    bool degenerate = false;
};

/// Maps the minimum-uncertainty structure of a qubit pair (U, V) over the
/// Bloch sphere: evaluates the saturation residual on a (theta, phi) grid,
/// refines near-zero candidates along grid edges to 1e-9, and groups them
/// into connected per-branch families.
inline MusSolutionSet mus_scan(const UnitaryOp& u, const UnitaryOp& v, int grid_resolution) {
    require(u.dim() == 2 && v.dim() == 2, "mus_scan: qubit unitaries only");
    require(grid_resolution >= 32, "mus_scan: grid_resolution must be at least 32");
    const int res = grid_resolution;
    const int n_theta = res + 1;
    const int n_phi = 2 * res;
    const double h = pi / res;
    const double family_tol = 1e-6;

    auto state_at = [](double theta, double phi) {
        return pure_from_bloch(BlochVector(std::sin(theta) * std::cos(phi),
                                           std::sin(theta) * std::sin(phi), std::cos(theta)));
    };

    MusSolutionSet out;
    out.grid_resolution = res;
    out.grid.reserve(static_cast<size_t>(n_theta) * static_cast<size_t>(n_phi));
    std::vector<std::array<double, 2>> defect_grid(
        static_cast<size_t>(n_theta) * static_cast<size_t>(n_phi));
    int near_zero = 0;
    for (int i = 0; i < n_theta; ++i) {
        for (int j = 0; j < n_phi; ++j) {
            double theta = h * i;
            double phi = h * j;
            PureState psi = state_at(theta, phi);
            std::array<double, 2> defects = mus_branch_defects(u, v, psi);
            double residual = std::min(defects[0], defects[1]);
            double lhs = our_evaluate(pair_overlap_triple(u, v, psi)).lhs;
            out.grid.push_back({theta, phi, residual, lhs});
            defect_grid[static_cast<size_t>(i * n_phi + j)] = defects;
            near_zero += residual <= 1e-6 ? 1 : 0;
        }
    }
    // Commuting unitaries make every qubit state a minimum uncertainty state
    // of the underlying variance relation, so the map has no curve structure
    // to extract. The grid census catches the same situation numerically when
    // the branch defects vanish everywhere (for instance U = V).
    ComplexMatrix commutator =
        ComplexMatrix(u.matrix() * v.matrix() - v.matrix() * u.matrix());
    out.degenerate =
        commutator.cwiseAbs().maxCoeff() <= 1e-12 ||
        near_zero >= static_cast<int>(0.99 * static_cast<double>(n_theta) * n_phi);

    // Rotation-axis states are always solutions when the axes exist; an
    // operator proportional to the identity has every state as an eigenstate,
    // which makes the corresponding flags trivially true.
    auto probe = [&](const Vector3& a) {
        return mus_residual(u, v, pure_from_bloch(BlochVector(a))) <= 1e-6;
    };
    try {
        Vector3 m = rotation_axis(u);
        out.axis_hits.plus_u = probe(m);
        out.axis_hits.minus_u = probe(Vector3(-m));
    } catch (const std::domain_error&) {
        out.axis_hits.plus_u = true;
        out.axis_hits.minus_u = true;
    }
    try {
        Vector3 n = rotation_axis(v);
        out.axis_hits.plus_v = probe(n);
        out.axis_hits.minus_v = probe(Vector3(-n));
    } catch (const std::domain_error&) {
        out.axis_hits.plus_v = true;
        out.axis_hits.minus_v = true;
    }

    if (out.degenerate) {
        return out;
    }

    // Candidate extraction: every grid edge whose endpoints bring one branch
    // defect within reach of zero is minimised along its length. The defects
    // are one-signed (the angle triple obeys the triangle inequalities), so
    // zeros are touching minima and located by interval thirds, not by sign
    // changes.
    struct Candidate {
        double theta;
        double phi;
        double value;
        int sign;
    };
    std::vector<Candidate> candidates;
    auto defect_at = [&](int i, int j, int sign) {
        return defect_grid[static_cast<size_t>(i * n_phi + ((j % n_phi) + n_phi) % n_phi)]
                          [static_cast<size_t>(sign)];
    };
    auto refine_edge = [&](double theta0, double phi0, double theta1, double phi1, int sign) {
        auto eval = [&](double t) {
            PureState psi = state_at(theta0 + (theta1 - theta0) * t, phi0 + (phi1 - phi0) * t);
            return mus_branch_defects(u, v, psi)[static_cast<size_t>(sign)];
        };
        double lo = 0.0;
        double hi = 1.0;
        for (int iter = 0; iter < 60 && (hi - lo) * h > 1e-9; ++iter) {
            double m1 = lo + (hi - lo) / 3.0;
            double m2 = hi - (hi - lo) / 3.0;
            if (eval(m1) <= eval(m2)) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        double t = 0.5 * (lo + hi);
        double value = eval(t);
        if (value <= family_tol) {
            candidates.push_back(
                {theta0 + (theta1 - theta0) * t, phi0 + (phi1 - phi0) * t, value, sign});
        }
    };
    const double reach = 3.0 * h;
    for (int sign = 0; sign < 2; ++sign) {
        // Horizontal edges (constant theta); rows 0 and n_theta-1 collapse to
        // the poles and carry no length.
        for (int i = 1; i < n_theta - 1; ++i) {
            for (int j = 0; j < n_phi; ++j) {
                if (std::min(defect_at(i, j, sign), defect_at(i, j + 1, sign)) > reach) {
                    continue;
                }
                refine_edge(h * i, h * j, h * i, h * (j + 1), sign);
            }
        }
        // Vertical edges (constant phi).
        for (int i = 0; i < n_theta - 1; ++i) {
            for (int j = 0; j < n_phi; ++j) {
                if (std::min(defect_at(i, j, sign), defect_at(i + 1, j, sign)) > reach) {
                    continue;
                }
                refine_edge(h * i, h * j, h * (i + 1), h * j, sign);
            }
        }
    }

    // Group the refined points into the two sign families. Spatial
    // connectivity alone would report each family as separate arcs, because
    // the arcs end at the four axis junctions where the branches coincide.
    for (int sign = 0; sign < 2; ++sign) {
        MusFamily family;
        family.sign = sign;
        for (const Candidate& cand : candidates) {
            if (cand.sign == sign) {
                family.points.push_back({cand.theta, cand.phi, cand.value, cand.sign});
            }
        }
        if (!family.points.empty()) {
            std::sort(family.points.begin(), family.points.end(),
                      [](const MusCurvePoint& a, const MusCurvePoint& b) {
                          return std::pair(a.theta, a.phi) < std::pair(b.theta, b.phi);
                      });
            out.families.push_back(std::move(family));
        }
    }
    return out;
}

/// Writes the scanned saturation surface as CSV with columns theta_rad,
/// phi_rad, our_lhs, residual.
inline void write_mus_surface_csv(std::ostream& out, const MusSolutionSet& scan) {
    out << "theta_rad,phi_rad,our_lhs,residual\n";
    char line[160];
    for (const MusGridPoint& point : scan.grid) {
        std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g,%.12g\n", point.theta, point.phi,
                      point.our_lhs, point.residual);
        out << line;
    }
}

/// Four-state overlap bound: 1 is at most the sum of the three pair-product
/// terms, the four three-cycle overlap roots, and the three four-cycle
/// overlap roots. Reduces to the three-state bound when the fourth state is
/// orthogonal to the first three.
inline RelationReport our4_evaluate(const PureState& psi1, const PureState& psi2,
                                    const PureState& psi3, const PureState& psi4) {
    double t12 = transition_probability(psi1, psi2);
    double t13 = transition_probability(psi1, psi3);
    double t14 = transition_probability(psi1, psi4);
    double t23 = transition_probability(psi2, psi3);
    double t24 = transition_probability(psi2, psi4);
    double t34 = transition_probability(psi3, psi4);
    double rhs = 0.5 * (1.0 - t12) * (1.0 - t34) + 0.5 * (1.0 - t13) * (1.0 - t24) +
                 0.5 * (1.0 - t14) * (1.0 - t23) + std::sqrt(t12 * t23 * t13) +
                 std::sqrt(t12 * t24 * t14) + std::sqrt(t13 * t34 * t14) +
                 std::sqrt(t23 * t34 * t24) + std::sqrt(t12 * t23 * t34 * t14) +
                 std::sqrt(t12 * t13 * t24 * t34) + std::sqrt(t13 * t14 * t23 * t24);
    return make_relation("overlap-four", 1.0, rhs, RelationSense::LessEqual, 1e-9);
}

}  // namespace uurlab
