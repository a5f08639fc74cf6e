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
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uurlab/matrix.hpp"
#include "uurlab/overlap.hpp"
#include "uurlab/random.hpp"
#include "uurlab/report.hpp"
#include "uurlab/states.hpp"
#include "uurlab/unitary.hpp"

namespace uurlab {

/// Principal-value angle in (-pi, pi].
inline double wrap_angle(double angle) {
    double wrapped = std::remainder(angle, 2.0 * pi);
    if (wrapped <= -pi) {
        wrapped += 2.0 * pi;
    }
    return wrapped;
}

/// Jones matrix of a half-wave plate with its fast axis at `theta` radians
/// from horizontal: rotation(theta) diag(1, -1) rotation(-theta).
inline ComplexMatrix half_wave_jones(double theta) {
    double c = std::cos(2.0 * theta);
    double s = std::sin(2.0 * theta);
    ComplexMatrix m(2, 2);
    m << c, s, s, -c;
    return m;
}

/// Jones matrix of a quarter-wave plate, same convention with diag(1, i).
inline ComplexMatrix quarter_wave_jones(double theta) {
    double c = std::cos(theta);
    double s = std::sin(theta);
    ComplexMatrix m(2, 2);
    m << Complex(c * c, s * s), Complex(c * s, -c * s), Complex(c * s, -c * s),
        Complex(s * s, c * c);
    return m;
}

/// Four-plate polarisation gadget: two half-wave plates at dial angles alpha
/// and beta interleaved with quarter-wave plates fixed at 45 degrees. The
/// element list does not pin down which half-wave plate is met first, so the
/// traversal order is frozen per convention_id; every supported convention
/// must reduce to the identity (up to global phase) at (90, 0) degrees.
struct WaveplateStack {
    double alpha_deg = 90.0;
    double beta_deg = 0.0;
    std::string convention_id = "alpha-first";

    WaveplateStack(double alpha, double beta, std::string convention = "alpha-first")
        : alpha_deg(alpha), beta_deg(beta), convention_id(std::move(convention)) {
        require(alpha_deg >= 0.0 && alpha_deg < 180.0 && beta_deg >= 0.0 && beta_deg < 180.0,
                "WaveplateStack: plate angles must lie in [0, 180) degrees");
    }
};

/// The unitary realised by a plate stack. "alpha-first" means the photon
/// traverses HWP(alpha), QWP(45), HWP(beta), QWP(45) in that order;
/// "beta-first" swaps which dial is met first.
inline UnitaryOp waveplate_stack_unitary(const WaveplateStack& stack) {
    double alpha = stack.alpha_deg * pi / 180.0;
    double beta = stack.beta_deg * pi / 180.0;
    ComplexMatrix quarter = quarter_wave_jones(pi / 4);
    ComplexMatrix m;
    if (stack.convention_id == "alpha-first") {
        m = quarter * half_wave_jones(beta) * quarter * half_wave_jones(alpha);
    } else if (stack.convention_id == "beta-first") {
        m = quarter * half_wave_jones(alpha) * quarter * half_wave_jones(beta);
    } else {
        throw std::invalid_argument("waveplate_stack_unitary: unknown convention_id");
    }
    return UnitaryOp(std::move(m));
}

/// Phase grid of equally spaced points covering one full period, endpoints
/// included.
inline std::vector<double> default_phase_grid(int points = 25) {
    require(points >= 2, "default_phase_grid: need at least two points");
    std::vector<double> grid(static_cast<size_t>(points));
    for (int k = 0; k < points; ++k) {
        grid[static_cast<size_t>(k)] = 2.0 * pi * k / (points - 1);
    }
    return grid;
}

/// Knobs of the virtual interferometer. Angles of the phase grid are radians;
/// counts_scale is the expected count at unit output probability.
struct InterferometerConfig {
    std::vector<double> phase_grid = default_phase_grid();
    double counts_scale = 4000.0;
    bool noise = false;
    double input_purity = 1.0;
    double waveplate_error_deg = 0.0;
    std::uint64_t seed = 0;
};

inline void validate_interferometer_config(const InterferometerConfig& config) {
    require(!config.phase_grid.empty(), "InterferometerConfig: phase grid is empty");
    for (size_t i = 1; i < config.phase_grid.size(); ++i) {
        require(config.phase_grid[i] > config.phase_grid[i - 1],
                "InterferometerConfig: phase grid must be strictly increasing");
    }
    require(config.counts_scale > 0.0, "InterferometerConfig: counts_scale must be positive");
    require(config.input_purity >= 0.0 && config.input_purity <= 1.0,
            "InterferometerConfig: input_purity must lie in [0, 1]");
    require(config.waveplate_error_deg >= 0.0,
            "InterferometerConfig: waveplate_error_deg must be nonnegative");
}

struct FringePoint {
    double theta = 0.0;
    double count = 0.0;
};

/// One interferogram: counts versus applied phase for a fixed pair of arm
/// settings. Counts are integer-valued when drawn from the shot-noise model
/// but are stored as reals so that externally recorded (possibly rescaled)
/// data flows through the same fit pipeline.
struct FringeScan {
    std::vector<FringePoint> points;
    std::string left_label = "I";
    std::string right_label = "I";
};

/// One interferometer arm: the operator it applies, the label used in file
/// naming, and, when the operator is realised by plates, the stack setting,
/// which is what alignment error perturbs.
struct InterferometerArm {
    std::string label;
    UnitaryOp op;
    std::optional<WaveplateStack> stack;
};

inline InterferometerArm identity_arm(Eigen::Index dim = 2) {
    return InterferometerArm{"I", UnitaryOp::identity(dim), std::nullopt};
}

inline InterferometerArm operator_arm(std::string label, UnitaryOp op) {
    return InterferometerArm{std::move(label), std::move(op), std::nullopt};
}

inline InterferometerArm stack_arm(std::string label, const WaveplateStack& stack) {
    return InterferometerArm{std::move(label), waveplate_stack_unitary(stack), stack};
}

/// Average output intensity of the two-arm interferometer at phase shift chi:
/// (1/2) [1 + Re{e^{-i chi} <U'V>}] with U in the left arm and V in the
/// right. Maximal over chi at chi = arg <U'V>.
inline double mean_output(const DensityMatrix& state, const UnitaryOp& u, const UnitaryOp& v,
                          double chi) {
    require(state.dim() == u.dim() && u.dim() == v.dim(), "mean_output: dimension mismatch");
    Complex overlap = expectation(state, ComplexMatrix(u.matrix().adjoint() * v.matrix()));
    double value = 0.5 * (1.0 + (std::exp(Complex(0, -chi)) * overlap).real());
    return std::min(std::max(value, 0.0), 1.0);
}

inline double wrap_plate_angle_deg(double angle) {
    double folded = std::fmod(angle, 180.0);
    return folded < 0.0 ? folded + 180.0 : folded;
}

/// Simulated phase scan. The generator stream is derived from (seed,
/// scan_index) so batches are reproducible point by point regardless of
/// evaluation order. Plate-alignment error draws one offset per dial per scan
/// and only applies to arms that carry a plate stack. Noiseless scans keep
/// the exact expected count: the reconstruction identities downstream are
/// pinned at 1e-9, which quantised counts could never reach.
inline FringeScan simulate_scan(const InterferometerConfig& config, const DensityMatrix& state,
                                const InterferometerArm& left, const InterferometerArm& right,
                                std::uint64_t scan_index = 0) {
    validate_interferometer_config(config);
    require(state.dim() == left.op.dim() && left.op.dim() == right.op.dim(),
            "simulate_scan: dimension mismatch");
    std::mt19937_64 rng = seeded_rng(config.seed, scan_index);
    UnitaryOp left_op = left.op;
    UnitaryOp right_op = right.op;
    if (config.waveplate_error_deg > 0.0) {
        std::normal_distribution<double> misalignment(0.0, config.waveplate_error_deg);
        auto perturbed = [&](const WaveplateStack& stack) {
            return waveplate_stack_unitary(
                WaveplateStack(wrap_plate_angle_deg(stack.alpha_deg + misalignment(rng)),
                               wrap_plate_angle_deg(stack.beta_deg + misalignment(rng)),
                               stack.convention_id));
        };
        if (left.stack) {
            left_op = perturbed(*left.stack);
        }
        if (right.stack) {
            right_op = perturbed(*right.stack);
        }
    }
    FringeScan scan;
    scan.left_label = left.label;
    scan.right_label = right.label;
    scan.points.reserve(config.phase_grid.size());
    for (double theta : config.phase_grid) {
        double mean = config.counts_scale * mean_output(state, left_op, right_op, theta);
        double count = mean;
        if (config.noise) {
            count = mean > 0.0
                        ? static_cast<double>(std::poisson_distribution<long long>(mean)(rng))
                        : 0.0;
        }
        scan.points.push_back(FringePoint{theta, count});
    }
    return scan;
}

/// Result of fitting one scan to A1 + A2 cos^2[(theta - theta0)/2], with the
/// visibility A2 / (2 A1 + A2) and delta-method standard errors.
struct FringeFit {
    double a1 = 0.0;
    double a2 = 0.0;
    double theta0 = 0.0;
    double se_a1 = 0.0;
    double se_a2 = 0.0;
    double se_theta0 = 0.0;
    double visibility = 0.0;
    double visibility_se = 0.0;
    double chi2_dof = 0.0;
    bool theta0_unconstrained = false;
};

/// Weighted least-squares fringe fit. Weights are inverse Poisson variances
/// floored at one count; start values come from the scan mean and first
/// Fourier coefficient; a damped Gauss-Newton refinement runs to a relative
/// parameter change below 1e-12. Standard errors come from the linearised
/// covariance at the optimum. A fitted amplitude below 1e-3 of the inferred
/// full scale (twice the mean count) leaves theta0 unconstrained, which
/// blocks downstream phase reconstruction.
inline FringeFit fit_fringe(const FringeScan& scan) {
    const std::vector<FringePoint>& pts = scan.points;
    const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
    require(n >= 8, "fit_fringe: need at least eight points");
    RealVector theta(n);
    RealVector count(n);
    RealVector weight(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const FringePoint& p = pts[static_cast<size_t>(i)];
        require(p.count >= 0.0, "fit_fringe: counts must be nonnegative");
        require(i == 0 || p.theta > theta(i - 1), "fit_fringe: thetas must be strictly increasing");
        theta(i) = p.theta;
        count(i) = p.count;
        weight(i) = 1.0 / std::max(p.count, 1.0);
    }
    require(theta(n - 1) - theta(0) >= 2.0 * pi - 1e-9,
            "fit_fringe: phase grid must span a full period");

    auto weighted_sse = [&](const Eigen::Vector3d& p) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = std::cos(0.5 * (theta(i) - p(2)));
            double residual = count(i) - (p(0) + p(1) * c * c);
            total += weight(i) * residual * residual;
        }
        return total;
    };

    double mean = count.mean();
    Complex first(0.0, 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        first += count(i) * std::exp(Complex(0, -theta(i)));
    }
    first *= 2.0 / static_cast<double>(n);
    Eigen::Vector3d p(std::max(0.0, mean - std::abs(first)), 2.0 * std::abs(first),
                      std::abs(first) > 0.0 ? -std::arg(first) : 0.0);

    double current = weighted_sse(p);
    for (int iter = 0; iter < 200; ++iter) {
        Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
        Eigen::Vector3d moment = Eigen::Vector3d::Zero();
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = std::cos(0.5 * (theta(i) - p(2)));
            double residual = count(i) - (p(0) + p(1) * c * c);
            Eigen::Vector3d grad(1.0, c * c, 0.5 * p(1) * std::sin(theta(i) - p(2)));
            normal += weight(i) * grad * grad.transpose();
            moment += weight(i) * residual * grad;
        }
        Eigen::Vector3d step = normal.completeOrthogonalDecomposition().solve(moment);
        double damping = 1.0;
        Eigen::Vector3d next = p + step;
        while (weighted_sse(next) > current && damping > 1e-12) {
            damping *= 0.5;
            next = p + damping * step;
        }
        if (weighted_sse(next) > current) {
            break;
        }
        double relative = 0.0;
        for (int k = 0; k < 3; ++k) {
            relative =
                std::max(relative, std::abs(next(k) - p(k)) / std::max(std::abs(p(k)), 1.0));
        }
        p = next;
        current = weighted_sse(p);
        if (relative < 1e-12) {
            break;
        }
    }

    // Canonical orientation: nonnegative amplitude, principal fringe position.
    if (p(1) < 0.0) {
        p(0) += p(1);
        p(1) = -p(1);
        p(2) += pi;
    }
    p(2) = wrap_angle(p(2));

    Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
    for (Eigen::Index i = 0; i < n; ++i) {
        double c = std::cos(0.5 * (theta(i) - p(2)));
        Eigen::Vector3d grad(1.0, c * c, 0.5 * p(1) * std::sin(theta(i) - p(2)));
        normal += weight(i) * grad * grad.transpose();
    }
    Eigen::Matrix3d covariance = normal.completeOrthogonalDecomposition().pseudoInverse();

    FringeFit fit;
    fit.a1 = std::max(0.0, p(0));
    fit.a2 = std::max(0.0, p(1));
    fit.theta0 = p(2);
    fit.se_a1 = std::sqrt(std::max(0.0, covariance(0, 0)));
    fit.se_a2 = std::sqrt(std::max(0.0, covariance(1, 1)));
    fit.se_theta0 = std::sqrt(std::max(0.0, covariance(2, 2)));
    fit.chi2_dof = current / static_cast<double>(n - 3);
    fit.theta0_unconstrained = fit.a2 < 1e-3 * std::max(2.0 * mean, 1.0);
    double denom = 2.0 * fit.a1 + fit.a2;
    if (denom > 0.0) {
        fit.visibility = fit.a2 / denom;
        double d_a1 = -2.0 * fit.a2 / (denom * denom);
        double d_a2 = 2.0 * fit.a1 / (denom * denom);
        double var = d_a1 * d_a1 * covariance(0, 0) + d_a2 * d_a2 * covariance(1, 1) +
                     2.0 * d_a1 * d_a2 * covariance(0, 1);
        fit.visibility_se = std::sqrt(std::max(0.0, var));
    }
    return fit;
}

/// Principal-value difference of two fitted fringe positions.
inline double phase_difference(const FringeFit& fit_uv, const FringeFit& fit_ref) {
    require(!fit_uv.theta0_unconstrained && !fit_ref.theta0_unconstrained,
            "phase_difference: theta0 is unconstrained in one of the fits");
    return wrap_angle(fit_uv.theta0 - fit_ref.theta0);
}

struct PhaseEstimate {
    double phi = 0.0;
    double se = 0.0;
};

/// Three-operator cycle phase from the four fringe positions
/// (U,V), (U,I), (I,V), (I,I): phi = theta0_UV - theta0_UI - theta0_IV +
/// theta0_II, which cancels the common instrumental reference. The standard
/// error is the quadrature sum of the four fitted position errors.
inline PhaseEstimate bargmann_phase_from_fits(const FringeFit& fit_uv, const FringeFit& fit_ui,
                                              const FringeFit& fit_iv, const FringeFit& fit_ii) {
    require(!fit_uv.theta0_unconstrained && !fit_ui.theta0_unconstrained &&
                !fit_iv.theta0_unconstrained && !fit_ii.theta0_unconstrained,
            "bargmann_phase_from_fits: theta0 is unconstrained in one of the fits");
    PhaseEstimate estimate;
    estimate.phi = wrap_angle(fit_uv.theta0 - fit_ui.theta0 - fit_iv.theta0 + fit_ii.theta0);
    estimate.se = std::sqrt(fit_uv.se_theta0 * fit_uv.se_theta0 +
                            fit_ui.se_theta0 * fit_ui.se_theta0 +
                            fit_iv.se_theta0 * fit_iv.se_theta0 +
                            fit_ii.se_theta0 * fit_ii.se_theta0);
    return estimate;
}

enum class ScanRelationKind {
    uur_phase,    // cos(Phi) >= (v_U^2 + v_V^2 + v_UV^2 - 1) / (2 v_U v_V v_UV)
    our_overlap,  // T12 + T13 + T23 - 2 sqrt(T12 T13 T23) <= 1 with T = v^2
};

/// The four interferograms that feed one relation reconstruction, in the
/// fixed order (U,V), (U,I), (I,V), (I,I) on a common input state.
struct ScanQuartet {
    FringeScan uv;
    FringeScan ui;
    FringeScan iv;
    FringeScan ii;
};

inline ScanQuartet simulate_relation_scans(const InterferometerConfig& config,
                                           const DensityMatrix& state,
                                           const InterferometerArm& u_arm,
                                           const InterferometerArm& v_arm) {
    InterferometerArm reference = identity_arm(state.dim());
    ScanQuartet quartet;
    quartet.uv = simulate_scan(config, state, u_arm, v_arm, 0);
    quartet.ui = simulate_scan(config, state, u_arm, reference, 1);
    quartet.iv = simulate_scan(config, state, reference, v_arm, 2);
    quartet.ii = simulate_scan(config, state, reference, reference, 3);
    return quartet;
}

/// Rebuilds one uncertainty relation from the four interferograms recorded on
/// a common input state. Fitted visibilities stand in for the overlap moduli
/// and fitted fringe positions for their phases; standard errors propagate to
/// both sides, and the verdict tolerance widens to three combined standard
/// errors so a noisy reconstruction is judged against its own resolution.
inline RelationReport relation_from_scans(ScanRelationKind kind, const FringeScan& scan_uv,
                                          const FringeScan& scan_ui, const FringeScan& scan_iv,
                                          const FringeScan& scan_ii, bool assume_pure) {
    FringeFit uv = fit_fringe(scan_uv);
    FringeFit ui = fit_fringe(scan_ui);
    FringeFit iv = fit_fringe(scan_iv);
    FringeFit ii = fit_fringe(scan_ii);
    require(!uv.theta0_unconstrained && !ui.theta0_unconstrained && !iv.theta0_unconstrained &&
                !ii.theta0_unconstrained,
            "relation_from_scans: a scan has an unconstrained fringe position");
    double v_u = ui.visibility;
    double v_v = iv.visibility;
    double v_uv = uv.visibility;
    if (kind == ScanRelationKind::uur_phase) {
        PhaseEstimate phase = bargmann_phase_from_fits(uv, ui, iv, ii);
        double lhs = std::cos(phase.phi);
        double lhs_se = std::abs(std::sin(phase.phi)) * phase.se;
        double product = v_u * v_v * v_uv;
        if (product < 1e-6) {
            // A vanishing visibility erases the cycle phase: same verdict as
            // the algebraic module for a vanishing invariant.
            RelationReport rep =
                make_relation("bargmann-phase-pair", lhs, 0.0, RelationSense::GreaterEqual, 1e-9);
            rep.indeterminate = true;
            rep.lhs_se = lhs_se;
            return rep;
        }
        double rhs = (v_u * v_u + v_v * v_v + v_uv * v_uv - 1.0) / (2.0 * product);
        auto partial = [](double a, double b, double c) {
            return (a * a - b * b - c * c + 1.0) / (2.0 * a * a * b * c);
        };
        double rhs_var = std::pow(partial(v_u, v_v, v_uv) * ui.visibility_se, 2) +
                         std::pow(partial(v_v, v_u, v_uv) * iv.visibility_se, 2) +
                         std::pow(partial(v_uv, v_u, v_v) * uv.visibility_se, 2);
        double rhs_se = std::sqrt(rhs_var);
        double tol = std::max(1e-9, 3.0 * std::sqrt(lhs_se * lhs_se + rhs_se * rhs_se));
        RelationReport rep =
            make_relation("bargmann-phase-pair", lhs, rhs, RelationSense::GreaterEqual, tol);
        rep.lhs_se = lhs_se;
        rep.rhs_se = rhs_se;
        return rep;
    }
    require(assume_pure,
            "relation_from_scans: the overlap reconstruction assumes a pure input state");
    OverlapTriple triple = OverlapTriple::from_clipped(v_u * v_u, v_v * v_v, v_uv * v_uv);
    RelationReport base = our_evaluate(triple);
    double g_u = 2.0 * (v_u - v_v * v_uv);
    double g_v = 2.0 * (v_v - v_u * v_uv);
    double g_uv = 2.0 * (v_uv - v_u * v_v);
    double lhs_se = std::sqrt(std::pow(g_u * ui.visibility_se, 2) +
                              std::pow(g_v * iv.visibility_se, 2) +
                              std::pow(g_uv * uv.visibility_se, 2));
    double tol = std::max(1e-9, 3.0 * lhs_se);
    RelationReport rep = make_relation(base.name, base.lhs, base.rhs, base.sense, tol);
    rep.lhs_se = lhs_se;
    rep.rhs_se = 0.0;
    return rep;
}

inline RelationReport relation_from_scans(ScanRelationKind kind, const ScanQuartet& scans,
                                          bool assume_pure) {
    return relation_from_scans(kind, scans.uv, scans.ui, scans.iv, scans.ii, assume_pure);
}

inline void write_scan_csv(std::ostream& out, const FringeScan& scan) {
    out << "theta_rad,counts\n";
    char line[80];
    for (const FringePoint& point : scan.points) {
        std::snprintf(line, sizeof line, "%.12g,%.12g\n", point.theta, point.count);
        out << line;
    }
}

/// Reads a scan in the `theta_rad,counts` format; the arm labels are not part
/// of the file and are supplied by the caller (the tool derives them from the
/// file name).
inline FringeScan read_scan_csv(std::istream& in, std::string left_label = "left",
                                std::string right_label = "right") {
    auto strip_cr = [](std::string& s) {
        if (!s.empty() && s.back() == '\r') {
            s.pop_back();
        }
    };
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "read_scan_csv: empty input");
    strip_cr(line);
    require(line == "theta_rad,counts", "read_scan_csv: unexpected header");
    FringeScan scan;
    scan.left_label = std::move(left_label);
    scan.right_label = std::move(right_label);
    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty()) {
            continue;
        }
        size_t comma = line.find(',');
        require(comma != std::string::npos, "read_scan_csv: malformed row");
        try {
            FringePoint point;
            point.theta = std::stod(line.substr(0, comma));
            point.count = std::stod(line.substr(comma + 1));
            scan.points.push_back(point);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("read_scan_csv: malformed row");
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("read_scan_csv: malformed row");
        }
    }
    require(!scan.points.empty(), "read_scan_csv: no data rows");
    return scan;
}

}  // namespace uurlab
