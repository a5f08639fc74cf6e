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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "uurlab/interferometer.hpp"
#include "uurlab/matrix.hpp"
#include "uurlab/otoc.hpp"
#include "uurlab/overlap.hpp"
#include "uurlab/random.hpp"
#include "uurlab/report.hpp"
#include "uurlab/states.hpp"
#include "uurlab/unitary.hpp"
#include "uurlab/uur.hpp"

namespace uurlab {

inline constexpr const char* tool_version = "0.1.0";

using Json = nlohmann::ordered_json;

/// Raised for every configuration problem (parse errors, unknown keys,
/// missing or invalid fields, missing input files). The driver maps it to
/// its configuration-error exit code.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { verify, fig3, fig4, musmap, otoc, fit_csv };

inline std::string kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::verify: return "verify";
        case ExperimentKind::fig3: return "fig3";
        case ExperimentKind::fig4: return "fig4";
        case ExperimentKind::musmap: return "musmap";
        case ExperimentKind::otoc: return "otoc";
        case ExperimentKind::fit_csv: return "fit-csv";
    }
    throw std::logic_error("kind_name: unhandled kind");
}

inline ExperimentKind kind_from_name(const std::string& name) {
    for (ExperimentKind kind : {ExperimentKind::verify, ExperimentKind::fig3, ExperimentKind::fig4,
                                ExperimentKind::musmap, ExperimentKind::otoc,
                                ExperimentKind::fit_csv}) {
        if (kind_name(kind) == name) {
            return kind;
        }
    }
    throw ConfigError("config invalid value: kind must be one of verify, fig3, fig4, musmap, "
                      "otoc, fit-csv (got \"" +
                      name + "\")");
}

/// Equilateral-triangle sweep of the phase relation on the |0> input: side
/// arc range in degrees, Poisson scale, and the fringe grid size.
struct Fig3Params {
    double side_min_deg = 24.0;
    double side_max_deg = 119.0;
    int sweep_points = 13;
    double counts_scale = 4000.0;
    int phase_points = 25;
};

/// Linear-polarisation input sweep of the overlap relation with the fixed
/// waveplate stacks (36, 0) and (0, 36) degrees.
struct Fig4Params {
    double step_deg = 1.0;
    double counts_scale = 4000.0;
    int phase_points = 25;
};

/// Bloch-sphere map of minimum uncertainty states for a rotation pair.
struct MusmapParams {
    Vector3 u_axis{0.0, 1.0, 0.0};
    double u_angle_deg = 45.0;
    Vector3 v_axis{0.0, 0.0, 1.0};
    double v_angle_deg = 45.0;
    int grid_resolution = 96;
};

/// Correlator time series for a seeded random (state, V, H) draw, with
/// W_t the Heisenberg evolution of V itself.
struct OtocParams {
    int dim = 4;
    double time_max = 10.0;
    int time_steps = 101;
};

struct FitCsvParams {
    std::vector<std::string> files;
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::verify;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    Fig3Params fig3;
    Fig4Params fig4;
    MusmapParams musmap;
    OtocParams otoc;
    FitCsvParams fit_csv;
};

inline void validate_spec(const ExperimentSpec& spec) {
    if (spec.output_dir.empty()) {
        throw ConfigError("config invalid value: output_dir must not be empty");
    }
    switch (spec.kind) {
        case ExperimentKind::fig3: {
            const Fig3Params& p = spec.fig3;
            if (!(p.side_min_deg > 0.0)) {
                throw ConfigError("config invalid value: fig3.side_min_deg must be positive");
            }
            if (!(p.side_max_deg >= p.side_min_deg)) {
                throw ConfigError(
                    "config invalid value: fig3.side_max_deg must be at least side_min_deg");
            }
            if (!(p.side_max_deg < 120.0)) {
                throw ConfigError("config invalid value: fig3.side_max_deg must lie below 120 "
                                  "degrees, where the equilateral construction degenerates");
            }
            if (p.sweep_points < 1) {
                throw ConfigError("config invalid value: fig3.sweep_points must be at least 1");
            }
            if (!(p.counts_scale > 0.0)) {
                throw ConfigError("config invalid value: fig3.counts_scale must be positive");
            }
            if (p.phase_points < 8) {
                throw ConfigError("config invalid value: fig3.phase_points must be at least 8");
            }
            break;
        }
        case ExperimentKind::fig4: {
            const Fig4Params& p = spec.fig4;
            if (!(p.step_deg > 0.0 && p.step_deg <= 45.0)) {
                throw ConfigError(
                    "config invalid value: fig4.step_deg must lie in (0, 45] degrees");
            }
            if (!(p.counts_scale > 0.0)) {
                throw ConfigError("config invalid value: fig4.counts_scale must be positive");
            }
            if (p.phase_points < 8) {
                throw ConfigError("config invalid value: fig4.phase_points must be at least 8");
            }
            break;
        }
        case ExperimentKind::musmap: {
            const MusmapParams& p = spec.musmap;
            if (p.u_axis.norm() < 1e-9 || p.v_axis.norm() < 1e-9) {
                throw ConfigError("config invalid value: musmap axes must be nonzero vectors");
            }
            if (!(p.u_angle_deg > 0.0 && p.u_angle_deg < 360.0) ||
                !(p.v_angle_deg > 0.0 && p.v_angle_deg < 360.0)) {
                throw ConfigError(
                    "config invalid value: musmap rotation angles must lie in (0, 360) degrees");
            }
            if (p.grid_resolution < 32) {
                throw ConfigError(
                    "config invalid value: musmap.grid_resolution must be at least 32");
            }
            break;
        }
        case ExperimentKind::otoc: {
            const OtocParams& p = spec.otoc;
            if (p.dim < 2 || p.dim > 16) {
                throw ConfigError("config invalid value: otoc.dim must lie in [2, 16]");
            }
            if (!(p.time_max > 0.0)) {
                throw ConfigError("config invalid value: otoc.time_max must be positive");
            }
            if (p.time_steps < 2) {
                throw ConfigError("config invalid value: otoc.time_steps must be at least 2");
            }
            break;
        }
        case ExperimentKind::fit_csv: {
            if (spec.fit_csv.files.empty()) {
                throw ConfigError("config missing field: fit-csv.files (no scan files given)");
            }
            break;
        }
        case ExperimentKind::verify:
            break;
    }
}

// --- JSON ingestion ---------------------------------------------------------

inline void reject_unknown_keys(const Json& obj, const std::vector<std::string>& allowed,
                                const std::string& where) {
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ConfigError("config unknown key: " + where + item.key());
        }
    }
}

inline double number_field(const Json& obj, const char* key, double fallback,
                           const std::string& where) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const Json& value = obj.at(key);
    if (!value.is_number()) {
        throw ConfigError("config invalid value: " + where + key + " must be a number");
    }
    return value.get<double>();
}

inline int int_field(const Json& obj, const char* key, int fallback, const std::string& where) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const Json& value = obj.at(key);
    if (!value.is_number_integer()) {
        throw ConfigError("config invalid value: " + where + key + " must be an integer");
    }
    return value.get<int>();
}

inline std::string string_field(const Json& obj, const char* key, const std::string& fallback,
                                const std::string& where) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const Json& value = obj.at(key);
    if (!value.is_string()) {
        throw ConfigError("config invalid value: " + where + key + " must be a string");
    }
    return value.get<std::string>();
}

inline Vector3 axis_field(const Json& obj, const char* key, const Vector3& fallback,
                          const std::string& where) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const Json& value = obj.at(key);
    if (!value.is_array() || value.size() != 3 || !value[0].is_number() ||
        !value[1].is_number() || !value[2].is_number()) {
        throw ConfigError("config invalid value: " + where + key +
                          " must be an array of three numbers");
    }
    return Vector3(value[0].get<double>(), value[1].get<double>(), value[2].get<double>());
}

inline ExperimentSpec spec_from_json(const Json& root) {
    if (!root.is_object()) {
        throw ConfigError("config parse error: top level must be a JSON object");
    }
    if (!root.contains("kind")) {
        throw ConfigError("config missing field: kind");
    }
    if (!root.at("kind").is_string()) {
        throw ConfigError("config invalid value: kind must be a string");
    }
    ExperimentSpec spec;
    spec.kind = kind_from_name(root.at("kind").get<std::string>());
    const std::string section = kind_name(spec.kind);
    reject_unknown_keys(root, {"kind", "seed", "output_dir", section}, "");
    if (root.contains("seed")) {
        const Json& value = root.at("seed");
        if (!value.is_number_integer() || (value.is_number_integer() && !value.is_number_unsigned() &&
                                           value.get<long long>() < 0)) {
            throw ConfigError("config invalid value: seed must be a nonnegative integer");
        }
        spec.seed = value.get<std::uint64_t>();
    }
    spec.output_dir = string_field(root, "output_dir", spec.output_dir, "");
    Json params = root.contains(section) ? root.at(section) : Json::object();
    if (!params.is_object()) {
        throw ConfigError("config invalid value: " + section + " must be an object");
    }
    const std::string where = section + ".";
    switch (spec.kind) {
        case ExperimentKind::verify:
            reject_unknown_keys(params, {}, where);
            break;
        case ExperimentKind::fig3: {
            reject_unknown_keys(params,
                                {"side_min_deg", "side_max_deg", "sweep_points", "counts_scale",
                                 "phase_points"},
                                where);
            Fig3Params& p = spec.fig3;
            p.side_min_deg = number_field(params, "side_min_deg", p.side_min_deg, where);
            p.side_max_deg = number_field(params, "side_max_deg", p.side_max_deg, where);
            p.sweep_points = int_field(params, "sweep_points", p.sweep_points, where);
            p.counts_scale = number_field(params, "counts_scale", p.counts_scale, where);
            p.phase_points = int_field(params, "phase_points", p.phase_points, where);
            break;
        }
        case ExperimentKind::fig4: {
            reject_unknown_keys(params, {"step_deg", "counts_scale", "phase_points"}, where);
            Fig4Params& p = spec.fig4;
            p.step_deg = number_field(params, "step_deg", p.step_deg, where);
            p.counts_scale = number_field(params, "counts_scale", p.counts_scale, where);
            p.phase_points = int_field(params, "phase_points", p.phase_points, where);
            break;
        }
        case ExperimentKind::musmap: {
            reject_unknown_keys(
                params, {"u_axis", "u_angle_deg", "v_axis", "v_angle_deg", "grid_resolution"},
                where);
            MusmapParams& p = spec.musmap;
            p.u_axis = axis_field(params, "u_axis", p.u_axis, where);
            p.u_angle_deg = number_field(params, "u_angle_deg", p.u_angle_deg, where);
            p.v_axis = axis_field(params, "v_axis", p.v_axis, where);
            p.v_angle_deg = number_field(params, "v_angle_deg", p.v_angle_deg, where);
            p.grid_resolution = int_field(params, "grid_resolution", p.grid_resolution, where);
            break;
        }
        case ExperimentKind::otoc: {
            reject_unknown_keys(params, {"dim", "time_max", "time_steps"}, where);
            OtocParams& p = spec.otoc;
            p.dim = int_field(params, "dim", p.dim, where);
            p.time_max = number_field(params, "time_max", p.time_max, where);
            p.time_steps = int_field(params, "time_steps", p.time_steps, where);
            break;
        }
        case ExperimentKind::fit_csv: {
            reject_unknown_keys(params, {"files"}, where);
            if (params.contains("files")) {
                const Json& files = params.at("files");
                if (!files.is_array()) {
                    throw ConfigError("config invalid value: fit-csv.files must be an array");
                }
                for (const Json& f : files) {
                    if (!f.is_string()) {
                        throw ConfigError(
                            "config invalid value: fit-csv.files entries must be strings");
                    }
                    spec.fit_csv.files.push_back(f.get<std::string>());
                }
            }
            break;
        }
    }
    validate_spec(spec);
    return spec;
}

inline ExperimentSpec parse_experiment_config(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return spec_from_json(root);
}

inline ExperimentSpec ingest_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config parse error: cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str());
}

/// Full resolved configuration with every default filled in; re-ingesting
/// the emitted document reproduces the spec exactly.
inline Json resolved_config_json(const ExperimentSpec& spec) {
    Json root;
    root["kind"] = kind_name(spec.kind);
    root["seed"] = spec.seed;
    root["output_dir"] = spec.output_dir;
    Json params = Json::object();
    switch (spec.kind) {
        case ExperimentKind::verify:
            break;
        case ExperimentKind::fig3:
            params["side_min_deg"] = spec.fig3.side_min_deg;
            params["side_max_deg"] = spec.fig3.side_max_deg;
            params["sweep_points"] = spec.fig3.sweep_points;
            params["counts_scale"] = spec.fig3.counts_scale;
            params["phase_points"] = spec.fig3.phase_points;
            break;
        case ExperimentKind::fig4:
            params["step_deg"] = spec.fig4.step_deg;
            params["counts_scale"] = spec.fig4.counts_scale;
            params["phase_points"] = spec.fig4.phase_points;
            break;
        case ExperimentKind::musmap:
            params["u_axis"] = {spec.musmap.u_axis.x(), spec.musmap.u_axis.y(),
                                spec.musmap.u_axis.z()};
            params["u_angle_deg"] = spec.musmap.u_angle_deg;
            params["v_axis"] = {spec.musmap.v_axis.x(), spec.musmap.v_axis.y(),
                                spec.musmap.v_axis.z()};
            params["v_angle_deg"] = spec.musmap.v_angle_deg;
            params["grid_resolution"] = spec.musmap.grid_resolution;
            break;
        case ExperimentKind::otoc:
            params["dim"] = spec.otoc.dim;
            params["time_max"] = spec.otoc.time_max;
            params["time_steps"] = spec.otoc.time_steps;
            break;
        case ExperimentKind::fit_csv:
            params["files"] = spec.fit_csv.files;
            break;
    }
    root[kind_name(spec.kind)] = params;
    return root;
}

// --- Shared pipeline machinery ----------------------------------------------

inline double deg_to_rad(double deg) { return deg * pi / 180.0; }

/// Distinct RNG seed for sweep point `index` under base seed `seed`. The
/// stride exceeds any per-point scan-index range so streams never collide.
inline std::uint64_t sweep_point_seed(std::uint64_t seed, int index) {
    return seed + 7919ull * static_cast<std::uint64_t>(index + 1);
}

/// Runs per_index(0..count-1) across a small thread pool and returns the
/// results in index order. Exceptions from workers are rethrown after join.
template <typename Row, typename Fn>
inline std::vector<Row> tabulate_parallel(int count, Fn&& per_index) {
    std::vector<Row> rows(static_cast<size_t>(count));
    unsigned workers = std::thread::hardware_concurrency();
    workers = std::max(1u, std::min({workers == 0 ? 1u : workers,
                                     static_cast<unsigned>(count), 8u}));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) {
            rows[static_cast<size_t>(i)] = per_index(i);
        }
        return rows;
    }
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto drain = [&]() {
        try {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                rows[static_cast<size_t>(i)] = per_index(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> guard(error_mutex);
            if (!error) {
                error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(drain);
    }
    for (std::thread& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return rows;
}

// --- Equilateral-triangle sweep ---------------------------------------------

struct EquilateralPair {
    UnitaryOp u;
    UnitaryOp v;
    /// Common transition probability of all three pairs, cos^2(side/2).
    double t_exact = 0.0;
};

/// Rotations carrying the +z Bloch vector to the other two vertices of an
/// equilateral spherical triangle with apex +z and side arc `side_rad`. The
/// vertices sit at polar angle s and azimuths +/- phi with
/// cos(2 phi) = cos s / (1 + cos s), which makes all three sides equal; the
/// construction degenerates at s = 120 degrees where the far vertices meet.
inline EquilateralPair equilateral_pair(double side_rad) {
    require(side_rad > 0.0 && side_rad < 2.0 * pi / 3.0,
            "equilateral_pair: side must lie in (0, 120) degrees");
    double cos_s = std::cos(side_rad);
    double sin_s = std::sin(side_rad);
    double azimuth = 0.5 * std::acos(cos_s / (1.0 + cos_s));
    Vector3 apex(0.0, 0.0, 1.0);
    Vector3 second(sin_s * std::cos(azimuth), sin_s * std::sin(azimuth), cos_s);
    Vector3 third(sin_s * std::cos(azimuth), -sin_s * std::sin(azimuth), cos_s);
    EquilateralPair pair{rotation_taking(apex, second), rotation_taking(apex, third),
                         std::pow(std::cos(side_rad / 2.0), 2)};
    return pair;
}

/// Saturation value of cos Phi on an equilateral triple with common
/// transition probability t: (3t - 1) / (2 t^{3/2}).
inline double equilateral_saturation_curve(double t) {
    require(t > 0.0 && t <= 1.0, "equilateral_saturation_curve: t must lie in (0, 1]");
    return (3.0 * t - 1.0) / (2.0 * std::pow(t, 1.5));
}

struct Fig3Row {
    double side_deg = 0.0;
    double t_exact = 0.0;
    /// Mean of the three squared fitted visibilities from the noisy scans.
    double t_measured = 0.0;
    double theory_cos_phi = 0.0;
    RelationReport noiseless;
    RelationReport noisy;
};

inline Fig3Row fig3_row(const Fig3Params& params, std::uint64_t seed, int index) {
    double side_deg =
        params.sweep_points == 1
            ? params.side_min_deg
            : params.side_min_deg + (params.side_max_deg - params.side_min_deg) *
                                        static_cast<double>(index) /
                                        static_cast<double>(params.sweep_points - 1);
    EquilateralPair pair = equilateral_pair(deg_to_rad(side_deg));
    DensityMatrix state = DensityMatrix::from_pure(PureState::basis_state(2, 0));
    InterferometerArm left = operator_arm("U", pair.u);
    InterferometerArm right = operator_arm("V", pair.v);

    InterferometerConfig config;
    config.phase_grid = default_phase_grid(params.phase_points);
    config.counts_scale = params.counts_scale;

    Fig3Row row;
    row.side_deg = side_deg;
    row.t_exact = pair.t_exact;
    row.theory_cos_phi = equilateral_saturation_curve(pair.t_exact);

    ScanQuartet clean = simulate_relation_scans(config, state, left, right);
    row.noiseless = relation_from_scans(ScanRelationKind::uur_phase, clean, false);

    config.noise = true;
    config.seed = sweep_point_seed(seed, index);
    ScanQuartet noisy = simulate_relation_scans(config, state, left, right);
    row.noisy = relation_from_scans(ScanRelationKind::uur_phase, noisy, false);
    double vu = fit_fringe(noisy.ui).visibility;
    double vv = fit_fringe(noisy.iv).visibility;
    double vuv = fit_fringe(noisy.uv).visibility;
    row.t_measured = (vu * vu + vv * vv + vuv * vuv) / 3.0;
    return row;
}

inline std::vector<Fig3Row> fig3_rows(const Fig3Params& params, std::uint64_t seed) {
    return tabulate_parallel<Fig3Row>(params.sweep_points,
                                      [&](int i) { return fig3_row(params, seed, i); });
}

inline void write_fig3_csv(std::ostream& out, const std::vector<Fig3Row>& rows) {
    out << "side_deg,t_exact,t_measured,lhs_noiseless,lhs_se_noiseless,rhs_noiseless,"
           "rhs_se_noiseless,lhs_noisy,lhs_se_noisy,rhs_noisy,rhs_se_noisy,theory_cos_phi\n";
    char line[360];
    for (const Fig3Row& row : rows) {
        std::snprintf(line, sizeof(line),
                      "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      row.side_deg, row.t_exact, row.t_measured, row.noiseless.lhs,
                      row.noiseless.lhs_se.value_or(0.0), row.noiseless.rhs,
                      row.noiseless.rhs_se.value_or(0.0), row.noisy.lhs,
                      row.noisy.lhs_se.value_or(0.0), row.noisy.rhs,
                      row.noisy.rhs_se.value_or(0.0), row.theory_cos_phi);
        out << line;
    }
}

// --- Polarisation-input sweep -----------------------------------------------

/// Linear-polarisation input prepared by a half-wave plate at angle h:
/// cos(2h)|0> + sin(2h)|1>, Bloch vector (sin 4h, 0, cos 4h).
inline PureState polarised_input(double h_rad) {
    ComplexVector amplitudes(2);
    amplitudes << Complex(std::cos(2.0 * h_rad), 0.0), Complex(std::sin(2.0 * h_rad), 0.0);
    return PureState(amplitudes);
}

struct Fig4Row {
    double input_hwp_deg = 0.0;
    double analytic_lhs = 0.0;
    RelationReport noiseless;
    RelationReport noisy;
};

inline Fig4Row fig4_row(const Fig4Params& params, std::uint64_t seed, int index) {
    double h_deg = params.step_deg * static_cast<double>(index);
    PureState psi = polarised_input(deg_to_rad(h_deg));
    DensityMatrix state = DensityMatrix::from_pure(psi);
    UnitaryOp u = waveplate_stack_unitary(WaveplateStack(36.0, 0.0));
    UnitaryOp v = waveplate_stack_unitary(WaveplateStack(0.0, 36.0));

    Fig4Row row;
    row.input_hwp_deg = h_deg;
    row.analytic_lhs = our_evaluate(pair_overlap_triple(u, v, psi)).lhs;

    InterferometerConfig config;
    config.phase_grid = default_phase_grid(params.phase_points);
    config.counts_scale = params.counts_scale;
    InterferometerArm left = operator_arm("U", u);
    InterferometerArm right = operator_arm("V", v);

    ScanQuartet clean = simulate_relation_scans(config, state, left, right);
    row.noiseless = relation_from_scans(ScanRelationKind::our_overlap, clean, true);

    config.noise = true;
    config.seed = sweep_point_seed(seed, index);
    ScanQuartet noisy = simulate_relation_scans(config, state, left, right);
    row.noisy = relation_from_scans(ScanRelationKind::our_overlap, noisy, true);
    return row;
}

inline int fig4_point_count(const Fig4Params& params) {
    return static_cast<int>(std::floor((90.0 - 1e-9) / params.step_deg)) + 1;
}

inline std::vector<Fig4Row> fig4_rows(const Fig4Params& params, std::uint64_t seed) {
    return tabulate_parallel<Fig4Row>(fig4_point_count(params),
                                      [&](int i) { return fig4_row(params, seed, i); });
}

inline void write_fig4_csv(std::ostream& out, const std::vector<Fig4Row>& rows) {
    out << "input_hwp_deg,analytic_lhs,lhs_noiseless,lhs_se_noiseless,lhs_noisy,lhs_se_noisy\n";
    char line[240];
    for (const Fig4Row& row : rows) {
        std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      row.input_hwp_deg, row.analytic_lhs, row.noiseless.lhs,
                      row.noiseless.lhs_se.value_or(0.0), row.noisy.lhs,
                      row.noisy.lhs_se.value_or(0.0));
        out << line;
    }
}

// --- Correlator time series ---------------------------------------------------

struct OtocRow {
    double t = 0.0;
    OtocReport report;
};

inline std::vector<OtocRow> otoc_rows(const OtocParams& params, std::uint64_t seed) {
    auto rng = seeded_rng(seed, 17);
    DensityMatrix state = random_density_matrix(params.dim, rng);
    UnitaryOp v = haar_random_unitary(params.dim, rng);
    ComplexMatrix h = random_hermitian(params.dim, rng);
    std::vector<OtocRow> rows;
    rows.reserve(static_cast<size_t>(params.time_steps));
    for (int k = 0; k < params.time_steps; ++k) {
        double t = params.time_max * static_cast<double>(k) /
                   static_cast<double>(params.time_steps - 1);
        UnitaryOp w_t = heisenberg_evolve(v, h, t);
        rows.push_back(OtocRow{t, otoc_bounds(state, v, w_t)});
    }
    return rows;
}

inline void write_otoc_csv(std::ostream& out, const std::vector<OtocRow>& rows) {
    out << "t,re_f,im_f,abs_f,modulus_bound,commutator_lhs,commutator_rhs\n";
    char line[240];
    for (const OtocRow& row : rows) {
        std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", row.t,
                      row.report.f.real(), row.report.f.imag(), std::abs(row.report.f),
                      row.report.modulus_bound, row.report.commutator_lhs,
                      row.report.commutator_rhs);
        out << line;
    }
}

// --- Report bundle ------------------------------------------------------------

/// One named pass/fail verdict with its measured evidence.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;
};

struct ReportBundle {
    ExperimentSpec spec;
    /// CSV tables by file name, in emission order.
    std::vector<std::pair<std::string, std::string>> tables;
    /// Auxiliary JSON documents by file name (fringe-fit reports).
    std::vector<std::pair<std::string, std::string>> documents;
    std::vector<RelationReport> relations;
    std::vector<CheckResult> checks;
    bool all_pass = true;
};

inline Json relation_json(const RelationReport& report) {
    Json j;
    j["name"] = report.name;
    j["lhs"] = report.lhs;
    j["rhs"] = report.rhs;
    j["sense"] = report.sense == RelationSense::GreaterEqual ? "ge" : "le";
    j["slack"] = report.slack;
    j["tol"] = report.tol;
    j["holds"] = report.holds();
    j["saturated"] = report.saturated;
    j["indeterminate"] = report.indeterminate;
    if (report.lhs_se) {
        j["lhs_se"] = *report.lhs_se;
    }
    if (report.rhs_se) {
        j["rhs_se"] = *report.rhs_se;
    }
    if (report.min_eig) {
        j["min_eig"] = *report.min_eig;
    }
    return j;
}

inline Json summary_json(const ReportBundle& bundle) {
    Json j;
    j["tool_version"] = tool_version;
    j["kind"] = kind_name(bundle.spec.kind);
    j["config"] = resolved_config_json(bundle.spec);
    Json tables = Json::array();
    for (const auto& [name, text] : bundle.tables) {
        tables.push_back(name);
    }
    j["tables"] = tables;
    Json documents = Json::array();
    for (const auto& [name, text] : bundle.documents) {
        documents.push_back(name);
    }
    j["documents"] = documents;
    Json checks = Json::array();
    for (const CheckResult& check : bundle.checks) {
        Json c;
        c["name"] = check.name;
        c["pass"] = check.pass;
        c["details"] = check.details;
        checks.push_back(c);
    }
    j["checks"] = checks;
    Json relations = Json::array();
    for (const RelationReport& report : bundle.relations) {
        relations.push_back(relation_json(report));
    }
    j["relations"] = relations;
    j["all_pass"] = bundle.all_pass;
    return j;
}

inline void finalise_bundle(ReportBundle& bundle) {
    bundle.all_pass = true;
    for (const RelationReport& report : bundle.relations) {
        bundle.all_pass = bundle.all_pass && report.holds();
    }
    for (const CheckResult& check : bundle.checks) {
        bundle.all_pass = bundle.all_pass && check.pass;
    }
}

/// Writes every table and document of the bundle plus resolved_config.json
/// and summary.json into the spec's output directory.
inline void write_report_bundle(const ReportBundle& bundle) {
    namespace fs = std::filesystem;
    fs::create_directories(bundle.spec.output_dir);
    auto write_file = [&](const std::string& name, const std::string& text) {
        fs::path path = fs::path(bundle.spec.output_dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("write_report_bundle: cannot write " + path.string());
        }
        out << text;
    };
    for (const auto& [name, text] : bundle.tables) {
        write_file(name, text);
    }
    for (const auto& [name, text] : bundle.documents) {
        write_file(name, text);
    }
    write_file("resolved_config.json", resolved_config_json(bundle.spec).dump(2) + "\n");
    write_file("summary.json", summary_json(bundle).dump(2) + "\n");
}

// --- Pipelines ----------------------------------------------------------------

inline ReportBundle run_fig3(const ExperimentSpec& spec) {
    std::vector<Fig3Row> rows = fig3_rows(spec.fig3, spec.seed);
    ReportBundle bundle;
    bundle.spec = spec;
    std::ostringstream csv;
    write_fig3_csv(csv, rows);
    bundle.tables.emplace_back("fig3_sweep.csv", csv.str());

    double worst_noiseless = 0.0;
    int within = 0;
    for (const Fig3Row& row : rows) {
        bundle.relations.push_back(row.noiseless);
        bundle.relations.push_back(row.noisy);
        worst_noiseless = std::max(worst_noiseless, std::abs(row.noiseless.lhs - row.noiseless.rhs));
        bool lhs_ok = std::abs(row.noisy.lhs - row.theory_cos_phi) <=
                      3.0 * row.noisy.lhs_se.value_or(0.0);
        bool rhs_ok = std::abs(row.noisy.rhs - row.theory_cos_phi) <=
                      3.0 * row.noisy.rhs_se.value_or(0.0);
        within += lhs_ok && rhs_ok ? 1 : 0;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "max |lhs - rhs| = %.3g over %zu noiseless points",
                  worst_noiseless, rows.size());
    bundle.checks.push_back(
        CheckResult{"fig3-noiseless-saturation", worst_noiseless <= 1e-9, detail});
    std::snprintf(detail, sizeof(detail),
                  "%d/%zu noisy points within 3 standard errors of the saturation curve", within,
                  rows.size());
    bundle.checks.push_back(CheckResult{
        "fig3-noisy-consistency",
        within >= static_cast<int>(rows.size()) - (rows.size() >= 13 ? 1 : 0), detail});
    finalise_bundle(bundle);
    return bundle;
}

inline ReportBundle run_fig4(const ExperimentSpec& spec) {
    std::vector<Fig4Row> rows = fig4_rows(spec.fig4, spec.seed);
    ReportBundle bundle;
    bundle.spec = spec;
    std::ostringstream csv;
    write_fig4_csv(csv, rows);
    bundle.tables.emplace_back("fig4_sweep.csv", csv.str());

    double worst_noiseless = 0.0;
    int within = 0;
    for (const Fig4Row& row : rows) {
        bundle.relations.push_back(row.noiseless);
        bundle.relations.push_back(row.noisy);
        worst_noiseless =
            std::max(worst_noiseless, std::abs(row.noiseless.lhs - row.analytic_lhs));
        within += std::abs(row.noisy.lhs - row.analytic_lhs) <=
                          3.0 * row.noisy.lhs_se.value_or(0.0)
                      ? 1
                      : 0;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "max |lhs - analytic| = %.3g over %zu noiseless points",
                  worst_noiseless, rows.size());
    bundle.checks.push_back(CheckResult{"fig4-noiseless-curve", worst_noiseless <= 1e-9, detail});
    std::snprintf(detail, sizeof(detail),
                  "%d/%zu noisy points within 3 standard errors of the analytic curve", within,
                  rows.size());
    bundle.checks.push_back(CheckResult{
        "fig4-noisy-consistency",
        static_cast<double>(within) >= 0.95 * static_cast<double>(rows.size()), detail});
    finalise_bundle(bundle);
    return bundle;
}

inline ReportBundle run_musmap(const ExperimentSpec& spec) {
    const MusmapParams& p = spec.musmap;
    UnitaryOp u = rotation_unitary(Vector3(p.u_axis.normalized()), deg_to_rad(p.u_angle_deg));
    UnitaryOp v = rotation_unitary(Vector3(p.v_axis.normalized()), deg_to_rad(p.v_angle_deg));
    MusSolutionSet scan = mus_scan(u, v, p.grid_resolution);

    ReportBundle bundle;
    bundle.spec = spec;
    std::ostringstream surface;
    write_mus_surface_csv(surface, scan);
    bundle.tables.emplace_back("mus_surface.csv", surface.str());

    std::ostringstream families;
    families << "family,sign,theta_rad,phi_rad,residual\n";
    char line[200];
    for (size_t f = 0; f < scan.families.size(); ++f) {
        for (const MusCurvePoint& point : scan.families[f].points) {
            std::snprintf(line, sizeof(line), "%zu,%d,%.12g,%.12g,%.12g\n", f,
                          scan.families[f].sign, point.theta, point.phi, point.residual);
            families << line;
        }
    }
    bundle.tables.emplace_back("mus_families.csv", families.str());

    char detail[200];
    if (scan.degenerate) {
        bundle.checks.push_back(CheckResult{"mus-degenerate-pair", true,
                                            "commuting pair: every state saturates the bound"});
    } else {
        double worst = 0.0;
        size_t points = 0;
        for (const MusFamily& family : scan.families) {
            for (const MusCurvePoint& point : family.points) {
                worst = std::max(worst, point.residual);
                ++points;
            }
        }
        std::snprintf(detail, sizeof(detail), "%zu solution families with %zu refined points",
                      scan.families.size(), points);
        bundle.checks.push_back(
            CheckResult{"mus-families-nondegenerate", scan.families.size() == 2, detail});
        bundle.checks.push_back(CheckResult{"mus-axis-states", scan.axis_hits.all(),
                                            "rotation-axis states appear in the solution set"});
        std::snprintf(detail, sizeof(detail), "max refined residual = %.3g", worst);
        bundle.checks.push_back(CheckResult{"mus-residual-bound", worst <= 1e-6, detail});
    }
    finalise_bundle(bundle);
    return bundle;
}

inline ReportBundle run_otoc(const ExperimentSpec& spec) {
    std::vector<OtocRow> rows = otoc_rows(spec.otoc, spec.seed);
    ReportBundle bundle;
    bundle.spec = spec;
    std::ostringstream csv;
    write_otoc_csv(csv, rows);
    bundle.tables.emplace_back("otoc_series.csv", csv.str());
    for (const OtocRow& row : rows) {
        bundle.relations.push_back(row.report.modulus_relation());
        bundle.relations.push_back(row.report.commutator_relation());
    }
    finalise_bundle(bundle);
    return bundle;
}

inline Json fringe_fit_json(const std::string& input, size_t points, const FringeFit& fit) {
    Json j;
    j["input"] = input;
    j["points"] = points;
    j["a1"] = fit.a1;
    j["a2"] = fit.a2;
    j["theta0_rad"] = fit.theta0;
    j["se_a1"] = fit.se_a1;
    j["se_a2"] = fit.se_a2;
    j["se_theta0"] = fit.se_theta0;
    j["visibility"] = fit.visibility;
    j["visibility_se"] = fit.visibility_se;
    j["chi2_dof"] = fit.chi2_dof;
    j["theta0_unconstrained"] = fit.theta0_unconstrained;
    return j;
}

inline ReportBundle run_fit_csv(const ExperimentSpec& spec) {
    ReportBundle bundle;
    bundle.spec = spec;
    for (const std::string& file : spec.fit_csv.files) {
        std::ifstream in(file);
        if (!in) {
            throw ConfigError("fit-csv input not found: " + file);
        }
        FringeScan scan = read_scan_csv(in);
        FringeFit fit = fit_fringe(scan);
        std::string stem = std::filesystem::path(file).stem().string();
        bundle.documents.emplace_back(stem + "_fit.json",
                                      fringe_fit_json(file, scan.points.size(), fit).dump(2) +
                                          "\n");
    }
    finalise_bundle(bundle);
    return bundle;
}

}  // namespace uurlab
