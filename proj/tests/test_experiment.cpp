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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "uurlab/verification.hpp"

namespace {

namespace fs = std::filesystem;

using uurlab::ConfigError;
using uurlab::DensityMatrix;
using uurlab::ExperimentKind;
using uurlab::ExperimentSpec;
using uurlab::Json;
using uurlab::PureState;
using uurlab::ReportBundle;
using uurlab::UnitaryOp;
using uurlab::Vector3;

void expect_config_error(const std::string& text, const std::string& needle) {
    try {
        uurlab::parse_experiment_config(text);
        FAIL() << "expected a config error mentioning '" << needle << "'";
    } catch (const ConfigError& error) {
        EXPECT_NE(std::string(error.what()).find(needle), std::string::npos)
            << "actual message: " << error.what();
    }
}

/// Fresh scratch directory for file-based tests, removed on destruction.
struct ScratchDir {
    fs::path path;
    ScratchDir() {
        path = fs::temp_directory_path() /
               ("uurlab_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path);
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

TEST(ExperimentConfig, KindNamesRoundTrip) {
    for (ExperimentKind kind :
         {ExperimentKind::verify, ExperimentKind::fig3, ExperimentKind::fig4,
          ExperimentKind::musmap, ExperimentKind::otoc, ExperimentKind::fit_csv}) {
        EXPECT_EQ(uurlab::kind_from_name(uurlab::kind_name(kind)), kind);
    }
    EXPECT_EQ(uurlab::kind_name(ExperimentKind::fit_csv), "fit-csv");
    EXPECT_THROW(uurlab::kind_from_name("fig5"), ConfigError);
}

TEST(ExperimentConfig, DefaultsRoundTripThroughJson) {
    for (ExperimentKind kind :
         {ExperimentKind::verify, ExperimentKind::fig3, ExperimentKind::fig4,
          ExperimentKind::musmap, ExperimentKind::otoc, ExperimentKind::fit_csv}) {
        ExperimentSpec spec;
        spec.kind = kind;
        spec.seed = 42;
        spec.output_dir = "scratch";
        if (kind == ExperimentKind::fit_csv) {
            spec.fit_csv.files = {"a.csv", "b.csv"};
        }
        Json emitted = uurlab::resolved_config_json(spec);
        ExperimentSpec reparsed = uurlab::parse_experiment_config(emitted.dump());
        EXPECT_EQ(uurlab::resolved_config_json(reparsed), emitted) << uurlab::kind_name(kind);
    }
}

TEST(ExperimentConfig, ParsesFullDocument) {
    ExperimentSpec spec = uurlab::parse_experiment_config(R"({
        "kind": "fig3",
        "seed": 7,
        "output_dir": "results",
        "fig3": {
            "side_min_deg": 30,
            "side_max_deg": 100,
            "sweep_points": 8,
            "counts_scale": 2000,
            "phase_points": 31
        }
    })");
    EXPECT_EQ(spec.kind, ExperimentKind::fig3);
    EXPECT_EQ(spec.seed, 7u);
    EXPECT_EQ(spec.output_dir, "results");
    EXPECT_DOUBLE_EQ(spec.fig3.side_min_deg, 30.0);
    EXPECT_DOUBLE_EQ(spec.fig3.side_max_deg, 100.0);
    EXPECT_EQ(spec.fig3.sweep_points, 8);
    EXPECT_DOUBLE_EQ(spec.fig3.counts_scale, 2000.0);
    EXPECT_EQ(spec.fig3.phase_points, 31);
}

TEST(ExperimentConfig, OmittedSectionKeepsDefaults) {
    ExperimentSpec spec = uurlab::parse_experiment_config(R"({"kind": "fig4"})");
    EXPECT_DOUBLE_EQ(spec.fig4.step_deg, 1.0);
    EXPECT_DOUBLE_EQ(spec.fig4.counts_scale, 4000.0);
    EXPECT_EQ(spec.fig4.phase_points, 25);
}

TEST(ExperimentConfig, RejectsMalformedDocuments) {
    expect_config_error("{", "config parse error");
    expect_config_error("[1, 2]", "top level must be a JSON object");
    expect_config_error("{}", "missing field: kind");
    expect_config_error(R"({"kind": 3})", "kind must be a string");
    expect_config_error(R"({"kind": "fig3", "extra": 1})", "unknown key: extra");
    expect_config_error(R"({"kind": "fig4", "fig4": {"steps_deg": 2}})",
                        "unknown key: fig4.steps_deg");
    expect_config_error(R"({"kind": "fig4", "fig3": {}})", "unknown key: fig3");
    expect_config_error(R"({"kind": "otoc", "otoc": []})", "otoc must be an object");
    expect_config_error(R"({"kind": "verify", "seed": -1})",
                        "seed must be a nonnegative integer");
    expect_config_error(R"({"kind": "verify", "seed": 1.5})",
                        "seed must be a nonnegative integer");
}

TEST(ExperimentConfig, RejectsOutOfRangeValues) {
    expect_config_error(R"({"kind": "fig3", "fig3": {"counts_scale": -10}})",
                        "fig3.counts_scale must be positive");
    expect_config_error(R"({"kind": "fig3", "fig3": {"side_max_deg": 150}})",
                        "side_max_deg must lie below 120");
    expect_config_error(R"({"kind": "fig3", "fig3": {"phase_points": 5}})",
                        "phase_points must be at least 8");
    expect_config_error(R"({"kind": "fig4", "fig4": {"step_deg": 0}})",
                        "step_deg must lie in (0, 45]");
    expect_config_error(R"({"kind": "musmap", "musmap": {"grid_resolution": 16}})",
                        "grid_resolution must be at least 32");
    expect_config_error(R"({"kind": "musmap", "musmap": {"u_axis": [0, 0, 0]}})",
                        "axes must be nonzero");
    expect_config_error(R"({"kind": "musmap", "musmap": {"u_axis": [1, 0]}})",
                        "array of three numbers");
    expect_config_error(R"({"kind": "otoc", "otoc": {"dim": 1}})", "dim must lie in [2, 16]");
    expect_config_error(R"({"kind": "otoc", "otoc": {"time_steps": 1}})",
                        "time_steps must be at least 2");
    expect_config_error(R"({"kind": "fit-csv"})", "fit-csv.files");
}

TEST(ExperimentConfig, IngestsFileAndRejectsMissingPath) {
    ScratchDir scratch;
    fs::path file = scratch.path / "config.json";
    std::ofstream(file) << R"({"kind": "otoc", "seed": 11, "otoc": {"dim": 3}})";
    ExperimentSpec spec = uurlab::ingest_config(file.string());
    EXPECT_EQ(spec.kind, ExperimentKind::otoc);
    EXPECT_EQ(spec.seed, 11u);
    EXPECT_EQ(spec.otoc.dim, 3);
    EXPECT_THROW(uurlab::ingest_config((scratch.path / "absent.json").string()), ConfigError);
}

TEST(Equilateral, AllThreeSidesAreEqual) {
    for (double side_deg : {30.0, 60.0, 100.0}) {
        double side = uurlab::deg_to_rad(side_deg);
        uurlab::EquilateralPair pair = uurlab::equilateral_pair(side);
        PureState apex = PureState::basis_state(2, 0);
        PureState second = uurlab::apply_unitary(pair.u, apex);
        PureState third = uurlab::apply_unitary(pair.v, apex);
        double t12 = uurlab::transition_probability(apex, second);
        double t13 = uurlab::transition_probability(apex, third);
        double t23 = uurlab::transition_probability(second, third);
        EXPECT_NEAR(t12, pair.t_exact, 1e-12);
        EXPECT_NEAR(t13, pair.t_exact, 1e-12);
        EXPECT_NEAR(t23, pair.t_exact, 1e-12);
        EXPECT_NEAR(pair.t_exact, std::pow(std::cos(side / 2.0), 2), 1e-12);
    }
}

TEST(Equilateral, PhaseRelationSaturatesOnTheCurve) {
    DensityMatrix state = DensityMatrix::from_pure(PureState::basis_state(2, 0));
    for (double side_deg : {24.0, 60.0, 119.0}) {
        uurlab::EquilateralPair pair = uurlab::equilateral_pair(uurlab::deg_to_rad(side_deg));
        uurlab::RelationReport rep = uurlab::uur_bargmann_pair(state, pair.u, pair.v);
        double curve = uurlab::equilateral_saturation_curve(pair.t_exact);
        EXPECT_NEAR(rep.lhs, curve, 1e-9) << side_deg;
        EXPECT_NEAR(rep.rhs, curve, 1e-9) << side_deg;
        EXPECT_TRUE(rep.saturated);
    }
}

TEST(Equilateral, RejectsDegenerateSides) {
    EXPECT_THROW(uurlab::equilateral_pair(0.0), std::invalid_argument);
    EXPECT_THROW(uurlab::equilateral_pair(2.0 * uurlab::pi / 3.0), std::invalid_argument);
    EXPECT_THROW(uurlab::equilateral_pair(uurlab::deg_to_rad(150.0)), std::invalid_argument);
}

TEST(Fig3Sweep, NoiselessReconstructionSitsOnTheCurve) {
    uurlab::Fig3Params params;
    params.sweep_points = 5;
    std::vector<uurlab::Fig3Row> rows = uurlab::fig3_rows(params, 0);
    ASSERT_EQ(rows.size(), 5u);
    for (const uurlab::Fig3Row& row : rows) {
        EXPECT_NEAR(row.noiseless.lhs, row.noiseless.rhs, 1e-9);
        EXPECT_NEAR(row.noiseless.lhs, row.theory_cos_phi, 1e-9);
        EXPECT_TRUE(row.noiseless.holds());
    }
    EXPECT_GT(rows.front().t_exact, rows.back().t_exact);
}

TEST(Fig3Sweep, BundleHasTableAndChecks) {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::fig3;
    spec.seed = 2;
    ReportBundle bundle = uurlab::run_fig3(spec);
    ASSERT_EQ(bundle.tables.size(), 1u);
    EXPECT_EQ(bundle.tables[0].first, "fig3_sweep.csv");
    std::istringstream lines(bundle.tables[0].second);
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header,
              "side_deg,t_exact,t_measured,lhs_noiseless,lhs_se_noiseless,rhs_noiseless,"
              "rhs_se_noiseless,lhs_noisy,lhs_se_noisy,rhs_noisy,rhs_se_noisy,theory_cos_phi");
    int data_rows = 0;
    for (std::string line; std::getline(lines, line);) {
        data_rows += line.empty() ? 0 : 1;
    }
    EXPECT_EQ(data_rows, 13);
    ASSERT_EQ(bundle.checks.size(), 2u);
    EXPECT_EQ(bundle.checks[0].name, "fig3-noiseless-saturation");
    EXPECT_TRUE(bundle.checks[0].pass);
    EXPECT_EQ(bundle.checks[1].name, "fig3-noisy-consistency");
    EXPECT_TRUE(bundle.checks[1].pass);
    EXPECT_EQ(bundle.relations.size(), 26u);
    EXPECT_TRUE(bundle.all_pass);
}

TEST(Fig3Sweep, TablesAreDeterministic) {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::fig3;
    spec.seed = 5;
    spec.fig3.sweep_points = 6;
    ReportBundle first = uurlab::run_fig3(spec);
    ReportBundle second = uurlab::run_fig3(spec);
    EXPECT_EQ(first.tables[0].second, second.tables[0].second);
    spec.seed = 6;
    ReportBundle reseeded = uurlab::run_fig3(spec);
    EXPECT_NE(reseeded.tables[0].second, first.tables[0].second);
}

TEST(Fig4Sweep, NoiselessCurveMatchesAnalyticAndTouchesOne) {
    uurlab::Fig4Params params;
    params.step_deg = 5.0;
    ASSERT_EQ(uurlab::fig4_point_count(params), 18);
    std::vector<uurlab::Fig4Row> rows = uurlab::fig4_rows(params, 0);
    ASSERT_EQ(rows.size(), 18u);
    for (const uurlab::Fig4Row& row : rows) {
        EXPECT_NEAR(row.noiseless.lhs, row.analytic_lhs, 1e-9);
        EXPECT_LE(row.analytic_lhs, 1.0 + 1e-12);
    }
    EXPECT_NEAR(rows[0].analytic_lhs, 1.0, 1e-12);
    EXPECT_NEAR(rows[9].analytic_lhs, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(rows[9].input_hwp_deg, 45.0);
    EXPECT_LT(rows[5].analytic_lhs, 1.0 - 1e-3);
}

TEST(Fig4Sweep, CrossingsAreMinimumUncertaintyStates) {
    UnitaryOp u = uurlab::waveplate_stack_unitary(uurlab::WaveplateStack(36.0, 0.0));
    UnitaryOp v = uurlab::waveplate_stack_unitary(uurlab::WaveplateStack(0.0, 36.0));
    for (double h_deg : {0.0, 45.0}) {
        PureState psi = uurlab::polarised_input(uurlab::deg_to_rad(h_deg));
        EXPECT_LE(uurlab::mus_residual(u, v, psi), 1e-6) << h_deg;
    }
    // The crossing inputs sit on the scanned solution families within one
    // grid step.
    uurlab::MusSolutionSet scan = uurlab::mus_scan(u, v, 64);
    ASSERT_FALSE(scan.degenerate);
    double h = uurlab::pi / 64.0;
    for (double h_deg : {0.0, 45.0}) {
        double input_theta = h_deg == 0.0 ? 0.0 : uurlab::pi;
        double best = uurlab::pi;
        for (const uurlab::MusFamily& family : scan.families) {
            for (const uurlab::MusCurvePoint& point : family.points) {
                best = std::min(best, std::abs(point.theta - input_theta));
            }
        }
        EXPECT_LE(best, 2.0 * h) << h_deg;
    }
}

TEST(Fig4Sweep, BundleChecksPass) {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::fig4;
    spec.seed = 3;
    spec.fig4.step_deg = 3.0;
    ReportBundle bundle = uurlab::run_fig4(spec);
    ASSERT_EQ(bundle.tables.size(), 1u);
    EXPECT_EQ(bundle.tables[0].first, "fig4_sweep.csv");
    ASSERT_EQ(bundle.checks.size(), 2u);
    EXPECT_EQ(bundle.checks[0].name, "fig4-noiseless-curve");
    EXPECT_TRUE(bundle.checks[0].pass);
    EXPECT_EQ(bundle.checks[1].name, "fig4-noisy-consistency");
    EXPECT_TRUE(bundle.checks[1].pass);
    EXPECT_TRUE(bundle.all_pass);
}

TEST(MusmapRun, GenericPairReportsTwoFamilies) {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::musmap;
    spec.musmap.grid_resolution = 48;
    ReportBundle bundle = uurlab::run_musmap(spec);
    ASSERT_EQ(bundle.tables.size(), 2u);
    EXPECT_EQ(bundle.tables[0].first, "mus_surface.csv");
    EXPECT_EQ(bundle.tables[1].first, "mus_families.csv");
    ASSERT_EQ(bundle.checks.size(), 3u);
    EXPECT_EQ(bundle.checks[0].name, "mus-families-nondegenerate");
    EXPECT_EQ(bundle.checks[1].name, "mus-axis-states");
    EXPECT_EQ(bundle.checks[2].name, "mus-residual-bound");
    for (const uurlab::CheckResult& check : bundle.checks) {
        EXPECT_TRUE(check.pass) << check.name << ": " << check.details;
    }
    std::istringstream lines(bundle.tables[0].second);
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, "theta_rad,phi_rad,our_lhs,residual");
    EXPECT_TRUE(bundle.all_pass);
}

TEST(MusmapRun, SameAxisPairIsDegenerate) {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::musmap;
    spec.musmap.u_axis = Vector3(0.0, 0.0, 1.0);
    spec.musmap.u_angle_deg = 45.0;
    spec.musmap.v_axis = Vector3(0.0, 0.0, 1.0);
    spec.musmap.v_angle_deg = 30.0;
    spec.musmap.grid_resolution = 32;
    ReportBundle bundle = uurlab::run_musmap(spec);
    ASSERT_EQ(bundle.checks.size(), 1u);
    EXPECT_EQ(bundle.checks[0].name, "mus-degenerate-pair");
    EXPECT_TRUE(bundle.checks[0].pass);
    EXPECT_TRUE(bundle.all_pass);
}

TEST(OtocRun, SeriesStartsAtUnityAndBoundsHold) {
    uurlab::OtocParams params;
    params.dim = 3;
    params.time_max = 5.0;
    params.time_steps = 21;
    std::vector<uurlab::OtocRow> rows = uurlab::otoc_rows(params, 0);
    ASSERT_EQ(rows.size(), 21u);
    EXPECT_NEAR(rows[0].t, 0.0, 1e-15);
    EXPECT_NEAR(std::abs(rows[0].report.f - uurlab::Complex(1.0, 0.0)), 0.0, 1e-12);
    for (const uurlab::OtocRow& row : rows) {
        EXPECT_LE(std::abs(row.report.f), 1.0 + 1e-12);
        EXPECT_TRUE(row.report.modulus_relation().holds());
        EXPECT_TRUE(row.report.commutator_relation().holds());
    }
    EXPECT_NEAR(rows.back().t, 5.0, 1e-15);
}

TEST(OtocRun, BundleCollectsBothRelationsPerRow) {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::otoc;
    spec.otoc.dim = 2;
    spec.otoc.time_steps = 11;
    spec.otoc.time_max = 4.0;
    ReportBundle bundle = uurlab::run_otoc(spec);
    ASSERT_EQ(bundle.tables.size(), 1u);
    EXPECT_EQ(bundle.tables[0].first, "otoc_series.csv");
    EXPECT_EQ(bundle.relations.size(), 22u);
    EXPECT_TRUE(bundle.all_pass);
    std::istringstream lines(bundle.tables[0].second);
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, "t,re_f,im_f,abs_f,modulus_bound,commutator_lhs,commutator_rhs");
}

TEST(FitCsvRun, RecoversVisibilityFromWrittenScan) {
    ScratchDir scratch;
    uurlab::InterferometerConfig config;
    DensityMatrix state = DensityMatrix::from_pure(PureState::basis_state(2, 0));
    UnitaryOp rot = uurlab::rotation_unitary(Vector3(1.0, 0.0, 0.0), 2.0 * std::acos(0.6));
    uurlab::FringeScan scan =
        uurlab::simulate_scan(config, state, uurlab::identity_arm(), uurlab::operator_arm("V", rot));
    fs::path file = scratch.path / "scan_iv.csv";
    {
        std::ofstream out(file);
        uurlab::write_scan_csv(out, scan);
    }
    ExperimentSpec spec;
    spec.kind = ExperimentKind::fit_csv;
    spec.fit_csv.files = {file.string()};
    spec.output_dir = (scratch.path / "out").string();
    ReportBundle bundle = uurlab::run_experiment(spec);
    ASSERT_EQ(bundle.documents.size(), 1u);
    EXPECT_EQ(bundle.documents[0].first, "scan_iv_fit.json");
    Json fit = Json::parse(bundle.documents[0].second);
    EXPECT_NEAR(fit.at("visibility").get<double>(), 0.6, 1e-9);
    EXPECT_EQ(fit.at("points").get<size_t>(), scan.points.size());
    EXPECT_FALSE(fit.at("theta0_unconstrained").get<bool>());

    uurlab::write_report_bundle(bundle);
    EXPECT_TRUE(fs::exists(fs::path(spec.output_dir) / "scan_iv_fit.json"));
    EXPECT_TRUE(fs::exists(fs::path(spec.output_dir) / "resolved_config.json"));
    EXPECT_TRUE(fs::exists(fs::path(spec.output_dir) / "summary.json"));
    std::ifstream summary_in(fs::path(spec.output_dir) / "summary.json");
    Json summary = Json::parse(summary_in);
    EXPECT_EQ(summary.at("kind").get<std::string>(), "fit-csv");
    EXPECT_TRUE(summary.at("all_pass").get<bool>());
    ExperimentSpec reparsed = uurlab::parse_experiment_config(summary.at("config").dump());
    EXPECT_EQ(uurlab::resolved_config_json(reparsed), uurlab::resolved_config_json(spec));
}

TEST(FitCsvRun, MissingInputIsAConfigError) {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::fit_csv;
    spec.fit_csv.files = {"no_such_scan.csv"};
    EXPECT_THROW(uurlab::run_experiment(spec), ConfigError);
}

TEST(RunExperiment, ValidatesBeforeDispatch) {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::fig4;
    spec.fig4.step_deg = -1.0;
    EXPECT_THROW(uurlab::run_experiment(spec), ConfigError);
    spec.fig4.step_deg = 9.0;
    ReportBundle bundle = uurlab::run_experiment(spec);
    EXPECT_EQ(bundle.spec.kind, ExperimentKind::fig4);
    EXPECT_TRUE(bundle.all_pass);
}

TEST(SummaryJson, CarriesRelationFields) {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::otoc;
    spec.otoc.dim = 2;
    spec.otoc.time_steps = 5;
    ReportBundle bundle = uurlab::run_otoc(spec);
    Json summary = uurlab::summary_json(bundle);
    EXPECT_EQ(summary.at("tool_version").get<std::string>(), uurlab::tool_version);
    ASSERT_FALSE(summary.at("relations").empty());
    const Json& relation = summary.at("relations").at(0);
    for (const char* key : {"name", "lhs", "rhs", "sense", "slack", "tol", "holds"}) {
        EXPECT_TRUE(relation.contains(key)) << key;
    }
    EXPECT_EQ(summary.at("tables").at(0).get<std::string>(), "otoc_series.csv");
}

TEST(GeodesicInterpolant, PreservesAngleAddition) {
    auto rng = uurlab::seeded_rng(901);
    int built = 0;
    while (built < 50) {
        PureState psi1 = uurlab::random_pure_state(3, rng);
        PureState psi3 = uurlab::random_pure_state(3, rng);
        double overlap = std::abs(psi1.vec().dot(psi3.vec()));
        if (overlap < 0.05 || overlap > 0.95) {
            continue;
        }
        PureState mid = uurlab::geodesic_interpolant(psi1, psi3, 0.4);
        uurlab::OverlapTriple triple = uurlab::overlap_triple(psi1, mid, psi3);
        EXPECT_NEAR(uurlab::our_evaluate(triple).lhs, 1.0, 1e-10);
        ++built;
    }
    PureState e0 = PureState::basis_state(2, 0);
    PureState e1 = PureState::basis_state(2, 1);
    EXPECT_THROW(uurlab::geodesic_interpolant(e0, e1, 0.5), std::invalid_argument);
}

TEST(AcceptanceChecks, FastChecksPassAtDefaultSeed) {
    uurlab::CheckResult expansion = uurlab::check_determinant_expansion(0);
    EXPECT_TRUE(expansion.pass) << expansion.details;
    uurlab::CheckResult tight = uurlab::check_qubit_tight(0);
    EXPECT_TRUE(tight.pass) << tight.details;
    uurlab::CheckResult mus = uurlab::check_mus_families(0);
    EXPECT_TRUE(mus.pass) << mus.details;
}

TEST(TabulateParallel, KeepsIndexOrderAndPropagatesErrors) {
    std::vector<int> rows = uurlab::tabulate_parallel<int>(64, [](int i) { return i * i; });
    ASSERT_EQ(rows.size(), 64u);
    for (int i = 0; i < 64; ++i) {
        EXPECT_EQ(rows[static_cast<size_t>(i)], i * i);
    }
    EXPECT_THROW(uurlab::tabulate_parallel<int>(16,
                                                [](int i) -> int {
                                                    if (i == 7) {
                                                        throw std::runtime_error("boom");
                                                    }
                                                    return i;
                                                }),
                 std::runtime_error);
}

}  // namespace
