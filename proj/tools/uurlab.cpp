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

// Command line driver. Each subcommand loads an optional JSON config,
// applies --seed/--out overrides, runs the pipeline, and writes the report
// bundle under the output directory. Exit status: 0 when every relation and
// check holds, 1 when a relation is violated or a check fails, 2 on a
// configuration or usage error.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uurlab/verification.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string output_dir;
    std::vector<std::string> files;
};

uurlab::ExperimentSpec resolve_spec(uurlab::ExperimentKind kind, const CliOptions& options) {
    uurlab::ExperimentSpec spec;
    if (!options.config_path.empty()) {
        spec = uurlab::ingest_config(options.config_path);
        if (spec.kind != kind) {
            throw uurlab::ConfigError("config kind '" + uurlab::kind_name(spec.kind) +
                                      "' does not match subcommand '" + uurlab::kind_name(kind) +
                                      "'");
        }
    } else {
        spec.kind = kind;
    }
    if (options.seed_set) {
        spec.seed = options.seed;
    }
    if (!options.output_dir.empty()) {
        spec.output_dir = options.output_dir;
    }
    for (const std::string& file : options.files) {
        spec.fit_csv.files.push_back(file);
    }
    uurlab::validate_spec(spec);
    return spec;
}

void print_bundle(const uurlab::ReportBundle& bundle) {
    for (const uurlab::CheckResult& check : bundle.checks) {
        std::printf("%-28s %s  %s\n", check.name.c_str(), check.pass ? "PASS" : "FAIL",
                    check.details.c_str());
    }
    for (const auto& [name, text] : bundle.tables) {
        size_t rows = 0;
        for (char c : text) {
            rows += c == '\n' ? 1 : 0;
        }
        std::printf("table %s: %zu data rows\n", name.c_str(), rows > 0 ? rows - 1 : 0);
    }
    for (const auto& [name, text] : bundle.documents) {
        (void)text;
        std::printf("document %s\n", name.c_str());
    }
    if (!bundle.relations.empty()) {
        size_t holding = 0;
        for (const uurlab::RelationReport& relation : bundle.relations) {
            holding += relation.holds() ? 1 : 0;
        }
        std::printf("relations holding: %zu/%zu\n", holding, bundle.relations.size());
    }
    std::printf("%s\n", bundle.all_pass ? "PASS" : "FAIL");
}

int run_kind(uurlab::ExperimentKind kind, const CliOptions& options) {
    uurlab::ExperimentSpec spec = resolve_spec(kind, options);
    uurlab::ReportBundle bundle = uurlab::run_experiment(spec);
    uurlab::write_report_bundle(bundle);
    print_bundle(bundle);
    return bundle.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolkit for unitary and overlap uncertainty relations"};
    app.require_subcommand(1);

    struct SubcommandSpec {
        uurlab::ExperimentKind kind;
        const char* description;
    };
    const std::vector<SubcommandSpec> kinds{
        {uurlab::ExperimentKind::verify, "run the acceptance checks"},
        {uurlab::ExperimentKind::fig3, "equilateral-triple phase sweep"},
        {uurlab::ExperimentKind::fig4, "polarisation overlap sweep"},
        {uurlab::ExperimentKind::musmap, "minimum-uncertainty state map"},
        {uurlab::ExperimentKind::otoc, "out-of-time-order correlator series"},
        {uurlab::ExperimentKind::fit_csv, "fit fringes from scan CSV files"},
    };

    std::vector<CliOptions> options(kinds.size());
    std::vector<CLI::App*> subcommands;
    for (size_t i = 0; i < kinds.size(); ++i) {
        CLI::App* sub = app.add_subcommand(uurlab::kind_name(kinds[i].kind),
                                           kinds[i].description);
        sub->add_option("--config", options[i].config_path, "JSON config file");
        CLI::Option* seed_opt = sub->add_option("--seed", options[i].seed, "random seed override");
        sub->add_option("--out", options[i].output_dir, "output directory override");
        if (kinds[i].kind == uurlab::ExperimentKind::fit_csv) {
            sub->add_option("files", options[i].files, "scan CSV files to fit");
        }
        sub->callback([&options, i, seed_opt] { options[i].seed_set = seed_opt->count() > 0; });
        subcommands.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        return app.exit(error) == 0 ? 0 : 2;
    }

    try {
        for (size_t i = 0; i < kinds.size(); ++i) {
            if (subcommands[i]->parsed()) {
                return run_kind(kinds[i].kind, options[i]);
            }
        }
        std::fprintf(stderr, "no subcommand selected\n");
        return 2;
    } catch (const uurlab::ConfigError& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return 2;
    } catch (const std::invalid_argument& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return 2;
    } catch (const std::exception& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return 2;
    }
}
