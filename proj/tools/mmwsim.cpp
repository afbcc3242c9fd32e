// SPDX-License-Identifier: Apache-2.0
//
// mmw-cellsim: system-level simulator for millimeter-wave cellular networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmw/cli/run.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using mmw::cli::ExitCode;

    CLI::App app{"mmwsim: Monte Carlo simulator for millimeter-wave cellular networks"};
    app.set_version_flag("--version", std::string(mmw::kVersion));

    mmw::cli::RunSpec spec;
    std::string experiment = "single";
    std::string config;
    std::string replay;
    std::string out = spec.out_dir.string();
    bool quiet = false;

    app.add_option("--preset", spec.preset, "Base scenario: nyc28_4x4, nyc28_8x8, nyc73_4x4, nyc73_8x8")
        ->capture_default_str();
    app.add_option("--config", config, "Scenario JSON layered on the preset");
    app.add_option("--set", spec.overrides, "Override one field, e.g. --set band.shadow_std_db=0 (repeatable)")
        ->allow_extra_args(false);
    app.add_option("--drops", spec.n_drops, "Independent network drops")->capture_default_str();
    app.add_option("--seed", spec.master_seed, "Master seed")->capture_default_str();
    app.add_option("--out", out, "Output directory")->capture_default_str();
    app.add_option("--experiment", experiment,
                   "single, band_sweep, access_compare, outage_compare or pathloss_table")
        ->capture_default_str();
    app.add_option("--threads", spec.threads, "Worker threads, 0 for all cores (results do not depend on it)")
        ->capture_default_str();
    app.add_option("--replay", replay, "Re-run the experiment recorded in a manifest.json")
        ->excludes("--preset", "--config", "--set", "--drops", "--seed", "--experiment");
    app.add_flag("-q,--quiet", quiet, "No progress output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ExitCode::usage);
    }

    try {
        if (!replay.empty()) {
            const unsigned threads = spec.threads;
            spec = mmw::cli::spec_from_manifest_file(replay, out);
            spec.threads = threads;
        } else {
            const auto kind = mmw::cli::parse_experiment(experiment);
            if (!kind) {
                std::cerr << "mmwsim: unknown experiment '" << experiment << "'\n";
                return static_cast<int>(ExitCode::usage);
            }
            spec.experiment = *kind;
            spec.config_path = config;
            spec.out_dir = out;
        }
    } catch (const mmw::cli::RunError& e) {
        std::cerr << "mmwsim: " << e.what() << "\n";
        return static_cast<int>(e.code);
    }

    const ExitCode code = mmw::cli::run(spec, std::cerr, quiet ? nullptr : &std::cerr);
    if (code == ExitCode::ok && !quiet)
        std::cerr << "wrote results to " << spec.out_dir.string() << "\n";
    return static_cast<int>(code);
}
