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

#pragma once

#include "mmw/channel/band_params.hpp"
#include "mmw/channel/path_loss.hpp"
#include "mmw/io/json.hpp"
#include "mmw/io/report.hpp"
#include "mmw/net/campaign.hpp"
#include "mmw/net/scenario.hpp"
#include "mmw/stats/summary.hpp"
#include "mmw/version.hpp"

#include <json.hpp>

#include <Eigen/Core>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmw::cli {

using nlohmann::json;

/// Process exit status. Each failure class has its own code.
enum class ExitCode : int {
    ok = 0,
    failure = 1,
    usage = 2,
    unknown_preset = 3,
    bad_override = 4,
    config_error = 5,
    unwritable_output = 6,
};

struct RunError : std::runtime_error {
    ExitCode code;
    RunError(ExitCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

enum class Experiment { single, band_sweep, access_compare, outage_compare, pathloss_table };

inline constexpr std::pair<Experiment, std::string_view> kExperimentNames[] = {
    {Experiment::single, "single"},
    {Experiment::band_sweep, "band_sweep"},
    {Experiment::access_compare, "access_compare"},
    {Experiment::outage_compare, "outage_compare"},
    {Experiment::pathloss_table, "pathloss_table"},
};

inline std::string_view experiment_name(Experiment e)
{
    for (const auto& [k, name] : kExperimentNames)
        if (k == e)
            return name;
    return "?";
}

inline std::optional<Experiment> parse_experiment(std::string_view name)
{
    for (const auto& [k, n] : kExperimentNames)
        if (n == name)
            return k;
    return std::nullopt;
}

/// Everything needed to reproduce a run.
struct RunSpec {
    std::string preset = "nyc28_4x4";
    std::filesystem::path config_path; // optional scenario JSON layered on the preset
    std::vector<std::string> overrides; // dotted key=value, applied last
    int n_drops = 100;
    std::uint64_t master_seed = 1;
    std::filesystem::path out_dir = "mmwsim_out";
    Experiment experiment = Experiment::single;
    unsigned threads = 0; // 0: hardware concurrency; never affects results
    /// Resolved runs taken from a manifest instead of preset/config/overrides.
    std::optional<json> replay_runs;
};

/// One scenario to simulate inside an experiment.
struct PlannedRun {
    std::string label;
    std::string preset; // base preset, empty when unknown
    json effective_config;
    net::NetworkScenario scenario;
    std::string config_hash;
};

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string config_hash(const json& config)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(config.dump())));
    return buf;
}

namespace detail {

inline json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw RunError(ExitCode::config_error, "cannot read config file '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw RunError(ExitCode::config_error, "config file '" + path.string() + "': " + e.what());
    }
}

inline net::NetworkScenario checked_preset(std::string_view name)
{
    if (!net::is_preset(name))
        throw RunError(ExitCode::unknown_preset, "unknown preset '" + std::string(name) +
                                                     "' (expected nyc28_4x4, nyc28_8x8, nyc73_4x4 or nyc73_8x8)");
    return net::preset(name);
}

inline PlannedRun finish_run(std::string label, std::string preset, const json& config)
{
    PlannedRun r;
    r.label = std::move(label);
    r.preset = std::move(preset);
    try {
        r.scenario = io::scenario_from_json(config);
    } catch (const std::exception& e) {
        throw RunError(ExitCode::config_error, r.label + ": " + e.what());
    }
    r.effective_config = r.scenario; // canonical form
    r.config_hash = config_hash(r.effective_config);
    return r;
}

} // namespace detail

/// preset, then the config file, then the overrides, as a JSON object.
inline json layered_config(const RunSpec& spec, std::string_view preset)
{
    json config = detail::checked_preset(preset);
    if (!spec.config_path.empty()) {
        json file = detail::read_json_file(spec.config_path);
        if (!file.is_object())
            throw RunError(ExitCode::config_error, "config file must hold a JSON object");
        file.erase("preset");
        config.merge_patch(file);
    }
    for (const auto& o : spec.overrides) {
        try {
            io::apply_override(config, o);
        } catch (const io::OverrideError& e) {
            throw RunError(ExitCode::bad_override, e.what());
        }
    }
    return config;
}

/// Base preset of a spec: the config file's "preset" key wins over --preset.
inline std::string base_preset(const RunSpec& spec)
{
    if (!spec.config_path.empty()) {
        const json file = detail::read_json_file(spec.config_path);
        if (file.is_object() && file.contains("preset")) {
            if (!file["preset"].is_string())
                throw RunError(ExitCode::config_error, "config file: 'preset' must be a string");
            return file["preset"].get<std::string>();
        }
    }
    return spec.preset;
}

/// Resolves a spec into the scenarios its experiment runs.
inline std::vector<PlannedRun> plan(const RunSpec& spec)
{
    if (spec.n_drops < 1)
        throw RunError(ExitCode::usage, "number of drops must be >= 1");

    std::vector<PlannedRun> runs;
    if (spec.replay_runs) {
        if (!spec.replay_runs->is_array())
            throw RunError(ExitCode::config_error, "manifest: 'runs' must be an array");
        for (const auto& r : *spec.replay_runs) {
            if (!r.is_object() || !r.contains("label") || !r.contains("effective_config"))
                throw RunError(ExitCode::config_error, "manifest: malformed run entry");
            runs.push_back(detail::finish_run(r["label"].get<std::string>(), r.value("preset", std::string{}),
                                              r["effective_config"]));
        }
        return runs;
    }

    const std::string preset = base_preset(spec);
    auto variant = [&](std::string label, const char* assignment) {
        json config = layered_config(spec, preset);
        io::apply_override(config, assignment);
        runs.push_back(detail::finish_run(std::move(label), preset, config));
    };

    switch (spec.experiment) {
    case Experiment::single:
    case Experiment::pathloss_table:
        runs.push_back(detail::finish_run(preset, preset, layered_config(spec, preset)));
        break;
    case Experiment::band_sweep:
        for (auto p : net::kPresetNames)
            runs.push_back(detail::finish_run(std::string(p), std::string(p), layered_config(spec, p)));
        break;
    case Experiment::access_compare:
        variant("tdma", "uplink_access=\"tdma\"");
        variant("fdma", "uplink_access=\"fdma\"");
        break;
    case Experiment::outage_compare:
        variant("hard", "outage.kind=\"hard_threshold\"");
        variant("soft", "outage.kind=\"soft_curve\"");
        break;
    }
    return runs;
}

inline json manifest_json(const RunSpec& spec, const std::vector<PlannedRun>& runs)
{
    json run_list = json::array();
    json hashes = json::array();
    for (const auto& r : runs) {
        run_list.push_back({{"label", r.label},
                            {"preset", r.preset},
                            {"config_hash", r.config_hash},
                            {"effective_config", r.effective_config}});
        hashes.push_back(r.config_hash);
    }
    json m = {{"tool", "mmwsim"},
              {"version", kVersion},
              {"experiment", experiment_name(spec.experiment)},
              {"n_drops", spec.n_drops},
              {"master_seed", spec.master_seed},
              {"config_hash", config_hash(hashes)},
              {"overrides", spec.overrides},
              {"runs", std::move(run_list)},
              {"libraries",
               {{"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION)},
                {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                      std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                      std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}}};
    m["preset"] = spec.replay_runs ? spec.preset : base_preset(spec);
    m["config_path"] = spec.config_path.generic_string();
    return m;
}

/// Spec that re-runs a manifest written by execute().
inline RunSpec spec_from_manifest(const json& manifest, std::filesystem::path out_dir)
{
    RunSpec spec;
    try {
        const auto exp = parse_experiment(manifest.at("experiment").get<std::string>());
        if (!exp)
            throw RunError(ExitCode::config_error, "manifest: unknown experiment");
        spec.experiment = *exp;
        spec.n_drops = manifest.at("n_drops").get<int>();
        spec.master_seed = manifest.at("master_seed").get<std::uint64_t>();
        spec.overrides = manifest.value("overrides", std::vector<std::string>{});
        spec.preset = manifest.value("preset", spec.preset);
        spec.config_path = manifest.value("config_path", std::string{});
        spec.replay_runs = manifest.at("runs");
    } catch (const json::exception& e) {
        throw RunError(ExitCode::config_error, std::string("manifest: ") + e.what());
    }
    spec.out_dir = std::move(out_dir);
    return spec;
}

inline RunSpec spec_from_manifest_file(const std::filesystem::path& path, std::filesystem::path out_dir)
{
    return spec_from_manifest(detail::read_json_file(path), std::move(out_dir));
}

namespace detail {

inline void ensure_directory(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw RunError(ExitCode::unwritable_output, "cannot create output directory '" + dir.string() + "'");
}

inline void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out)
        throw RunError(ExitCode::unwritable_output, "cannot write '" + path.string() + "'");
}

/// Median path loss of the measured fits, free space and the UMi reference
/// over 10 m to 500 m.
inline std::string pathloss_table_csv()
{
    const auto b28 = channel::nyc_28ghz();
    const auto b73 = channel::nyc_73ghz();
    std::string out = "distance_m,nlos_28ghz_db,nlos_73ghz_db,friis_28ghz_db,friis_73ghz_db,umi_2p5ghz_db,"
                      "gap_28ghz_vs_umi_db\n";
    for (int d = 10; d <= 500; d += 10) {
        const double dm = d;
        const double nlos28 = channel::median_nlos_path_loss(dm, b28);
        const double umi = channel::umi_path_loss(dm, 2.5);
        out += std::to_string(d) + "," + io::format_number(nlos28) + "," +
               io::format_number(channel::median_nlos_path_loss(dm, b73)) + "," +
               io::format_number(channel::friis_path_loss(dm, 28.0)) + "," +
               io::format_number(channel::friis_path_loss(dm, 73.0)) + "," + io::format_number(umi) + "," +
               io::format_number(nlos28 - umi) + "\n";
    }
    return out;
}

} // namespace detail

/// Artifacts of one executed spec.
struct RunReport {
    json summary;
    json manifest;
    std::vector<std::filesystem::path> files;
};

/// Runs the experiment and writes its artifacts. All runs of an experiment
/// share the master seed, so variants see common random numbers. Output
/// bytes depend only on the manifest, never on `threads`.
inline RunReport execute(const RunSpec& spec, std::ostream* log = nullptr)
{
    const auto runs = plan(spec);
    RunReport report;
    report.manifest = manifest_json(spec, runs);
    detail::ensure_directory(spec.out_dir);

    auto emit = [&](const std::filesystem::path& path, const std::string& content) {
        detail::write_file(path, content);
        report.files.push_back(path);
    };

    report.summary = {{"experiment", experiment_name(spec.experiment)},
                      {"n_drops", spec.n_drops},
                      {"master_seed", spec.master_seed},
                      {"config_hash", report.manifest["config_hash"]}};

    if (spec.experiment == Experiment::pathloss_table) {
        emit(spec.out_dir / "pathloss_table.csv", detail::pathloss_table_csv());
    } else {
        const bool nested = runs.size() > 1;
        json summaries = json::array();
        std::vector<stats::CapacitySummary> figures;
        for (const auto& r : runs) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto campaign = net::run_campaign(r.scenario, spec.n_drops, spec.master_seed, spec.threads);
            const auto pooled = campaign.pooled_ues();
            const auto summary = stats::summarize(campaign, r.scenario, r.label);
            figures.push_back(summary);

            json s = io::summary_json(summary, pooled, r.preset);
            s["config_hash"] = r.config_hash;
            s["rate_map"] = r.scenario.rate_map;
            summaries.push_back(std::move(s));

            const auto dir = nested ? spec.out_dir / r.label : spec.out_dir;
            detail::ensure_directory(dir);
            if (!pooled.empty())
                for (auto m : stats::kAllMetrics)
                    emit(dir / ("cdf_" + std::string(stats::metric_name(m)) + ".csv"),
                         io::cdf_csv(stats::metric_cdf(pooled, m, r.config_hash)));
            emit(dir / "ue_samples.csv", io::ue_samples_csv(campaign));

            if (log) {
                const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                *log << r.label << ": " << spec.n_drops << " drops in " << secs << " s, DL "
                     << summary.dl.capacity_mbps << " Mbps / edge " << summary.dl.edge_rate_mbps << " Mbps, UL "
                     << summary.ul.capacity_mbps << " Mbps / edge " << summary.ul.edge_rate_mbps << " Mbps\n";
            }
        }
        report.summary["runs"] = std::move(summaries);

        auto ratio = [](double num, double den) { return den > 0.0 ? json(num / den) : json(nullptr); };
        if (spec.experiment == Experiment::access_compare) {
            const auto& tdma = figures[0].ul;
            const auto& fdma = figures[1].ul;
            report.summary["comparison"] = {
                {"ul_edge_ratio_fdma_over_tdma", ratio(fdma.edge_rate_mbps, tdma.edge_rate_mbps)},
                {"ul_capacity_ratio_fdma_over_tdma", ratio(fdma.capacity_mbps, tdma.capacity_mbps)}};
        } else if (spec.experiment == Experiment::outage_compare) {
            const auto& hard = figures[0];
            const auto& soft = figures[1];
            auto change = [&](double s, double h) { return h > 0.0 ? json(s / h - 1.0) : json(nullptr); };
            report.summary["comparison"] = {
                {"dl_capacity_change", change(soft.dl.capacity_mbps, hard.dl.capacity_mbps)},
                {"ul_capacity_change", change(soft.ul.capacity_mbps, hard.ul.capacity_mbps)},
                {"dl_edge_change", change(soft.dl.edge_rate_mbps, hard.dl.edge_rate_mbps)},
                {"ul_edge_change", change(soft.ul.edge_rate_mbps, hard.ul.edge_rate_mbps)}};
        }
        emit(spec.out_dir / "summary.json", report.summary.dump(2) + "\n");
    }
    emit(spec.out_dir / "manifest.json", report.manifest.dump(2) + "\n");
    return report;
}

/// execute() with every failure mapped to its exit code and reported on `err`.
inline ExitCode run(const RunSpec& spec, std::ostream& err, std::ostream* log = nullptr)
{
    try {
        execute(spec, log);
        return ExitCode::ok;
    } catch (const RunError& e) {
        err << "mmwsim: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        err << "mmwsim: " << e.what() << "\n";
        return ExitCode::failure;
    }
}

} // namespace mmw::cli
