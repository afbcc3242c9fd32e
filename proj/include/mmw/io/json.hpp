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

#include "mmw/arrays/array_geometry.hpp"
#include "mmw/channel/band_params.hpp"
#include "mmw/channel/channel.hpp"
#include "mmw/channel/clusters.hpp"
#include "mmw/channel/link_state.hpp"
#include "mmw/net/scenario.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mmw::io {

using nlohmann::json;

/// Malformed or inconsistent configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A `key=value` override that cannot be parsed or applied.
struct OverrideError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_object(const json& j, std::string_view what)
{
    if (!j.is_object())
        throw ConfigError(std::string(what) + ": expected a JSON object");
}

/// Rejects keys outside `allowed` so that typos fail loudly.
inline void check_keys(const json& j, std::string_view what, std::initializer_list<std::string_view> allowed)
{
    require_object(j, what);
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (auto a : allowed)
            ok = ok || key == a;
        if (!ok)
            throw ConfigError(std::string(what) + ": unknown key '" + key + "'");
    }
}

/// Assigns j[key] to `field` when present; absent keys keep their value.
template <class T>
void read(const json& j, const char* key, T& field, std::string_view what)
{
    const auto it = j.find(key);
    if (it == j.end())
        return;
    try {
        it->get_to(field);
    } catch (const json::exception& e) {
        throw ConfigError(std::string(what) + "." + key + ": " + e.what());
    }
}

template <class E, std::size_t N>
E enum_from(const json& j, const std::pair<E, std::string_view> (&table)[N], std::string_view what)
{
    if (!j.is_string())
        throw ConfigError(std::string(what) + ": expected a string");
    const auto s = j.get<std::string>();
    for (const auto& [e, name] : table)
        if (name == s)
            return e;
    throw ConfigError(std::string(what) + ": unknown value '" + s + "'");
}

template <class E, std::size_t N>
std::string enum_to(E e, const std::pair<E, std::string_view> (&table)[N])
{
    for (const auto& [v, name] : table)
        if (v == e)
            return std::string(name);
    return "?";
}

inline constexpr std::pair<channel::OutageModel::Kind, std::string_view> kOutageKinds[] = {
    {channel::OutageModel::Kind::hard_threshold, "hard_threshold"},
    {channel::OutageModel::Kind::soft_curve, "soft_curve"}};
inline constexpr std::pair<channel::LosModel::Kind, std::string_view> kLosKinds[] = {
    {channel::LosModel::Kind::nlos_only, "nlos_only"}, {channel::LosModel::Kind::umi, "umi"}};
inline constexpr std::pair<net::UplinkAccess, std::string_view> kAccessKinds[] = {
    {net::UplinkAccess::tdma, "tdma"}, {net::UplinkAccess::fdma, "fdma"}};

} // namespace detail
} // namespace mmw::io

namespace mmw::channel {

inline void to_json(nlohmann::json& j, const BandParams& b)
{
    j = {{"carrier_frequency_ghz", b.carrier_frequency_ghz},
         {"pl_intercept_db", b.pl_intercept_db},
         {"pl_slope", b.pl_slope},
         {"shadow_std_db", b.shadow_std_db},
         {"cluster_rate", b.cluster_rate},
         {"power_delay_exponent", b.power_delay_exponent},
         {"power_shadow_std_db", b.power_shadow_std_db},
         {"bs_azimuth_spread_mean_deg", b.bs_azimuth_spread_mean_deg},
         {"bs_elevation_spread_mean_deg", b.bs_elevation_spread_mean_deg},
         {"ue_azimuth_spread_mean_deg", b.ue_azimuth_spread_mean_deg},
         {"ue_elevation_spread_mean_deg", b.ue_elevation_spread_mean_deg}};
}

inline void from_json(const nlohmann::json& j, BandParams& b)
{
    using io::detail::read;
    constexpr std::string_view w = "band";
    io::detail::check_keys(j, w,
                           {"carrier_frequency_ghz", "pl_intercept_db", "pl_slope", "shadow_std_db", "cluster_rate",
                            "power_delay_exponent", "power_shadow_std_db", "bs_azimuth_spread_mean_deg",
                            "bs_elevation_spread_mean_deg", "ue_azimuth_spread_mean_deg",
                            "ue_elevation_spread_mean_deg"});
    read(j, "carrier_frequency_ghz", b.carrier_frequency_ghz, w);
    read(j, "pl_intercept_db", b.pl_intercept_db, w);
    read(j, "pl_slope", b.pl_slope, w);
    read(j, "shadow_std_db", b.shadow_std_db, w);
    read(j, "cluster_rate", b.cluster_rate, w);
    read(j, "power_delay_exponent", b.power_delay_exponent, w);
    read(j, "power_shadow_std_db", b.power_shadow_std_db, w);
    read(j, "bs_azimuth_spread_mean_deg", b.bs_azimuth_spread_mean_deg, w);
    read(j, "bs_elevation_spread_mean_deg", b.bs_elevation_spread_mean_deg, w);
    read(j, "ue_azimuth_spread_mean_deg", b.ue_azimuth_spread_mean_deg, w);
    read(j, "ue_elevation_spread_mean_deg", b.ue_elevation_spread_mean_deg, w);
}

inline void to_json(nlohmann::json& j, const OutageModel& m)
{
    j = {{"kind", io::detail::enum_to(m.kind, io::detail::kOutageKinds)},
         {"threshold_m", m.threshold_m},
         {"soft_a", m.soft_a},
         {"soft_b", m.soft_b}};
}

inline void from_json(const nlohmann::json& j, OutageModel& m)
{
    constexpr std::string_view w = "outage";
    io::detail::check_keys(j, w, {"kind", "threshold_m", "soft_a", "soft_b"});
    if (j.contains("kind"))
        m.kind = io::detail::enum_from(j.at("kind"), io::detail::kOutageKinds, "outage.kind");
    io::detail::read(j, "threshold_m", m.threshold_m, w);
    io::detail::read(j, "soft_a", m.soft_a, w);
    io::detail::read(j, "soft_b", m.soft_b, w);
}

inline void to_json(nlohmann::json& j, const LosModel& m)
{
    j = {{"kind", io::detail::enum_to(m.kind, io::detail::kLosKinds)}, {"breakpoint_m", m.breakpoint_m}};
}

inline void from_json(const nlohmann::json& j, LosModel& m)
{
    io::detail::check_keys(j, "los", {"kind", "breakpoint_m"});
    if (j.contains("kind"))
        m.kind = io::detail::enum_from(j.at("kind"), io::detail::kLosKinds, "los.kind");
    io::detail::read(j, "breakpoint_m", m.breakpoint_m, "los");
}

inline void to_json(nlohmann::json& j, const ClusterAngleConfig& a)
{
    j = {{"bs_elevation_deg", a.bs_elevation_deg},
         {"ue_elevation_min_deg", a.ue_elevation_min_deg},
         {"ue_elevation_max_deg", a.ue_elevation_max_deg}};
}

inline void from_json(const nlohmann::json& j, ClusterAngleConfig& a)
{
    constexpr std::string_view w = "angles";
    io::detail::check_keys(j, w, {"bs_elevation_deg", "ue_elevation_min_deg", "ue_elevation_max_deg"});
    io::detail::read(j, "bs_elevation_deg", a.bs_elevation_deg, w);
    io::detail::read(j, "ue_elevation_min_deg", a.ue_elevation_min_deg, w);
    io::detail::read(j, "ue_elevation_max_deg", a.ue_elevation_max_deg, w);
}

inline void to_json(nlohmann::json& j, const Subpath& s)
{
    j = {{"bs_azimuth_offset_deg", s.bs_azimuth_offset_deg},
         {"bs_elevation_offset_deg", s.bs_elevation_offset_deg},
         {"ue_azimuth_offset_deg", s.ue_azimuth_offset_deg},
         {"ue_elevation_offset_deg", s.ue_elevation_offset_deg},
         {"amplitude", s.amplitude},
         {"phase_rad", s.phase_rad}};
}

inline void to_json(nlohmann::json& j, const Cluster& c)
{
    j = {{"power_fraction", c.power_fraction},
         {"bs_azimuth_deg", c.bs_central_azimuth_deg},
         {"bs_elevation_deg", c.bs_central_elevation_deg},
         {"ue_azimuth_deg", c.ue_central_azimuth_deg},
         {"ue_elevation_deg", c.ue_central_elevation_deg},
         {"bs_azimuth_spread_deg", c.bs_azimuth_spread_deg},
         {"bs_elevation_spread_deg", c.bs_elevation_spread_deg},
         {"ue_azimuth_spread_deg", c.ue_azimuth_spread_deg},
         {"ue_elevation_spread_deg", c.ue_elevation_spread_deg},
         {"subpaths", c.subpaths}};
}

} // namespace mmw::channel

namespace mmw::arrays {

inline void to_json(nlohmann::json& j, const ArrayGeometry& g)
{
    j = {{"rows", g.rows}, {"cols", g.cols}, {"spacing_wavelengths", g.spacing_wavelengths}};
}

inline void from_json(const nlohmann::json& j, ArrayGeometry& g)
{
    constexpr std::string_view w = "array";
    io::detail::check_keys(j, w, {"rows", "cols", "spacing_wavelengths"});
    io::detail::read(j, "rows", g.rows, w);
    io::detail::read(j, "cols", g.cols, w);
    io::detail::read(j, "spacing_wavelengths", g.spacing_wavelengths, w);
}

} // namespace mmw::arrays

namespace mmw::net {

inline void to_json(nlohmann::json& j, const RateMap& r)
{
    j = {{"loss_factor_db", r.loss_factor_db}, {"max_spectral_efficiency", r.max_spectral_efficiency}};
}

inline void from_json(const nlohmann::json& j, RateMap& r)
{
    io::detail::check_keys(j, "rate_map", {"loss_factor_db", "max_spectral_efficiency"});
    io::detail::read(j, "loss_factor_db", r.loss_factor_db, "rate_map");
    io::detail::read(j, "max_spectral_efficiency", r.max_spectral_efficiency, "rate_map");
}

inline void to_json(nlohmann::json& j, const NetworkScenario& s)
{
    j = {{"area_m", s.area_m},
         {"isd_m", s.isd_m},
         {"sectors_per_site", s.sectors_per_site},
         {"ues_per_cell_mean", s.ues_per_cell_mean},
         {"dl_tx_power_dbm", s.dl_tx_power_dbm},
         {"ul_tx_power_dbm", s.ul_tx_power_dbm},
         {"bs_noise_figure_db", s.bs_noise_figure_db},
         {"ue_noise_figure_db", s.ue_noise_figure_db},
         {"bandwidth_hz", s.bandwidth_hz},
         {"overhead_fraction", s.overhead_fraction},
         {"dl_duty", s.dl_duty},
         {"band", s.band},
         {"bs_array", s.bs_array},
         {"ue_array", s.ue_array},
         {"outage", s.outage},
         {"los", s.los},
         {"angles", s.angles},
         {"subpaths_per_cluster", s.subpaths_per_cluster},
         {"uplink_access", io::detail::enum_to(s.uplink_access, io::detail::kAccessKinds)},
         {"n_beams", s.n_beams},
         {"sector_mask_db", s.sector_mask_db},
         {"edge_margin_m", s.edge_margin_m},
         {"min_distance_m", s.min_distance_m},
         {"rate_map", s.rate_map}};
}

/// Updates `s` from a possibly partial object; keys not present keep their
/// current values.
inline void from_json(const nlohmann::json& j, NetworkScenario& s)
{
    using io::detail::read;
    constexpr std::string_view w = "scenario";
    io::detail::check_keys(j, w,
                           {"area_m", "isd_m", "sectors_per_site", "ues_per_cell_mean", "dl_tx_power_dbm",
                            "ul_tx_power_dbm", "bs_noise_figure_db", "ue_noise_figure_db", "bandwidth_hz",
                            "overhead_fraction", "dl_duty", "band", "bs_array", "ue_array", "outage", "los",
                            "angles", "subpaths_per_cluster", "uplink_access", "n_beams", "sector_mask_db",
                            "edge_margin_m", "min_distance_m", "rate_map"});
    read(j, "area_m", s.area_m, w);
    read(j, "isd_m", s.isd_m, w);
    read(j, "sectors_per_site", s.sectors_per_site, w);
    read(j, "ues_per_cell_mean", s.ues_per_cell_mean, w);
    read(j, "dl_tx_power_dbm", s.dl_tx_power_dbm, w);
    read(j, "ul_tx_power_dbm", s.ul_tx_power_dbm, w);
    read(j, "bs_noise_figure_db", s.bs_noise_figure_db, w);
    read(j, "ue_noise_figure_db", s.ue_noise_figure_db, w);
    read(j, "bandwidth_hz", s.bandwidth_hz, w);
    read(j, "overhead_fraction", s.overhead_fraction, w);
    read(j, "dl_duty", s.dl_duty, w);
    read(j, "band", s.band, w);
    read(j, "bs_array", s.bs_array, w);
    read(j, "ue_array", s.ue_array, w);
    read(j, "outage", s.outage, w);
    read(j, "los", s.los, w);
    read(j, "angles", s.angles, w);
    read(j, "subpaths_per_cluster", s.subpaths_per_cluster, w);
    if (j.contains("uplink_access"))
        s.uplink_access = io::detail::enum_from(j.at("uplink_access"), io::detail::kAccessKinds, "uplink_access");
    read(j, "n_beams", s.n_beams, w);
    read(j, "sector_mask_db", s.sector_mask_db, w);
    read(j, "edge_margin_m", s.edge_margin_m, w);
    read(j, "min_distance_m", s.min_distance_m, w);
    read(j, "rate_map", s.rate_map, w);
}

} // namespace mmw::net

namespace mmw::io {

/// Scenario from JSON layered over `base`, validated.
inline net::NetworkScenario scenario_from_json(const json& j, net::NetworkScenario base = {})
{
    try {
        from_json(j, base);
        base.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return base;
}

/// Parses the right-hand side of `key=value`. JSON literals keep their type;
/// anything else is taken as a bare string.
inline json parse_override_value(std::string_view text)
{
    json v = json::parse(text, nullptr, false);
    if (v.is_discarded())
        return json(std::string(text));
    return v;
}

/// Applies one dotted-key override, e.g. "band.shadow_std_db=0". The key
/// must already exist in `config` and the new value must have a compatible
/// type (any number may replace any number).
inline void apply_override(json& config, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw OverrideError("override '" + std::string(assignment) + "' is not of the form key=value");
    const std::string_view key = assignment.substr(0, eq);
    const json value = parse_override_value(assignment.substr(eq + 1));

    json* node = &config;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part(key.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
        if (part.empty() || !node->is_object() || !node->contains(part))
            throw OverrideError("override key '" + std::string(key) + "' does not name a configuration field");
        node = &(*node)[part];
        if (dot == std::string_view::npos)
            break;
        start = dot + 1;
    }
    const bool compatible = (node->is_number() && value.is_number()) || (node->is_string() && value.is_string()) ||
                            (node->is_boolean() && value.is_boolean());
    if (!compatible)
        throw OverrideError("override '" + std::string(assignment) + "' has the wrong type for '" +
                            std::string(key) + "' (expected " + node->type_name() + ")");
    if (node->is_number_integer() && !value.is_number_integer())
        throw OverrideError("override '" + std::string(assignment) + "' must be an integer");
    *node = value;
}

/// Complex matrix as {"rows", "cols", "re", "im"} with row-major data.
inline json matrix_to_json(const Eigen::MatrixXcd& m)
{
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline Eigen::MatrixXcd matrix_from_json(const json& j)
{
    detail::check_keys(j, "matrix", {"rows", "cols", "re", "im"});
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (rows < 0 || cols < 0 || re.size() != static_cast<std::size_t>(rows * cols) || im.size() != re.size())
        throw ConfigError("matrix: data size does not match dimensions");
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto k = static_cast<std::size_t>(r * cols + c);
            m(r, c) = {re[k].get<double>(), im[k].get<double>()};
        }
    return m;
}

/// One channel realisation as a trace record. The small-scale matrix is
/// included only when present.
inline json channel_trace(const channel::ChannelRealization& ch)
{
    json j = {{"state", std::string(channel::to_string(ch.state))},
              {"distance_m", ch.distance_m},
              {"outside_fit_range", ch.outside_fit_range},
              {"clusters", ch.clusters}};
    j["path_loss_db"] = ch.path_loss_db ? json(*ch.path_loss_db) : json(nullptr);
    if (ch.small_scale)
        j["small_scale"] = matrix_to_json(*ch.small_scale);
    return j;
}

} // namespace mmw::io
