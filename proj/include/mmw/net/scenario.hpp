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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mmw::net {

enum class UplinkAccess { tdma, fdma };
enum class Direction { downlink, uplink };

/// SINR to spectral efficiency: min(rho_max, log2(1 + SINR / Gamma)).
struct RateMap {
    double loss_factor_db = 3.0;
    double max_spectral_efficiency = 4.8; // bps/Hz

    double spectral_efficiency(double sinr_db) const
    {
        if (std::isnan(sinr_db))
            throw std::domain_error("spectral_efficiency: NaN SINR");
        if (sinr_db == -std::numeric_limits<double>::infinity())
            return 0.0;
        if (sinr_db == std::numeric_limits<double>::infinity())
            return max_spectral_efficiency;
        const double rho = std::log2(1.0 + std::pow(10.0, 0.1 * (sinr_db - loss_factor_db)));
        return std::min(rho, max_spectral_efficiency);
    }

    void validate() const
    {
        if (!(loss_factor_db >= 0.0))
            throw std::invalid_argument("RateMap: loss_factor_db must be >= 0");
        if (!(max_spectral_efficiency > 0.0))
            throw std::invalid_argument("RateMap: max_spectral_efficiency must be > 0");
    }

    friend bool operator==(const RateMap&, const RateMap&) = default;
};

/// Deployment, radio and model settings for one simulated network.
struct NetworkScenario {
    double area_m = 2000.0; // side of the square
    double isd_m = 200.0;
    int sectors_per_site = 3;
    double ues_per_cell_mean = 10.0;
    double dl_tx_power_dbm = 30.0;
    double ul_tx_power_dbm = 20.0;
    double bs_noise_figure_db = 5.0;
    double ue_noise_figure_db = 7.0;
    double bandwidth_hz = 1e9;
    double overhead_fraction = 0.20;
    double dl_duty = 0.5;

    channel::BandParams band = channel::nyc_28ghz();
    arrays::ArrayGeometry bs_array = arrays::ArrayGeometry::square(8);
    arrays::ArrayGeometry ue_array = arrays::ArrayGeometry::square(4);
    channel::OutageModel outage = channel::OutageModel::hard();
    channel::LosModel los = channel::LosModel::nlos_only();
    channel::ClusterAngleConfig angles{};
    int subpaths_per_cluster = 20;
    UplinkAccess uplink_access = UplinkAccess::fdma;

    int n_beams = 2;
    double sector_mask_db = 25.0;
    /// Statistics only count UEs and cells at least this far inside the area.
    double edge_margin_m = 200.0;
    double min_distance_m = 10.0;
    RateMap rate_map{};

    void validate() const
    {
        auto fail = [](const std::string& msg) { throw std::invalid_argument("NetworkScenario: " + msg); };
        if (!(area_m > 0.0))
            fail("area_m must be > 0");
        if (!(isd_m > 0.0))
            fail("isd_m must be > 0");
        if (sectors_per_site < 1)
            fail("sectors_per_site must be >= 1");
        if (!(ues_per_cell_mean >= 0.0))
            fail("ues_per_cell_mean must be >= 0");
        for (double p : {dl_tx_power_dbm, ul_tx_power_dbm, bs_noise_figure_db, ue_noise_figure_db})
            if (!std::isfinite(p))
                fail("powers and noise figures must be finite");
        if (!(bandwidth_hz > 0.0))
            fail("bandwidth_hz must be > 0");
        if (!(overhead_fraction >= 0.0 && overhead_fraction < 1.0))
            fail("overhead_fraction must lie in [0, 1)");
        if (!(dl_duty > 0.0 && dl_duty < 1.0))
            fail("dl_duty must lie in (0, 1)");
        if (n_beams < 1)
            fail("n_beams must be >= 1");
        if (!(sector_mask_db >= 0.0))
            fail("sector_mask_db must be >= 0");
        if (!(edge_margin_m >= 0.0))
            fail("edge_margin_m must be >= 0");
        if (!(min_distance_m > 0.0))
            fail("min_distance_m must be > 0");
        band.validate();
        bs_array.validate();
        ue_array.validate();
        rate_map.validate();
        channel_config().validate();
    }

    channel::ChannelModelConfig channel_config() const
    {
        channel::ChannelModelConfig cfg;
        cfg.outage = outage;
        cfg.los = los;
        cfg.angles = angles;
        cfg.subpaths_per_cluster = subpaths_per_cluster;
        cfg.build_small_scale = false;
        return cfg;
    }
};

inline constexpr std::array<std::string_view, 4> kPresetNames = {"nyc28_4x4", "nyc28_8x8", "nyc73_4x4",
                                                                 "nyc73_8x8"};

/// Default deployment for one band / UE array combination.
inline NetworkScenario preset(std::string_view name)
{
    NetworkScenario s;
    if (name == "nyc28_4x4") {
        s.band = channel::nyc_28ghz();
        s.ue_array = arrays::ArrayGeometry::square(4);
    } else if (name == "nyc28_8x8") {
        s.band = channel::nyc_28ghz();
        s.ue_array = arrays::ArrayGeometry::square(8);
    } else if (name == "nyc73_4x4") {
        s.band = channel::nyc_73ghz();
        s.ue_array = arrays::ArrayGeometry::square(4);
    } else if (name == "nyc73_8x8") {
        s.band = channel::nyc_73ghz();
        s.ue_array = arrays::ArrayGeometry::square(8);
    } else {
        throw std::out_of_range("unknown preset '" + std::string(name) + "'");
    }
    return s;
}

inline bool is_preset(std::string_view name)
{
    return std::find(kPresetNames.begin(), kPresetNames.end(), name) != kPresetNames.end();
}

} // namespace mmw::net
