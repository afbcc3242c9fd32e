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

#include <stdexcept>
#include <string>

namespace mmw::channel {

/// Statistical parameters of the omnidirectional channel model for one
/// carrier band. Angular spreads are the means of exponentially distributed
/// per-cluster rms spreads.
struct BandParams {
    double carrier_frequency_ghz = 28.0;
    double pl_intercept_db = 72.0;
    double pl_slope = 2.92;
    double shadow_std_db = 8.7;
    double cluster_rate = 1.8;
    double power_delay_exponent = 2.8;
    double power_shadow_std_db = 4.0;
    double bs_azimuth_spread_mean_deg = 10.2;
    double bs_elevation_spread_mean_deg = 0.0;
    double ue_azimuth_spread_mean_deg = 15.5;
    double ue_elevation_spread_mean_deg = 6.0;

    void validate() const
    {
        auto fail = [](const std::string& msg) { throw std::invalid_argument("BandParams: " + msg); };
        if (!(carrier_frequency_ghz > 0.0))
            fail("carrier_frequency_ghz must be > 0");
        if (!(pl_slope > 0.0))
            fail("pl_slope must be > 0");
        if (!(shadow_std_db >= 0.0))
            fail("shadow_std_db must be >= 0");
        if (!(cluster_rate > 0.0))
            fail("cluster_rate must be > 0");
        if (!(power_delay_exponent >= 1.0))
            fail("power_delay_exponent must be >= 1");
        if (!(power_shadow_std_db >= 0.0))
            fail("power_shadow_std_db must be >= 0");
        if (!(bs_azimuth_spread_mean_deg >= 0.0) || !(bs_elevation_spread_mean_deg >= 0.0) ||
            !(ue_azimuth_spread_mean_deg >= 0.0) || !(ue_elevation_spread_mean_deg >= 0.0))
            fail("angular spread means must be >= 0");
    }

    friend bool operator==(const BandParams&, const BandParams&) = default;
};

/// New York City measurements, 28 GHz.
inline BandParams nyc_28ghz()
{
    return BandParams{28.0, 72.0, 2.92, 8.7, 1.8, 2.8, 4.0, 10.2, 0.0, 15.5, 6.0};
}

/// New York City measurements, 73 GHz.
inline BandParams nyc_73ghz()
{
    return BandParams{73.0, 86.6, 2.45, 8.0, 1.9, 3.0, 4.0, 10.5, 0.0, 15.4, 3.5};
}

} // namespace mmw::channel
