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
#include "mmw/channel/link_state.hpp"
#include "mmw/core/units.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mmw::channel {

/// Distance range over which the floating-intercept fit was estimated.
inline constexpr double kFitRangeMinM = 30.0;
inline constexpr double kFitRangeMaxM = 200.0;

inline bool within_fit_range(double distance_m)
{
    return distance_m >= kFitRangeMinM && distance_m <= kFitRangeMaxM;
}

/// Median NLOS path loss, alpha + beta * 10 log10(d). No shadowing.
inline double median_nlos_path_loss(double distance_m, const BandParams& band)
{
    mmw::detail::require_positive(distance_m, "distance");
    return band.pl_intercept_db + band.pl_slope * 10.0 * std::log10(distance_m);
}

/// Free-space (Friis) path loss with isotropic antennas.
inline double friis_path_loss(double distance_m, double carrier_frequency_ghz)
{
    mmw::detail::require_positive(distance_m, "distance");
    mmw::detail::require_positive(carrier_frequency_ghz, "carrier frequency");
    return 20.0 * std::log10(4.0 * kPi * distance_m * carrier_frequency_ghz * 1e9 / kSpeedOfLight);
}

/// 3GPP urban micro (hexagonal deployment) NLOS path loss.
inline double umi_path_loss(double distance_m, double carrier_frequency_ghz)
{
    mmw::detail::require_positive(distance_m, "distance");
    mmw::detail::require_positive(carrier_frequency_ghz, "carrier frequency");
    return 22.7 + 36.7 * std::log10(distance_m) + 26.0 * std::log10(carrier_frequency_ghz);
}

/// NLOS links get the median fit plus lognormal shadowing; LOS links follow
/// free space with no shadowing.
template <class Rng>
double sample_path_loss(double distance_m, LinkState state, const BandParams& band, Rng& rng)
{
    switch (state) {
    case LinkState::los:
        return friis_path_loss(distance_m, band.carrier_frequency_ghz);
    case LinkState::nlos: {
        const double median = median_nlos_path_loss(distance_m, band);
        if (band.shadow_std_db == 0.0)
            return median;
        return median + std::normal_distribution<double>(0.0, band.shadow_std_db)(rng);
    }
    case LinkState::outage:
        break;
    }
    throw std::logic_error("sample_path_loss: outage links carry no path loss");
}

} // namespace mmw::channel
