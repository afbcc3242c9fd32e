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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mmw {

inline constexpr double kSpeedOfLight = 2.99792458e8;       // m/s
inline constexpr double kThermalNoiseDbmPerHz = -174.0;     // kT at 290 K
inline constexpr double kPi = std::numbers::pi;

inline double db_to_linear(double db) { return std::pow(10.0, 0.1 * db); }

/// Returns -inf for a zero power ratio.
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Wraps an azimuth in degrees into [-180, 180).
inline double wrap_azimuth_deg(double az)
{
    double w = std::fmod(az + 180.0, 360.0);
    if (w < 0.0)
        w += 360.0;
    return w - 180.0;
}

inline double clamp_elevation_deg(double el)
{
    return el < -90.0 ? -90.0 : (el > 90.0 ? 90.0 : el);
}

inline double wavelength_m(double carrier_frequency_ghz)
{
    return kSpeedOfLight / (carrier_frequency_ghz * 1e9);
}

/// Thermal noise power in dBm over a bandwidth with the given noise figure.
inline double thermal_noise_dbm(double bandwidth_hz, double noise_figure_db)
{
    return kThermalNoiseDbmPerHz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

namespace detail {

inline void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error(std::string(what) + " must be positive and finite");
}

} // namespace detail
} // namespace mmw
