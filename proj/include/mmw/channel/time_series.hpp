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

#include "mmw/channel/clusters.hpp"
#include "mmw/core/units.hpp"

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace mmw::channel {

/// Within-cluster gain g_k(t): the coherent sum of the cluster's subpath
/// phasors, each rotating at the Doppler offset of its arrival angle relative
/// to the cluster centre. A cluster without subpaths is a single ray of power
/// `power_fraction` at the centre angle.
inline std::complex<double> cluster_gain(const Cluster& cluster, double max_doppler_hz, double t)
{
    const double centre = deg_to_rad(cluster.ue_central_azimuth_deg);
    if (cluster.subpaths.empty())
        return {std::sqrt(cluster.power_fraction), 0.0};
    std::complex<double> g{0.0, 0.0};
    for (const auto& s : cluster.subpaths) {
        const double theta = centre + deg_to_rad(s.ue_azimuth_offset_deg);
        const double shift = max_doppler_hz * (std::cos(theta) - std::cos(centre));
        g += std::polar(s.amplitude, s.phase_rad + 2.0 * kPi * shift * t);
    }
    return g;
}

/// Narrowband response h(t) = sum_k g_k(t) exp(2 pi i f_d cos(theta_k) t),
/// theta_k being the cluster's central arrival azimuth.
inline std::vector<std::complex<double>> narrowband_time_series(std::span<const Cluster> clusters,
                                                                double max_doppler_hz,
                                                                std::span<const double> times)
{
    if (clusters.empty())
        throw std::domain_error("narrowband_time_series: at least one cluster is required");
    if (!std::isfinite(max_doppler_hz))
        throw std::domain_error("narrowband_time_series: Doppler must be finite");
    std::vector<std::complex<double>> h;
    h.reserve(times.size());
    for (const double t : times) {
        if (!std::isfinite(t))
            throw std::domain_error("narrowband_time_series: non-finite time");
        std::complex<double> sum{0.0, 0.0};
        for (const auto& c : clusters) {
            const double carrier = max_doppler_hz * std::cos(deg_to_rad(c.ue_central_azimuth_deg));
            sum += cluster_gain(c, max_doppler_hz, t) * std::polar(1.0, 2.0 * kPi * carrier * t);
        }
        h.push_back(sum);
    }
    return h;
}

} // namespace mmw::channel
