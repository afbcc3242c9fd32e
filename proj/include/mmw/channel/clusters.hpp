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
#include "mmw/core/random.hpp"
#include "mmw/core/units.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace mmw::channel {

/// One ray inside a cluster. Offsets are relative to the cluster centre.
struct Subpath {
    double bs_azimuth_offset_deg = 0.0;
    double bs_elevation_offset_deg = 0.0;
    double ue_azimuth_offset_deg = 0.0;
    double ue_elevation_offset_deg = 0.0;
    double amplitude = 0.0; // linear, equal across the cluster
    double phase_rad = 0.0;
};

struct Cluster {
    double power_fraction = 0.0; // linear
    double bs_central_azimuth_deg = 0.0;
    double bs_central_elevation_deg = 0.0;
    double ue_central_azimuth_deg = 0.0;
    double ue_central_elevation_deg = 0.0;
    double bs_azimuth_spread_deg = 0.0;
    double bs_elevation_spread_deg = 0.0;
    double ue_azimuth_spread_deg = 0.0;
    double ue_elevation_spread_deg = 0.0;
    std::vector<Subpath> subpaths;

    bool is_point() const
    {
        return bs_azimuth_spread_deg == 0.0 && bs_elevation_spread_deg == 0.0 &&
               ue_azimuth_spread_deg == 0.0 && ue_elevation_spread_deg == 0.0;
    }
};

/// Central-angle law for clusters. Azimuths are uniform on [-180, 180) at
/// both ends; BS elevation is fixed, UE elevation is uniform on a band.
struct ClusterAngleConfig {
    double bs_elevation_deg = 0.0;
    double ue_elevation_min_deg = -10.0;
    double ue_elevation_max_deg = 10.0;

    void validate() const
    {
        if (!(ue_elevation_min_deg <= ue_elevation_max_deg) || ue_elevation_min_deg < -90.0 ||
            ue_elevation_max_deg > 90.0 || std::abs(bs_elevation_deg) > 90.0)
            throw std::invalid_argument("ClusterAngleConfig: elevations must lie in [-90, 90] with min <= max");
    }

    friend bool operator==(const ClusterAngleConfig&, const ClusterAngleConfig&) = default;
};

/// K = max(Poisson(lambda), 1).
template <class Rng>
int sample_cluster_count(const BandParams& band, Rng& rng)
{
    if (!(band.cluster_rate > 0.0))
        throw std::domain_error("cluster_rate must be > 0");
    const int k = std::poisson_distribution<int>(band.cluster_rate)(rng);
    return std::max(k, 1);
}

/// gamma'_k = U_k^(r_tau - 1) 10^(-0.1 Z_k), normalised to sum to one.
template <class Rng>
std::vector<double> sample_power_fractions(int k, const BandParams& band, Rng& rng)
{
    if (k < 1)
        throw std::domain_error("cluster count must be >= 1");
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> shadow(0.0, 1.0);

    std::vector<double> gamma(static_cast<std::size_t>(k));
    for (auto& g : gamma) {
        const double u = uniform(rng);
        const double z = band.power_shadow_std_db * shadow(rng);
        g = std::pow(u, band.power_delay_exponent - 1.0) * std::pow(10.0, -0.1 * z);
    }
    const double total = std::accumulate(gamma.begin(), gamma.end(), 0.0);
    if (!(total > 0.0)) {
        // Every U_k was exactly zero; fall back to equal shares.
        std::fill(gamma.begin(), gamma.end(), 1.0 / k);
        return gamma;
    }
    for (auto& g : gamma)
        g /= total;
    return gamma;
}

namespace detail {

template <class Rng>
double sample_spread(double mean_deg, Rng& rng)
{
    if (mean_deg <= 0.0)
        return 0.0;
    return std::exponential_distribution<double>(1.0 / mean_deg)(rng);
}

// n zero-mean Laplacian offsets rescaled so their rms equals `rms_deg`.
template <class Rng>
std::vector<double> laplacian_offsets(std::size_t n, double rms_deg, Rng& rng)
{
    std::vector<double> x(n, 0.0);
    if (rms_deg <= 0.0 || n < 2)
        return x;
    for (auto& v : x)
        v = sample_laplacian(rng);
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (auto& v : x) {
        v -= mean;
        ss += v * v;
    }
    const double rms = std::sqrt(ss / static_cast<double>(n));
    if (rms > 0.0)
        for (auto& v : x)
            v *= rms_deg / rms;
    return x;
}

} // namespace detail

/// Central angles and rms spreads for K clusters. Power fractions and
/// subpaths are left empty.
template <class Rng>
std::vector<Cluster> sample_cluster_geometry(int k, const BandParams& band, const ClusterAngleConfig& angles,
                                             Rng& rng)
{
    if (k < 1)
        throw std::domain_error("cluster count must be >= 1");
    std::uniform_real_distribution<double> azimuth(-180.0, 180.0);
    std::vector<Cluster> out(static_cast<std::size_t>(k));
    for (auto& c : out) {
        c.bs_central_azimuth_deg = azimuth(rng);
        c.ue_central_azimuth_deg = azimuth(rng);
        c.bs_central_elevation_deg = angles.bs_elevation_deg;
        c.ue_central_elevation_deg =
            angles.ue_elevation_min_deg == angles.ue_elevation_max_deg
                ? angles.ue_elevation_min_deg
                : std::uniform_real_distribution<double>(angles.ue_elevation_min_deg, angles.ue_elevation_max_deg)(rng);
        c.bs_azimuth_spread_deg = detail::sample_spread(band.bs_azimuth_spread_mean_deg, rng);
        c.bs_elevation_spread_deg = detail::sample_spread(band.bs_elevation_spread_mean_deg, rng);
        c.ue_azimuth_spread_deg = detail::sample_spread(band.ue_azimuth_spread_mean_deg, rng);
        c.ue_elevation_spread_deg = detail::sample_spread(band.ue_elevation_spread_mean_deg, rng);
    }
    return out;
}

/// Fills `cluster.subpaths`. A cluster with no angular spread at either end is
/// a single ray; otherwise `n` equal-amplitude rays with Laplacian angle
/// offsets whose rms matches the cluster spreads, and i.i.d. uniform phases.
template <class Rng>
void synthesize_subpaths(Cluster& cluster, int n, Rng& rng)
{
    if (n < 1)
        throw std::domain_error("subpaths per cluster must be >= 1");
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const std::size_t count = cluster.is_point() ? 1 : static_cast<std::size_t>(n);

    const auto bs_az = detail::laplacian_offsets(count, cluster.bs_azimuth_spread_deg, rng);
    const auto bs_el = detail::laplacian_offsets(count, cluster.bs_elevation_spread_deg, rng);
    const auto ue_az = detail::laplacian_offsets(count, cluster.ue_azimuth_spread_deg, rng);
    const auto ue_el = detail::laplacian_offsets(count, cluster.ue_elevation_spread_deg, rng);

    const double amplitude = std::sqrt(cluster.power_fraction / static_cast<double>(count));
    cluster.subpaths.resize(count);
    for (std::size_t m = 0; m < count; ++m) {
        auto& s = cluster.subpaths[m];
        s.bs_azimuth_offset_deg = bs_az[m];
        s.bs_elevation_offset_deg = bs_el[m];
        s.ue_azimuth_offset_deg = ue_az[m];
        s.ue_elevation_offset_deg = ue_el[m];
        s.amplitude = amplitude;
        s.phase_rad = phase(rng);
    }
}

} // namespace mmw::channel
