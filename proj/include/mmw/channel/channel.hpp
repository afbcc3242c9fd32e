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
#include "mmw/channel/clusters.hpp"
#include "mmw/channel/link_state.hpp"
#include "mmw/channel/path_loss.hpp"
#include "mmw/core/units.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace mmw::channel {

/// Everything needed to draw one link realization, apart from the band.
struct ChannelModelConfig {
    OutageModel outage = OutageModel::hard();
    LosModel los = LosModel::umi();
    ClusterAngleConfig angles{};
    int subpaths_per_cluster = 20;
    /// The network simulator only needs the long-term statistics and skips H.
    bool build_small_scale = true;

    void validate() const
    {
        outage.validate();
        los.validate();
        angles.validate();
        if (subpaths_per_cluster < 1)
            throw std::invalid_argument("subpaths_per_cluster must be >= 1");
    }
};

/// One link draw. BS is the transmit end (departure angles), UE the receive
/// end (arrival angles); H has shape (n_rx, n_tx) and unit average
/// per-element power over the subpath phases.
struct ChannelRealization {
    LinkState state = LinkState::outage;
    double distance_m = 0.0;
    std::optional<double> path_loss_db;
    std::vector<Cluster> clusters;
    std::optional<Eigen::MatrixXcd> small_scale;
    arrays::ArrayGeometry tx_geometry{};
    arrays::ArrayGeometry rx_geometry{};
    /// Set when the distance lies outside the range the path-loss fit covers.
    bool outside_fit_range = false;

    bool in_outage() const { return state == LinkState::outage; }
};

/// A single ray with absolute angles at both ends and linear power.
struct Ray {
    double power = 0.0;
    double tx_azimuth_deg = 0.0;
    double tx_elevation_deg = 0.0;
    double rx_azimuth_deg = 0.0;
    double rx_elevation_deg = 0.0;
};

inline Ray make_ray(const Cluster& c, const Subpath& s)
{
    return Ray{s.amplitude * s.amplitude,
               wrap_azimuth_deg(c.bs_central_azimuth_deg + s.bs_azimuth_offset_deg),
               clamp_elevation_deg(c.bs_central_elevation_deg + s.bs_elevation_offset_deg),
               wrap_azimuth_deg(c.ue_central_azimuth_deg + s.ue_azimuth_offset_deg),
               clamp_elevation_deg(c.ue_central_elevation_deg + s.ue_elevation_offset_deg)};
}

inline std::vector<Ray> rays_of(const std::vector<Cluster>& clusters)
{
    std::vector<Ray> out;
    for (const auto& c : clusters)
        for (const auto& s : c.subpaths)
            out.push_back(make_ray(c, s));
    return out;
}

inline Eigen::MatrixXcd build_small_scale(const std::vector<Cluster>& clusters, const arrays::ArrayGeometry& tx,
                                          const arrays::ArrayGeometry& rx)
{
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(rx.size(), tx.size());
    for (const auto& c : clusters) {
        for (const auto& s : c.subpaths) {
            const Ray r = make_ray(c, s);
            const Eigen::VectorXcd a_tx = arrays::array_response(tx, r.tx_azimuth_deg, r.tx_elevation_deg);
            const Eigen::VectorXcd a_rx = arrays::array_response(rx, r.rx_azimuth_deg, r.rx_elevation_deg);
            h.noalias() += std::polar(s.amplitude, s.phase_rad) * a_rx * a_tx.adjoint();
        }
    }
    return h;
}

/// Full link draw: state, path loss, cluster count, power fractions, cluster
/// geometry, subpaths and (optionally) the small-scale matrix.
template <class Rng>
ChannelRealization generate_channel(double distance_m, const BandParams& band, const ChannelModelConfig& cfg,
                                    const arrays::ArrayGeometry& tx_geom, const arrays::ArrayGeometry& rx_geom,
                                    Rng& rng)
{
    ChannelRealization out;
    out.distance_m = distance_m;
    out.tx_geometry = tx_geom;
    out.rx_geometry = rx_geom;
    out.outside_fit_range = !within_fit_range(distance_m);
    out.state = sample_link_state(distance_m, cfg.outage, cfg.los, rng);
    if (out.state == LinkState::outage)
        return out;

    out.path_loss_db = sample_path_loss(distance_m, out.state, band, rng);
    const int k = sample_cluster_count(band, rng);
    const auto gamma = sample_power_fractions(k, band, rng);
    out.clusters = sample_cluster_geometry(k, band, cfg.angles, rng);
    for (int i = 0; i < k; ++i) {
        out.clusters[i].power_fraction = gamma[i];
        synthesize_subpaths(out.clusters[i], cfg.subpaths_per_cluster, rng);
    }
    if (cfg.build_small_scale)
        out.small_scale = build_small_scale(out.clusters, tx_geom, rx_geom);
    return out;
}

} // namespace mmw::channel
