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

#include "mmw/arrays/beamforming.hpp"
#include "mmw/channel/channel.hpp"
#include "mmw/core/units.hpp"
#include "mmw/net/scenario.hpp"
#include "mmw/net/topology.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace mmw::net {

/// Long-term beam directions of one link at both ends, strongest first.
/// Downlink transmits on bs.col(0) and receives on all UE columns; uplink
/// swaps the roles.
struct LinkBeams {
    Eigen::MatrixXcd bs;
    Eigen::MatrixXcd ue;

    arrays::BeamformerState downlink() const { return {bs.col(0), ue, static_cast<int>(ue.cols())}; }
    arrays::BeamformerState uplink() const { return {ue.col(0), bs, static_cast<int>(bs.cols())}; }
};

/// A detectable UE-cell pair.
struct Link {
    int ue = -1;
    int cell = -1;
    channel::ChannelRealization channel;
    std::vector<channel::Ray> rays;
    double mask_db = 0.0; // sector front-to-back attenuation, 0 inside the wedge
    std::optional<LinkBeams> beams;
    std::optional<double> dl_gain_db;

    double path_loss_db() const { return *channel.path_loss_db; }
};

struct LinkTable {
    std::vector<Link> links;
    std::vector<std::vector<int>> by_ue;   // link indices per UE, ascending cell id
    std::vector<std::vector<int>> by_cell; // link indices per cell, ascending UE id

    /// Number of non-outage cells per UE.
    std::vector<int> candidate_counts() const
    {
        std::vector<int> out;
        out.reserve(by_ue.size());
        for (const auto& v : by_ue)
            out.push_back(static_cast<int>(v.size()));
        return out;
    }
};

/// Draws an independent channel for every UE-cell pair and keeps the ones
/// that are not in outage. Distance is horizontal, floored at
/// scenario.min_distance_m.
template <class Rng>
LinkTable realize_links(const Topology& topo, const NetworkScenario& scenario, Rng& rng)
{
    const auto cfg = scenario.channel_config();
    LinkTable table;
    table.by_ue.resize(topo.ues.size());
    table.by_cell.resize(topo.cells.size());
    for (int u = 0; u < topo.n_ues(); ++u) {
        const Point& ue = topo.ues[static_cast<std::size_t>(u)];
        for (const Cell& cell : topo.cells) {
            const double d =
                std::max(distance(ue, topo.sites[static_cast<std::size_t>(cell.site)]), scenario.min_distance_m);
            auto ch = channel::generate_channel(d, scenario.band, cfg, scenario.bs_array, scenario.ue_array, rng);
            if (ch.in_outage())
                continue;
            Link link;
            link.ue = u;
            link.cell = cell.id;
            link.rays = channel::rays_of(ch.clusters);
            link.channel = std::move(ch);
            link.mask_db = outside_sector(topo, cell, ue, scenario.sectors_per_site) ? scenario.sector_mask_db : 0.0;
            const int idx = static_cast<int>(table.links.size());
            table.links.push_back(std::move(link));
            table.by_ue[static_cast<std::size_t>(u)].push_back(idx);
            table.by_cell[static_cast<std::size_t>(cell.id)].push_back(idx);
        }
    }
    return table;
}

inline const LinkBeams& ensure_beams(Link& link, const NetworkScenario& scenario)
{
    if (!link.beams) {
        LinkBeams b;
        b.bs = arrays::principal_directions(link.rays, scenario.bs_array, arrays::ArrayEnd::tx, scenario.n_beams);
        b.ue = arrays::principal_directions(link.rays, scenario.ue_array, arrays::ArrayEnd::rx, scenario.n_beams);
        link.beams = std::move(b);
    }
    return *link.beams;
}

/// Beamformed power gain (linear) of `rays` when the BS uses the columns of
/// `bs_beams` and the UE the columns of `ue_beams`, powers added per column.
inline double beam_power(const std::vector<channel::Ray>& rays, const NetworkScenario& scenario,
                         const Eigen::MatrixXcd& bs_beams, const Eigen::MatrixXcd& ue_beams)
{
    return arrays::expected_beam_power(rays, scenario.bs_array, scenario.ue_array, bs_beams, ue_beams);
}

/// Downlink long-term gain of a link in dB, excluding the sector mask.
inline double downlink_gain_db(Link& link, const NetworkScenario& scenario)
{
    if (!link.dl_gain_db) {
        const auto& b = ensure_beams(link, scenario);
        link.dl_gain_db = linear_to_db(beam_power(link.rays, scenario, b.bs.leftCols(1), b.ue));
    }
    return *link.dl_gain_db;
}

inline double uplink_gain_db(Link& link, const NetworkScenario& scenario)
{
    const auto& b = ensure_beams(link, scenario);
    return linear_to_db(beam_power(link.rays, scenario, b.bs, b.ue.leftCols(1)));
}

struct Association {
    std::vector<int> serving_link; // -1 when the UE sees no cell
    std::vector<int> serving_cell;
    std::vector<std::vector<int>> cell_ues; // served UEs per cell, ascending

    bool served(int ue) const { return serving_link[static_cast<std::size_t>(ue)] >= 0; }
};

/// Serves each UE from the cell with the smallest beamformed coupling loss,
/// path loss + sector mask - downlink gain; ties go to the lower cell id.
inline Association associate(LinkTable& table, int n_cells, const NetworkScenario& scenario)
{
    const std::size_t n_ues = table.by_ue.size();
    Association a;
    a.serving_link.assign(n_ues, -1);
    a.serving_cell.assign(n_ues, -1);
    a.cell_ues.resize(static_cast<std::size_t>(n_cells));
    const double max_gain_db = linear_to_db(static_cast<double>(scenario.bs_array.size()) * scenario.ue_array.size());

    std::vector<int> order;
    for (std::size_t u = 0; u < n_ues; ++u) {
        order = table.by_ue[u];
        auto bound = [&](int idx) {
            const Link& l = table.links[static_cast<std::size_t>(idx)];
            return l.path_loss_db() + l.mask_db;
        };
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return bound(x) < bound(y); });

        double best = std::numeric_limits<double>::infinity();
        int best_idx = -1;
        for (int idx : order) {
            // No gain can beat the coherent bound; later candidates only get weaker.
            if (bound(idx) - max_gain_db > best)
                break;
            Link& l = table.links[static_cast<std::size_t>(idx)];
            const double loss = bound(idx) - downlink_gain_db(l, scenario);
            if (loss < best || (loss == best && l.cell < table.links[static_cast<std::size_t>(best_idx)].cell)) {
                best = loss;
                best_idx = idx;
            }
        }
        if (best_idx >= 0) {
            a.serving_link[u] = best_idx;
            a.serving_cell[u] = table.links[static_cast<std::size_t>(best_idx)].cell;
            a.cell_ues[static_cast<std::size_t>(a.serving_cell[u])].push_back(static_cast<int>(u));
        }
    }
    return a;
}

} // namespace mmw::net
