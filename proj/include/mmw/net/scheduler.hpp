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

#include "mmw/net/links.hpp"
#include "mmw/net/scenario.hpp"
#include "mmw/net/sinr.hpp"
#include "mmw/net/topology.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace mmw::net {

struct UeSample {
    int ue = -1;
    int serving_cell = -1; // -1: no detectable cell
    bool interior = false;
    double dl_sinr_db = -std::numeric_limits<double>::infinity();
    double ul_sinr_db = -std::numeric_limits<double>::infinity();
    double dl_inr_db = -std::numeric_limits<double>::infinity();
    double ul_inr_db = -std::numeric_limits<double>::infinity();
    double dl_rate_bps = 0.0;
    double ul_rate_bps = 0.0;
};

struct CellSample {
    int cell = -1;
    bool interior = false;
    int n_ues = 0;
    double dl_throughput_bps = 0.0;
    double ul_throughput_bps = 0.0;
};

struct DropResult {
    std::uint64_t drop_index = 0;
    std::vector<UeSample> ues;
    std::vector<CellSample> cells;
};

/// Full-buffer proportional-fair rates. With SINRs fixed over the drop, PF
/// converges to equal time shares among the n UEs of a cell: downlink and
/// TDMA uplink give each UE the whole band for 1/n of the time, FDMA uplink
/// gives each UE W/n continuously (its SINR already reflects the subband).
/// Either way rate = (1 - overhead) * duty * W / n * rho(SINR).
inline DropResult schedule_and_rate(const Topology& topo, const Association& assoc,
                                    const std::vector<SinrSample>& dl, const std::vector<SinrSample>& ul,
                                    const NetworkScenario& scenario)
{
    DropResult r;
    const double base = (1.0 - scenario.overhead_fraction) * scenario.bandwidth_hz;
    const double dl_scale = base * scenario.dl_duty;
    const double ul_scale = base * (1.0 - scenario.dl_duty);

    r.cells.resize(topo.cells.size());
    for (const Cell& c : topo.cells) {
        auto& cs = r.cells[static_cast<std::size_t>(c.id)];
        cs.cell = c.id;
        cs.interior = c.interior;
        cs.n_ues = static_cast<int>(assoc.cell_ues[static_cast<std::size_t>(c.id)].size());
    }

    r.ues.resize(topo.ues.size());
    for (std::size_t u = 0; u < topo.ues.size(); ++u) {
        auto& s = r.ues[u];
        s.ue = static_cast<int>(u);
        s.serving_cell = assoc.serving_cell[u];
        if (s.serving_cell < 0) {
            s.interior = topo.ue_interior[u];
            continue;
        }
        auto& cs = r.cells[static_cast<std::size_t>(s.serving_cell)];
        s.interior = cs.interior;
        s.dl_sinr_db = dl[u].sinr_db;
        s.dl_inr_db = dl[u].inr_db;
        s.ul_sinr_db = ul[u].sinr_db;
        s.ul_inr_db = ul[u].inr_db;
        const double share = 1.0 / cs.n_ues;
        s.dl_rate_bps = dl_scale * share * scenario.rate_map.spectral_efficiency(s.dl_sinr_db);
        s.ul_rate_bps = ul_scale * share * scenario.rate_map.spectral_efficiency(s.ul_sinr_db);
        cs.dl_throughput_bps += s.dl_rate_bps;
        cs.ul_throughput_bps += s.ul_rate_bps;
    }
    return r;
}

} // namespace mmw::net
