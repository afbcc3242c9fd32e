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

#include "mmw/core/units.hpp"
#include "mmw/net/links.hpp"
#include "mmw/net/scenario.hpp"
#include "mmw/net/topology.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace mmw::net {

/// The UE each cell is serving in the interference snapshot of a drop; -1
/// for cells with no UEs (those stay silent).
struct InterferenceSchedule {
    std::vector<int> downlink;
    std::vector<int> uplink;
};

template <class Rng>
InterferenceSchedule draw_interference_schedule(const Association& assoc, Rng& rng)
{
    const std::size_t n = assoc.cell_ues.size();
    InterferenceSchedule s{std::vector<int>(n, -1), std::vector<int>(n, -1)};
    for (std::size_t c = 0; c < n; ++c) {
        const auto& ues = assoc.cell_ues[c];
        if (ues.empty())
            continue;
        std::uniform_int_distribution<std::size_t> pick(0, ues.size() - 1);
        s.downlink[c] = ues[pick(rng)];
        s.uplink[c] = ues[pick(rng)];
    }
    return s;
}

struct SinrSample {
    double sinr_db = -std::numeric_limits<double>::infinity();
    double snr_db = -std::numeric_limits<double>::infinity();
    double inr_db = -std::numeric_limits<double>::infinity();
};

/// Per-UE SINR, SNR and INR in one direction. Unserved UEs keep the -inf
/// sentinels; INR is -inf when no interferer reaches the UE.
///
/// Downlink interference comes from every other active cell that has a
/// detectable link to the UE, transmitting on the beam of its own scheduled
/// UE and received on the victim's serving beams. Uplink interference comes
/// from the scheduled UE of every other cell. With subband FDMA a UE of a
/// cell with n UEs occupies W / n; the noise bandwidth shrinks accordingly and
/// an interferer from a cell with m UEs carries m / n of its power in the
/// victim's subband.
inline std::vector<SinrSample> compute_sinr(const Topology& topo, LinkTable& table, const Association& assoc,
                                            const InterferenceSchedule& sched, const NetworkScenario& scenario,
                                            Direction direction)
{
    const auto n_ues = static_cast<std::size_t>(topo.n_ues());
    std::vector<SinrSample> out(n_ues);
    const bool fdma = scenario.uplink_access == UplinkAccess::fdma;

    auto cell_load = [&](int cell) { return static_cast<double>(assoc.cell_ues[static_cast<std::size_t>(cell)].size()); };

    for (std::size_t u = 0; u < n_ues; ++u) {
        const int serving_idx = assoc.serving_link[u];
        if (serving_idx < 0)
            continue;
        Link& serving = table.links[static_cast<std::size_t>(serving_idx)];
        const int cell = serving.cell;
        const auto& beams = ensure_beams(serving, scenario);
        double signal_mw = 0.0;
        double interference_mw = 0.0;
        double noise_mw = 0.0;

        if (direction == Direction::downlink) {
            const double gain = downlink_gain_db(serving, scenario);
            signal_mw = db_to_linear(scenario.dl_tx_power_dbm - serving.path_loss_db() - serving.mask_db + gain);
            noise_mw = db_to_linear(thermal_noise_dbm(scenario.bandwidth_hz, scenario.ue_noise_figure_db));
            for (int idx : table.by_ue[u]) {
                Link& l = table.links[static_cast<std::size_t>(idx)];
                if (l.cell == cell)
                    continue;
                const int scheduled = sched.downlink[static_cast<std::size_t>(l.cell)];
                if (scheduled < 0)
                    continue;
                Link& their = table.links[static_cast<std::size_t>(assoc.serving_link[static_cast<std::size_t>(scheduled)])];
                const auto& tb = ensure_beams(their, scenario);
                const double g = beam_power(l.rays, scenario, tb.bs.leftCols(1), beams.ue);
                interference_mw += db_to_linear(scenario.dl_tx_power_dbm - l.path_loss_db() - l.mask_db) * g;
            }
        } else {
            const double load = cell_load(cell);
            const double gain = uplink_gain_db(serving, scenario);
            signal_mw = db_to_linear(scenario.ul_tx_power_dbm - serving.path_loss_db() - serving.mask_db + gain);
            const double noise_bw = fdma ? scenario.bandwidth_hz / load : scenario.bandwidth_hz;
            noise_mw = db_to_linear(thermal_noise_dbm(noise_bw, scenario.bs_noise_figure_db));
            for (int idx : table.by_cell[static_cast<std::size_t>(cell)]) {
                Link& l = table.links[static_cast<std::size_t>(idx)];
                const int their_cell = assoc.serving_cell[static_cast<std::size_t>(l.ue)];
                if (their_cell < 0 || their_cell == cell ||
                    sched.uplink[static_cast<std::size_t>(their_cell)] != l.ue)
                    continue;
                Link& their = table.links[static_cast<std::size_t>(assoc.serving_link[static_cast<std::size_t>(l.ue)])];
                const auto& tb = ensure_beams(their, scenario);
                const double g = beam_power(l.rays, scenario, beams.bs, tb.ue.leftCols(1));
                const double share = fdma ? cell_load(their_cell) / load : 1.0;
                interference_mw += db_to_linear(scenario.ul_tx_power_dbm - l.path_loss_db() - l.mask_db) * g * share;
            }
        }

        out[u].snr_db = linear_to_db(signal_mw / noise_mw);
        out[u].sinr_db = linear_to_db(signal_mw / (noise_mw + interference_mw));
        out[u].inr_db = linear_to_db(interference_mw / noise_mw);
    }
    return out;
}

} // namespace mmw::net
