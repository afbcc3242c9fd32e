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

#include "mmw/core/random.hpp"
#include "mmw/net/links.hpp"
#include "mmw/net/scenario.hpp"
#include "mmw/net/scheduler.hpp"
#include "mmw/net/sinr.hpp"
#include "mmw/net/topology.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace mmw::net {

/// One Monte Carlo drop on its own random stream derived from
/// (master_seed, drop_index).
inline DropResult run_drop(const NetworkScenario& scenario, std::uint64_t master_seed, std::uint64_t drop_index)
{
    auto rng = make_stream(master_seed, drop_index);
    const Topology topo = build_topology(scenario, rng);
    LinkTable links = realize_links(topo, scenario, rng);
    const Association assoc = associate(links, topo.n_cells(), scenario);
    const InterferenceSchedule sched = draw_interference_schedule(assoc, rng);
    const auto dl = compute_sinr(topo, links, assoc, sched, scenario, Direction::downlink);
    const auto ul = compute_sinr(topo, links, assoc, sched, scenario, Direction::uplink);
    DropResult r = schedule_and_rate(topo, assoc, dl, ul, scenario);
    r.drop_index = drop_index;
    return r;
}

/// Drops in index order. Only interior UEs and cells enter the pooled views.
struct CampaignResult {
    std::vector<DropResult> drops;

    std::vector<UeSample> pooled_ues() const
    {
        std::vector<UeSample> out;
        for (const auto& d : drops)
            for (const auto& u : d.ues)
                if (u.interior)
                    out.push_back(u);
        return out;
    }

    std::vector<CellSample> pooled_cells() const
    {
        std::vector<CellSample> out;
        for (const auto& d : drops)
            for (const auto& c : d.cells)
                if (c.interior)
                    out.push_back(c);
        return out;
    }
};

/// Runs `n_drops` independent drops on up to `threads` workers (0 picks the
/// hardware concurrency). The result does not depend on the thread count.
inline CampaignResult run_campaign(const NetworkScenario& scenario, int n_drops, std::uint64_t master_seed,
                                   unsigned threads = 0)
{
    if (n_drops < 1)
        throw std::invalid_argument("run_campaign: n_drops must be >= 1");
    scenario.validate();
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n_drops));

    CampaignResult result;
    result.drops.resize(static_cast<std::size_t>(n_drops));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (int i = next++; i < n_drops; i = next++) {
            try {
                result.drops[static_cast<std::size_t>(i)] = run_drop(scenario, master_seed, static_cast<std::uint64_t>(i));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
    return result;
}

} // namespace mmw::net
