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

#include "mmw/net/campaign.hpp"
#include "mmw/net/scenario.hpp"
#include "mmw/stats/cdf.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace mmw::stats {

/// Headline figures for one link direction.
struct DirectionFigures {
    double spectral_efficiency = 0.0; // bps/Hz, overhead included, duty excluded
    double capacity_mbps = 0.0;       // mean per-cell throughput
    double edge_rate_mbps = 0.0;      // pooled 5th percentile of per-UE rate

    bool operator==(const DirectionFigures&) const = default;
};

struct CapacitySummary {
    std::string label;
    DirectionFigures dl;
    DirectionFigures ul;
    std::size_t n_cells = 0;
    std::size_t n_ues = 0;
};

/// A stored row of the reference comparison table.
struct ReferenceRow {
    std::string_view system;
    std::string_view preset; // empty for the LTE baseline
    std::string_view bs_antenna;
    std::string_view ue_antenna;
    double carrier_ghz;
    DirectionFigures dl;
    DirectionFigures ul;
};

/// Measured-channel mmW rows at 1 GHz TDD, in table order.
inline constexpr std::array<ReferenceRow, 4> kMmwReferenceRows{{
    {"mmW", "nyc28_4x4", "8x8", "4x4", 28.0, {2.25, 1130.0, 17.4}, {2.38, 1190.0, 21.6}},
    {"mmW", "nyc28_8x8", "8x8", "8x8", 28.0, {2.83, 1420.0, 32.7}, {2.84, 1420.0, 36.3}},
    {"mmW", "nyc73_4x4", "8x8", "4x4", 73.0, {1.45, 730.0, 6.6}, {1.65, 830.0, 9.6}},
    {"mmW", "nyc73_8x8", "8x8", "8x8", 73.0, {2.15, 1080.0, 16.6}, {2.31, 1160.0, 22.1}},
}};

/// LTE 20+20 MHz FDD baseline from industry evaluations.
inline constexpr ReferenceRow kLteReference{
    "LTE", "", "2 TX, 4 RX", "2", 2.5, {2.69, 53.8, 1.80}, {2.36, 47.2, 1.94}};

inline constexpr double kEdgePercentile = 0.05;

/// Looks up the reference row of a preset; nullptr when there is none.
inline const ReferenceRow* reference_row(std::string_view preset)
{
    for (const auto& row : kMmwReferenceRows)
        if (row.preset == preset)
            return &row;
    return nullptr;
}

struct LteRatios {
    double dl_capacity = 0.0;
    double ul_capacity = 0.0;
    double total_capacity = 0.0; // (DL + UL) / (DL + UL)
    double dl_edge = 0.0;
    double ul_edge = 0.0;
};

inline LteRatios ratios_vs_lte(const DirectionFigures& dl, const DirectionFigures& ul)
{
    const auto& lte = kLteReference;
    return {dl.capacity_mbps / lte.dl.capacity_mbps, ul.capacity_mbps / lte.ul.capacity_mbps,
            (dl.capacity_mbps + ul.capacity_mbps) / (lte.dl.capacity_mbps + lte.ul.capacity_mbps),
            dl.edge_rate_mbps / lte.dl.edge_rate_mbps, ul.edge_rate_mbps / lte.ul.edge_rate_mbps};
}

/// Mergeable partial statistics. Holds per-cell throughput sums and every
/// per-UE rate, so merge is associative and commutative and the finished
/// summary does not depend on the order drops were added.
class SummaryAccumulator {
public:
    void add(const net::DropResult& drop)
    {
        for (const auto& c : drop.cells) {
            if (!c.interior)
                continue;
            ++n_cells_;
            dl_cell_sum_ += c.dl_throughput_bps;
            ul_cell_sum_ += c.ul_throughput_bps;
        }
        for (const auto& u : drop.ues) {
            if (!u.interior)
                continue;
            dl_rates_.push_back(u.dl_rate_bps);
            ul_rates_.push_back(u.ul_rate_bps);
        }
    }

    void add(const net::CampaignResult& campaign)
    {
        for (const auto& d : campaign.drops)
            add(d);
    }

    SummaryAccumulator& merge(const SummaryAccumulator& other)
    {
        n_cells_ += other.n_cells_;
        dl_cell_sum_ += other.dl_cell_sum_;
        ul_cell_sum_ += other.ul_cell_sum_;
        dl_rates_.insert(dl_rates_.end(), other.dl_rates_.begin(), other.dl_rates_.end());
        ul_rates_.insert(ul_rates_.end(), other.ul_rates_.begin(), other.ul_rates_.end());
        return *this;
    }

    /// Capacity is the mean over interior cells (empty ones count as zero);
    /// spectral efficiency is capacity / (duty * W); the edge rate includes
    /// UEs with no detectable cell at rate zero.
    CapacitySummary finish(const net::NetworkScenario& scenario, std::string label = {}) const
    {
        CapacitySummary s;
        s.label = std::move(label);
        s.n_cells = n_cells_;
        s.n_ues = dl_rates_.size();
        s.dl = figures(dl_cell_sum_, dl_rates_, scenario.dl_duty * scenario.bandwidth_hz);
        s.ul = figures(ul_cell_sum_, ul_rates_, (1.0 - scenario.dl_duty) * scenario.bandwidth_hz);
        return s;
    }

private:
    DirectionFigures figures(double cell_sum, const std::vector<double>& rates, double duty_bandwidth_hz) const
    {
        DirectionFigures f;
        if (n_cells_ > 0) {
            const double capacity_bps = cell_sum / static_cast<double>(n_cells_);
            f.capacity_mbps = capacity_bps / 1e6;
            f.spectral_efficiency = capacity_bps / duty_bandwidth_hz;
        }
        if (!rates.empty())
            f.edge_rate_mbps = EmpiricalCdf(rates).percentile(kEdgePercentile) / 1e6;
        return f;
    }

    std::size_t n_cells_ = 0;
    double dl_cell_sum_ = 0.0;
    double ul_cell_sum_ = 0.0;
    std::vector<double> dl_rates_;
    std::vector<double> ul_rates_;
};

inline CapacitySummary summarize(const net::CampaignResult& campaign, const net::NetworkScenario& scenario,
                                 std::string label = {})
{
    SummaryAccumulator acc;
    acc.add(campaign);
    return acc.finish(scenario, std::move(label));
}

/// Per-UE metrics exported as distributions.
enum class Metric { dl_sinr, ul_sinr, dl_inr, ul_inr, dl_rate, ul_rate };

inline constexpr std::array<Metric, 6> kAllMetrics{Metric::dl_sinr, Metric::ul_sinr, Metric::dl_inr,
                                                    Metric::ul_inr,  Metric::dl_rate, Metric::ul_rate};

/// Floor bucket for UEs whose dB metric is -inf (no serving cell, or no
/// interferer).
inline constexpr double kDbFloor = -100.0;

inline std::string_view metric_name(Metric m)
{
    switch (m) {
    case Metric::dl_sinr: return "dl_sinr";
    case Metric::ul_sinr: return "ul_sinr";
    case Metric::dl_inr: return "dl_inr";
    case Metric::ul_inr: return "ul_inr";
    case Metric::dl_rate: return "dl_rate";
    case Metric::ul_rate: return "ul_rate";
    }
    return "?";
}

inline std::string_view metric_units(Metric m)
{
    return m == Metric::dl_rate || m == Metric::ul_rate ? "Mbps" : "dB";
}

inline double metric_value(const net::UeSample& u, Metric m)
{
    switch (m) {
    case Metric::dl_sinr: return u.dl_sinr_db;
    case Metric::ul_sinr: return u.ul_sinr_db;
    case Metric::dl_inr: return u.dl_inr_db;
    case Metric::ul_inr: return u.ul_inr_db;
    case Metric::dl_rate: return u.dl_rate_bps / 1e6;
    case Metric::ul_rate: return u.ul_rate_bps / 1e6;
    }
    return 0.0;
}

/// CDF of one metric over the pooled interior UEs.
inline EmpiricalCdf metric_cdf(const std::vector<net::UeSample>& ues, Metric m, std::string scenario_hash = {})
{
    std::vector<double> v;
    v.reserve(ues.size());
    for (const auto& u : ues)
        v.push_back(metric_value(u, m));
    EmpiricalCdf cdf(v, metric_units(m) == "dB" ? std::optional<double>(kDbFloor) : std::nullopt);
    cdf.metric = metric_name(m);
    cdf.units = metric_units(m);
    cdf.scenario_hash = std::move(scenario_hash);
    return cdf;
}

} // namespace mmw::stats
