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
#include "mmw/stats/cdf.hpp"
#include "mmw/stats/summary.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <string>

namespace mmw::io {

using nlohmann::json;

/// Fixed "%.10g" rendering so repeated runs give identical bytes. Infinite
/// values print as "inf" / "-inf".
inline std::string format_number(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

/// Two columns, value and P(X <= value), one row per distinct value.
inline std::string cdf_csv(const stats::EmpiricalCdf& cdf)
{
    std::string out = "value_" + cdf.units + ",cdf\n";
    const auto& v = cdf.values();
    const auto& p = cdf.probabilities();
    for (std::size_t i = 0; i < v.size(); ++i)
        out += format_number(v[i]) + "," + format_number(p[i]) + "\n";
    return out;
}

/// Every UE of every drop, interior or not, in drop then UE order.
inline std::string ue_samples_csv(const net::CampaignResult& campaign)
{
    std::string out =
        "drop,ue,serving_cell,interior,dl_sinr_db,ul_sinr_db,dl_inr_db,ul_inr_db,dl_rate_mbps,ul_rate_mbps\n";
    for (const auto& d : campaign.drops)
        for (const auto& u : d.ues) {
            out += std::to_string(d.drop_index) + "," + std::to_string(u.ue) + "," + std::to_string(u.serving_cell) +
                   "," + (u.interior ? "1" : "0") + "," + format_number(u.dl_sinr_db) + "," +
                   format_number(u.ul_sinr_db) + "," + format_number(u.dl_inr_db) + "," +
                   format_number(u.ul_inr_db) + "," + format_number(u.dl_rate_bps / 1e6) + "," +
                   format_number(u.ul_rate_bps / 1e6) + "\n";
        }
    return out;
}

inline json figures_json(const stats::DirectionFigures& f)
{
    return {{"spectral_efficiency_bps_hz", f.spectral_efficiency},
            {"cell_capacity_mbps", f.capacity_mbps},
            {"edge_rate_mbps", f.edge_rate_mbps}};
}

inline json reference_row_json(const stats::ReferenceRow& r)
{
    return {{"system", r.system},         {"bs_antenna", r.bs_antenna}, {"ue_antenna", r.ue_antenna},
            {"carrier_ghz", r.carrier_ghz}, {"dl", figures_json(r.dl)},   {"ul", figures_json(r.ul)}};
}

/// Summary block for one run: headline figures, ratios to the LTE baseline,
/// distribution percentiles, and the stored reference row when the run
/// matches a preset.
inline json summary_json(const stats::CapacitySummary& s, const std::vector<net::UeSample>& pooled,
                         std::string_view preset = {})
{
    const auto ratios = stats::ratios_vs_lte(s.dl, s.ul);
    json j = {{"label", s.label},
              {"n_interior_cells", s.n_cells},
              {"n_interior_ues", s.n_ues},
              {"dl", figures_json(s.dl)},
              {"ul", figures_json(s.ul)},
              {"vs_lte",
               {{"dl_capacity", ratios.dl_capacity},
                {"ul_capacity", ratios.ul_capacity},
                {"total_capacity", ratios.total_capacity},
                {"dl_edge", ratios.dl_edge},
                {"ul_edge", ratios.ul_edge}}}};
    json dist = json::object();
    if (!pooled.empty()) {
        for (auto m : stats::kAllMetrics) {
            const auto cdf = stats::metric_cdf(pooled, m);
            dist[std::string(stats::metric_name(m))] = {{"units", cdf.units},
                                                        {"p05", cdf.percentile(0.05)},
                                                        {"p50", cdf.percentile(0.5)},
                                                        {"p95", cdf.percentile(0.95)},
                                                        {"mean", cdf.mean()}};
        }
        const auto dl_sinr = stats::metric_cdf(pooled, stats::Metric::dl_sinr);
        const auto ul_sinr = stats::metric_cdf(pooled, stats::Metric::ul_sinr);
        dist["dl_sinr_below_0db_fraction"] = dl_sinr(std::nextafter(0.0, -1.0));
        dist["ul_sinr_below_0db_fraction"] = ul_sinr(std::nextafter(0.0, -1.0));
    }
    j["distributions"] = std::move(dist);
    j["lte_reference"] = reference_row_json(stats::kLteReference);
    if (const auto* ref = stats::reference_row(preset))
        j["reference"] = reference_row_json(*ref);
    return j;
}

} // namespace mmw::io
