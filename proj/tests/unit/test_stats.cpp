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

#include "support/oracles.hpp"
#include "support/scenarios.hpp"

#include "mmw/net/campaign.hpp"
#include "mmw/stats/cdf.hpp"
#include "mmw/stats/summary.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

using namespace mmw;
using stats::EmpiricalCdf;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const net::CampaignResult& shared_campaign()
{
    static const auto c = net::run_campaign(testing_scenarios::tiny(), 6, 90, 1);
    return c;
}

} // namespace

TEST(Cdf, StepValues)
{
    const std::vector<double> x{3.0, 1.0, 2.0};
    const EmpiricalCdf cdf(x);
    EXPECT_DOUBLE_EQ(cdf(2.0), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(cdf(0.5), 0.0);
    EXPECT_DOUBLE_EQ(cdf(3.0), 1.0);
    EXPECT_DOUBLE_EQ(cdf.percentile(0.0), 1.0);
    EXPECT_DOUBLE_EQ(cdf.percentile(1.0), 3.0);
    EXPECT_DOUBLE_EQ(cdf.median(), 2.0);
    EXPECT_DOUBLE_EQ(cdf.mean(), 2.0);
}

TEST(Cdf, ProbabilitiesStrictlyIncreaseToOne)
{
    const std::vector<double> x{1.0, 1.0, 2.0, 5.0, 5.0, 5.0};
    const EmpiricalCdf cdf(x);
    ASSERT_EQ(cdf.values().size(), 3u);
    EXPECT_DOUBLE_EQ(cdf.probabilities()[0], 2.0 / 6.0);
    EXPECT_DOUBLE_EQ(cdf.probabilities().back(), 1.0);
    for (std::size_t i = 1; i < cdf.probabilities().size(); ++i)
        EXPECT_LT(cdf.probabilities()[i - 1], cdf.probabilities()[i]);
}

TEST(Cdf, DegenerateSample)
{
    const std::vector<double> x(10, 4.0);
    const EmpiricalCdf cdf(x);
    EXPECT_EQ(cdf.values().size(), 1u);
    EXPECT_DOUBLE_EQ(cdf(3.999), 0.0);
    EXPECT_DOUBLE_EQ(cdf(4.0), 1.0);
    EXPECT_DOUBLE_EQ(cdf.percentile(0.05), 4.0);
}

TEST(Cdf, NormalFifthPercentile)
{
    std::mt19937_64 eng(91);
    std::normal_distribution<double> n01;
    std::vector<double> x(100000);
    for (double& v : x)
        v = n01(eng);
    const EmpiricalCdf cdf(x);
    EXPECT_NEAR(cdf.percentile(0.05), oracle::normal_quantile(0.05), 0.03);
    EXPECT_NEAR(cdf.percentile(0.5), 0.0, 0.02);
}

TEST(Cdf, PercentileIsMonotone)
{
    std::mt19937_64 eng(92);
    std::exponential_distribution<double> e(1.0);
    std::vector<double> x(997);
    for (double& v : x)
        v = e(eng);
    const EmpiricalCdf cdf(x);
    double prev = -kInf;
    for (int i = 0; i <= 200; ++i) {
        const double q = cdf.percentile(i / 200.0);
        EXPECT_GE(q, prev);
        prev = q;
    }
    EXPECT_DOUBLE_EQ(cdf.percentile(1.0), cdf.max());
    EXPECT_DOUBLE_EQ(cdf.percentile(0.0), cdf.min());
}

TEST(Cdf, PercentileInterpolatesBetweenOrderStatistics)
{
    const std::vector<double> x{0.0, 10.0, 20.0, 30.0, 40.0};
    const EmpiricalCdf cdf(x);
    EXPECT_DOUBLE_EQ(cdf.percentile(0.05), 2.0);
    EXPECT_DOUBLE_EQ(cdf.percentile(0.6), 24.0);
}

TEST(Cdf, SentinelsAndBadInput)
{
    EXPECT_THROW(EmpiricalCdf(std::vector<double>{}), std::domain_error);
    EXPECT_THROW(EmpiricalCdf(std::vector<double>{1.0, std::nan("")}), std::domain_error);
    EXPECT_THROW(EmpiricalCdf(std::vector<double>{1.0, kInf}), std::domain_error);
    EXPECT_THROW(EmpiricalCdf(std::vector<double>{-kInf, -kInf}), std::domain_error);
    EXPECT_THROW(EmpiricalCdf(std::vector<double>{1.0}).percentile(1.5), std::domain_error);

    const EmpiricalCdf floored(std::vector<double>{-kInf, 5.0}, -100.0);
    EXPECT_DOUBLE_EQ(floored.min(), -100.0);
    EXPECT_DOUBLE_EQ(floored(-100.0), 0.5);
    const EmpiricalCdf unfloored(std::vector<double>{-kInf, 5.0, 7.0});
    EXPECT_DOUBLE_EQ(unfloored.min(), 5.0);
    EXPECT_EQ(unfloored.sample_count(), 3u);
}

TEST(Cdf, InputOrderDoesNotMatter)
{
    std::vector<double> x{5.0, -1.0, 3.5, 3.5, 8.0, 0.0, 2.25};
    const EmpiricalCdf a(x);
    std::mt19937 eng(93);
    for (int k = 0; k < 5; ++k) {
        std::shuffle(x.begin(), x.end(), eng);
        const EmpiricalCdf b(x);
        EXPECT_EQ(a.values(), b.values());
        EXPECT_EQ(a.probabilities(), b.probabilities());
        EXPECT_EQ(a.percentile(0.05), b.percentile(0.05));
    }
}

TEST(Summary, LteGainRatio)
{
    const auto* row = stats::reference_row("nyc28_4x4");
    ASSERT_NE(row, nullptr);
    const auto r = stats::ratios_vs_lte(row->dl, row->ul);
    EXPECT_NEAR(r.dl_capacity, 1130.0 / 53.8, 1e-12);
    EXPECT_NEAR(r.dl_capacity, 21.0, 0.05);
    EXPECT_EQ(stats::reference_row("nope"), nullptr);
}

TEST(Summary, ReferenceRowsInTableOrder)
{
    const char* expected[] = {"nyc28_4x4", "nyc28_8x8", "nyc73_4x4", "nyc73_8x8"};
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_EQ(stats::kMmwReferenceRows[i].preset, std::string_view(expected[i]));
}

TEST(Summary, ZeroRateCampaignGivesZeroFigures)
{
    auto s = testing_scenarios::tiny();
    s.outage = channel::OutageModel::hard(5.0);
    const auto sum = stats::summarize(net::run_campaign(s, 2, 94, 1), s);
    EXPECT_GT(sum.n_cells, 0u);
    EXPECT_GT(sum.n_ues, 0u);
    for (const auto* f : {&sum.dl, &sum.ul}) {
        EXPECT_EQ(f->capacity_mbps, 0.0);
        EXPECT_EQ(f->spectral_efficiency, 0.0);
        EXPECT_EQ(f->edge_rate_mbps, 0.0);
    }
}

TEST(Summary, CapacityMatchesPerUeRatesGroupedByCell)
{
    const auto& c = shared_campaign();
    const auto s = testing_scenarios::tiny();
    double dl = 0.0, ul = 0.0;
    std::size_t n_cells = 0;
    std::vector<double> interior_dl;
    for (std::size_t d = 0; d < c.drops.size(); ++d) {
        std::map<int, bool> interior;
        for (const auto& cell : c.drops[d].cells)
            interior[cell.cell] = cell.interior;
        for (const auto& [id, in] : interior)
            n_cells += in ? 1 : 0;
        for (const auto& u : c.drops[d].ues) {
            if (u.interior)
                interior_dl.push_back(u.dl_rate_bps);
            if (u.serving_cell >= 0 && interior[u.serving_cell]) {
                dl += u.dl_rate_bps;
                ul += u.ul_rate_bps;
            }
        }
    }
    const auto sum = stats::summarize(c, s);
    EXPECT_EQ(sum.n_cells, n_cells);
    EXPECT_NEAR(sum.dl.capacity_mbps, dl / static_cast<double>(n_cells) / 1e6, 1e-9);
    EXPECT_NEAR(sum.ul.capacity_mbps, ul / static_cast<double>(n_cells) / 1e6, 1e-9);
    EXPECT_NEAR(sum.dl.spectral_efficiency, sum.dl.capacity_mbps * 1e6 / (s.dl_duty * s.bandwidth_hz), 1e-12);

    std::sort(interior_dl.begin(), interior_dl.end());
    const double pos = 0.05 * static_cast<double>(interior_dl.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double hi = interior_dl[std::min(lo + 1, interior_dl.size() - 1)];
    const double edge = interior_dl[lo] + (pos - static_cast<double>(lo)) * (hi - interior_dl[lo]);
    EXPECT_NEAR(sum.dl.edge_rate_mbps, edge / 1e6, 1e-9);
}

TEST(Summary, MergeIsOrderIndependent)
{
    const auto& c = shared_campaign();
    const auto s = testing_scenarios::tiny();
    stats::SummaryAccumulator a, b, cc, left, right;
    a.add(c.drops[0]);
    a.add(c.drops[1]);
    b.add(c.drops[2]);
    b.add(c.drops[3]);
    cc.add(c.drops[4]);
    cc.add(c.drops[5]);
    left = a;
    left.merge(b).merge(cc);
    right = cc;
    stats::SummaryAccumulator bc = b;
    right.merge(bc.merge(a));
    const auto x = left.finish(s), y = right.finish(s), z = stats::summarize(c, s);
    for (const auto* v : {&y, &z}) {
        EXPECT_EQ(x.n_cells, v->n_cells);
        EXPECT_NEAR(x.dl.capacity_mbps, v->dl.capacity_mbps, 1e-9);
        EXPECT_NEAR(x.ul.capacity_mbps, v->ul.capacity_mbps, 1e-9);
        EXPECT_EQ(x.dl.edge_rate_mbps, v->dl.edge_rate_mbps);
        EXPECT_EQ(x.ul.edge_rate_mbps, v->ul.edge_rate_mbps);
    }
}

TEST(Metrics, DbMetricsUseFloorForSentinels)
{
    const auto ues = shared_campaign().pooled_ues();
    for (auto m : stats::kAllMetrics) {
        const auto cdf = stats::metric_cdf(ues, m);
        EXPECT_EQ(cdf.sample_count(), ues.size());
        EXPECT_GE(cdf.min(), stats::kDbFloor);
        EXPECT_FALSE(stats::metric_units(m).empty());
    }
    EXPECT_EQ(stats::metric_units(stats::Metric::dl_rate), "Mbps");
    EXPECT_EQ(stats::metric_units(stats::Metric::ul_inr), "dB");
}
