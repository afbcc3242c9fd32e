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

#include "support/scenarios.hpp"

#include "mmw/core/random.hpp"
#include "mmw/net/campaign.hpp"
#include "mmw/net/links.hpp"
#include "mmw/net/scheduler.hpp"
#include "mmw/net/sinr.hpp"
#include "mmw/net/topology.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace mmw;
using namespace mmw::net;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent lattice: rows of sites every isd * sqrt(3) / 2, odd rows
// shifted by isd / 2, one site at the centre of the square.
std::vector<Point> oracle_lattice(double area, double isd)
{
    std::vector<Point> out;
    const double h = isd * std::sqrt(3.0) / 2.0;
    for (int j = -50; j <= 50; ++j)
        for (int i = -50; i <= 50; ++i) {
            const double x = area / 2 + i * isd + (std::abs(j) % 2 == 1 ? isd / 2 : 0.0);
            const double y = area / 2 + j * h;
            if (x >= 0 && x <= area && y >= 0 && y <= area)
                out.push_back({x, y});
        }
    return out;
}

Link copy_link(const Link& l, int cell)
{
    Link c = l;
    c.cell = cell;
    c.beams.reset();
    c.dl_gain_db.reset();
    return c;
}

} // namespace

TEST(Topology, InteriorNearestSiteDistanceIsIsd)
{
    const auto sites = hex_sites(2000.0, 200.0);
    for (const auto& s : sites) {
        if (!inside_margin(s, 2000.0, 200.0))
            continue;
        double nearest = kInf;
        for (const auto& o : sites)
            if (&o != &s)
                nearest = std::min(nearest, distance(s, o));
        EXPECT_NEAR(nearest, 200.0, 1e-9);
    }
}

TEST(Topology, LatticeMatchesIndependentConstruction)
{
    auto a = hex_sites(2000.0, 200.0);
    auto b = oracle_lattice(2000.0, 200.0);
    ASSERT_EQ(a.size(), b.size());
    auto key = [](const Point& p) { return std::make_pair(std::round(p.x * 1e6), std::round(p.y * 1e6)); };
    std::sort(a.begin(), a.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    std::sort(b.begin(), b.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_LT(distance(a[i], b[i]), 1e-9);
}

TEST(Topology, CellsAreSectorsOfSites)
{
    auto s = preset("nyc28_4x4");
    auto rng = make_stream(60, 0);
    const auto topo = build_topology(s, rng);
    ASSERT_EQ(topo.cells.size(), 3 * topo.sites.size());
    for (const auto& c : topo.cells) {
        EXPECT_EQ(c.id, c.site * 3 + c.id % 3);
        EXPECT_DOUBLE_EQ(c.orientation_deg, 120.0 * (c.id % 3));
    }
}

TEST(Topology, SingleSiteGivesThreeCells)
{
    auto s = preset("nyc28_4x4");
    s.area_m = 150.0;
    auto rng = make_stream(61, 0);
    const auto topo = build_topology(s, rng);
    EXPECT_EQ(topo.sites.size(), 1u);
    EXPECT_EQ(topo.cells.size(), 3u);
}

TEST(Topology, MeanUeCountIsTenPerCell)
{
    const auto s = preset("nyc28_4x4");
    double total = 0.0;
    std::size_t cells = 0;
    const int drops = 1000;
    for (int d = 0; d < drops; ++d) {
        auto rng = make_stream(62, static_cast<std::uint64_t>(d));
        const auto topo = build_topology(s, rng);
        total += static_cast<double>(topo.ues.size());
        cells = topo.cells.size();
    }
    EXPECT_NEAR(total / drops / (10.0 * static_cast<double>(cells)), 1.0, 0.02);
}

TEST(Topology, SectorWedges)
{
    Topology t;
    t.sites = {{0.0, 0.0}};
    const Cell c0{0, 0, 0.0, true}, c1{1, 0, 120.0, true};
    EXPECT_FALSE(outside_sector(t, c0, {10.0, 1.0}, 3));
    EXPECT_TRUE(outside_sector(t, c0, {-10.0, 1.0}, 3));
    EXPECT_FALSE(outside_sector(t, c1, {-10.0, 10.0}, 3));
    EXPECT_FALSE(outside_sector(t, c0, {-10.0, 1.0}, 1));
}

TEST(Links, FarUeHasNoDetectableCell)
{
    auto s = preset("nyc28_4x4");
    Topology t;
    t.sites = {{0.0, 0.0}};
    t.site_interior = {true};
    t.cells = {{0, 0, 0.0, true}, {1, 0, 120.0, true}, {2, 0, 240.0, true}};
    t.ues = {{300.0, 0.0}, {100.0, 0.0}};
    t.ue_interior = {true, true};
    auto rng = make_stream(63, 0);
    auto table = realize_links(t, s, rng);
    EXPECT_TRUE(table.by_ue[0].empty());
    EXPECT_EQ(table.by_ue[1].size(), 3u);
    const auto assoc = associate(table, 3, s);
    EXPECT_EQ(assoc.serving_cell[0], -1);
    EXPECT_EQ(assoc.serving_cell[1], 0); // only cell 0 faces the UE
    const auto sched = draw_interference_schedule(assoc, rng);
    const auto dl = compute_sinr(t, table, assoc, sched, s, Direction::downlink);
    const auto ul = compute_sinr(t, table, assoc, sched, s, Direction::uplink);
    const auto r = schedule_and_rate(t, assoc, dl, ul, s);
    EXPECT_EQ(r.ues[0].dl_sinr_db, -kInf);
    EXPECT_EQ(r.ues[0].dl_rate_bps, 0.0);
    EXPECT_GT(r.ues[1].dl_rate_bps, 0.0);
}

TEST(Links, SameSeedSameTable)
{
    const auto s = testing_scenarios::small();
    auto r1 = make_stream(64, 0);
    auto r2 = make_stream(64, 0);
    const auto t1 = build_topology(s, r1);
    const auto t2 = build_topology(s, r2);
    const auto a = realize_links(t1, s, r1);
    const auto b = realize_links(t2, s, r2);
    ASSERT_EQ(a.links.size(), b.links.size());
    for (std::size_t i = 0; i < a.links.size(); ++i) {
        EXPECT_EQ(a.links[i].cell, b.links[i].cell);
        EXPECT_EQ(a.links[i].path_loss_db(), b.links[i].path_loss_db());
        EXPECT_EQ(a.links[i].rays.size(), b.links[i].rays.size());
    }
}

TEST(Links, CandidateCountMatchesGeometricOracle)
{
    const auto s = preset("nyc28_4x4");
    double lib = 0.0;
    std::size_t n_lib = 0;
    for (int d = 0; d < 3; ++d) {
        auto rng = make_stream(65, static_cast<std::uint64_t>(d));
        const auto topo = build_topology(s, rng);
        const auto table = realize_links(topo, s, rng);
        for (int c : table.candidate_counts()) {
            lib += c;
            ++n_lib;
        }
    }
    // Geometry only: a link is detectable iff its site is within 175 m.
    const auto sites = oracle_lattice(2000.0, 200.0);
    std::mt19937 eng(5);
    std::uniform_real_distribution<double> u(0.0, 2000.0);
    const int n = 100000;
    double ref = 0.0;
    for (int i = 0; i < n; ++i) {
        const Point p{u(eng), u(eng)};
        for (const auto& site : sites)
            ref += distance(p, site) <= 175.0 ? 3.0 : 0.0;
    }
    ref /= n;
    EXPECT_NEAR(lib / static_cast<double>(n_lib) / ref, 1.0, 0.05);
}

TEST(Association, SingleCellInRange)
{
    auto s = preset("nyc28_4x4");
    s.sectors_per_site = 1;
    Topology t;
    t.sites = {{0.0, 0.0}};
    t.site_interior = {true};
    t.cells = {{0, 0, 0.0, true}};
    t.ues = {{60.0, 30.0}};
    t.ue_interior = {true};
    auto rng = make_stream(66, 0);
    auto table = realize_links(t, s, rng);
    const auto assoc = associate(table, 1, s);
    EXPECT_EQ(assoc.serving_cell[0], 0);
}

TEST(Association, TiesGoToLowerCellId)
{
    auto s = preset("nyc28_4x4");
    s.sectors_per_site = 1;
    Topology t;
    t.sites = {{0.0, 0.0}};
    t.site_interior = {true};
    t.cells = {{0, 0, 0.0, true}};
    t.ues = {{80.0, 0.0}};
    t.ue_interior = {true};
    auto rng = make_stream(67, 0);
    const auto one = realize_links(t, s, rng);
    ASSERT_EQ(one.links.size(), 1u);

    // identical draws towards cells 4 and 2, listed in either order
    for (bool swapped : {false, true}) {
        LinkTable table;
        table.by_ue.resize(1);
        table.by_cell.resize(5);
        for (int cell : swapped ? std::vector<int>{4, 2} : std::vector<int>{2, 4}) {
            table.links.push_back(copy_link(one.links[0], cell));
            table.by_ue[0].push_back(static_cast<int>(table.links.size()) - 1);
            table.by_cell[static_cast<std::size_t>(cell)].push_back(static_cast<int>(table.links.size()) - 1);
        }
        const auto assoc = associate(table, 5, s);
        EXPECT_EQ(assoc.serving_cell[0], 2);
    }
}

TEST(Association, PointClustersReduceToMinimumCouplingLoss)
{
    auto s = testing_scenarios::small();
    s.band.cluster_rate = 1e-9; // one cluster
    s.band.bs_azimuth_spread_mean_deg = 0.0;
    s.band.ue_azimuth_spread_mean_deg = 0.0;
    s.band.ue_elevation_spread_mean_deg = 0.0;
    auto rng = make_stream(68, 0);
    const auto topo = build_topology(s, rng);
    auto table = realize_links(topo, s, rng);
    const auto assoc = associate(table, topo.n_cells(), s);
    int checked = 0;
    for (std::size_t u = 0; u < table.by_ue.size(); ++u) {
        int best = -1;
        double best_loss = kInf;
        for (int idx : table.by_ue[u]) {
            const auto& l = table.links[static_cast<std::size_t>(idx)];
            const double loss = l.path_loss_db() + l.mask_db;
            if (loss < best_loss) {
                best_loss = loss;
                best = l.cell;
            }
        }
        EXPECT_EQ(assoc.serving_cell[u], best);
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(Sinr, SingleCellHasNoInterference)
{
    auto s = preset("nyc28_4x4");
    s.area_m = 150.0;
    s.sectors_per_site = 1;
    s.edge_margin_m = 0.0;
    const auto r = run_drop(s, 69, 0);
    int served = 0;
    for (const auto& u : r.ues) {
        if (u.serving_cell < 0)
            continue;
        ++served;
        EXPECT_EQ(u.dl_inr_db, -kInf);
        EXPECT_EQ(u.ul_inr_db, -kInf);
        EXPECT_TRUE(std::isfinite(u.dl_sinr_db));
    }
    EXPECT_GT(served, 0);
}

TEST(Sinr, SinrNeverExceedsSnr)
{
    const auto s = testing_scenarios::small();
    auto rng = make_stream(70, 0);
    const auto topo = build_topology(s, rng);
    auto table = realize_links(topo, s, rng);
    const auto assoc = associate(table, topo.n_cells(), s);
    const auto sched = draw_interference_schedule(assoc, rng);
    for (auto dir : {Direction::downlink, Direction::uplink})
        for (const auto& x : compute_sinr(topo, table, assoc, sched, s, dir)) {
            if (!std::isfinite(x.snr_db))
                continue;
            EXPECT_LE(x.sinr_db, x.snr_db + 1e-12);
            if (std::isfinite(x.inr_db)) {
                const double expected = x.snr_db - 10.0 * std::log10(1.0 + std::pow(10.0, x.inr_db / 10.0));
                EXPECT_NEAR(x.sinr_db, expected, 1e-9);
            }
        }
}

TEST(RateMap, CapAndGap)
{
    const RateMap m;
    EXPECT_EQ(m.spectral_efficiency(-kInf), 0.0);
    EXPECT_EQ(m.spectral_efficiency(kInf), 4.8);
    EXPECT_NEAR(m.spectral_efficiency(10.0), std::log2(1.0 + std::pow(10.0, 0.7)), 1e-12);
    EXPECT_EQ(m.spectral_efficiency(60.0), 4.8);
}

TEST(Rates, LoneUeAtInfiniteSinrGetsCapRate)
{
    const auto s = preset("nyc28_4x4");
    Topology t;
    t.sites = {{0.0, 0.0}};
    t.site_interior = {true};
    t.cells = {{0, 0, 0.0, true}};
    t.ues = {{10.0, 0.0}};
    t.ue_interior = {true};
    Association a;
    a.serving_link = {0};
    a.serving_cell = {0};
    a.cell_ues = {{0}};
    std::vector<SinrSample> best(1);
    best[0].sinr_db = kInf;
    const auto r = schedule_and_rate(t, a, best, best, s);
    // 0.5 * 0.8 * 1e9 * 4.8
    EXPECT_DOUBLE_EQ(r.ues[0].dl_rate_bps, 1.92e9);
    EXPECT_DOUBLE_EQ(r.ues[0].ul_rate_bps, 1.92e9);
    EXPECT_DOUBLE_EQ(r.cells[0].dl_throughput_bps, 1.92e9);
}

TEST(Rates, AllOutageGivesZeroRates)
{
    auto s = testing_scenarios::small();
    s.outage = channel::OutageModel::hard(5.0); // below min_distance_m
    const auto r = run_drop(s, 71, 0);
    ASSERT_FALSE(r.ues.empty());
    for (const auto& u : r.ues) {
        EXPECT_EQ(u.serving_cell, -1);
        EXPECT_EQ(u.dl_rate_bps, 0.0);
        EXPECT_EQ(u.ul_rate_bps, 0.0);
        EXPECT_EQ(u.dl_sinr_db, -kInf);
    }
    for (const auto& c : r.cells)
        EXPECT_EQ(c.dl_throughput_bps, 0.0);
}

TEST(Rates, TimeAndSubbandSharesSumToOne)
{
    for (auto access : {UplinkAccess::tdma, UplinkAccess::fdma}) {
        auto s = testing_scenarios::small();
        s.uplink_access = access;
        const auto r = run_drop(s, 72, 0);
        const double base = (1.0 - s.overhead_fraction) * s.bandwidth_hz;
        std::vector<double> dl(r.cells.size(), 0.0), ul(r.cells.size(), 0.0);
        for (const auto& u : r.ues) {
            if (u.serving_cell < 0)
                continue;
            const double rho_dl = s.rate_map.spectral_efficiency(u.dl_sinr_db);
            const double rho_ul = s.rate_map.spectral_efficiency(u.ul_sinr_db);
            if (rho_dl > 0)
                dl[static_cast<std::size_t>(u.serving_cell)] += u.dl_rate_bps / (base * s.dl_duty * rho_dl);
            if (rho_ul > 0)
                ul[static_cast<std::size_t>(u.serving_cell)] += u.ul_rate_bps / (base * (1 - s.dl_duty) * rho_ul);
        }
        for (const auto& c : r.cells)
            if (c.n_ues > 0) {
                EXPECT_NEAR(dl[static_cast<std::size_t>(c.cell)], 1.0, 1e-12);
                EXPECT_NEAR(ul[static_cast<std::size_t>(c.cell)], 1.0, 1e-12);
            }
    }
}

TEST(Rates, MonotoneInTransmitPower)
{
    auto lo = testing_scenarios::small();
    auto hi = lo;
    hi.dl_tx_power_dbm += 3.0;
    hi.ul_tx_power_dbm += 3.0;
    const auto a = run_drop(lo, 73, 0);
    const auto b = run_drop(hi, 73, 0);
    ASSERT_EQ(a.ues.size(), b.ues.size());
    for (std::size_t i = 0; i < a.ues.size(); ++i) {
        EXPECT_EQ(a.ues[i].serving_cell, b.ues[i].serving_cell);
        EXPECT_GE(b.ues[i].dl_rate_bps, a.ues[i].dl_rate_bps);
        EXPECT_GE(b.ues[i].ul_rate_bps, a.ues[i].ul_rate_bps);
    }
}

TEST(Rates, LargerUeArrayRaisesMeanRate)
{
    auto small_array = testing_scenarios::small();
    auto large_array = small_array;
    large_array.ue_array = arrays::ArrayGeometry::square(8);
    // array size changes the draw count, so compare means, not UE by UE
    auto mean_rate = [](const NetworkScenario& s) {
        const auto ues = run_campaign(s, 3, 74, 1).pooled_ues();
        double sum = 0.0;
        for (const auto& u : ues)
            sum += u.dl_rate_bps + u.ul_rate_bps;
        return sum / static_cast<double>(ues.size());
    };
    const double ra = mean_rate(small_array);
    const double rb = mean_rate(large_array);
    EXPECT_GT(rb, ra);
}
