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

#include "mmw/channel/band_params.hpp"
#include "mmw/channel/clusters.hpp"
#include "mmw/core/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace mmw;
using namespace mmw::channel;

TEST(ClusterCount, ProbabilityOfOneCluster)
{
    // e^-1.8 (1 + 1.8)
    const double expected = 0.46284;
    EXPECT_NEAR(oracle::truncated_poisson_pmf(1.8, 60)[1], expected, 1e-5);
    auto rng = make_stream(21, 0);
    const int n = 100000;
    int ones = 0;
    for (int i = 0; i < n; ++i)
        ones += sample_cluster_count(nyc_28ghz(), rng) == 1;
    EXPECT_NEAR(static_cast<double>(ones) / n, expected, 0.01);
}

TEST(ClusterCount, MeanMatchesPmfSum)
{
    const auto pmf = oracle::truncated_poisson_pmf(1.9, 50);
    double mean = 0.0;
    for (std::size_t k = 1; k < pmf.size(); ++k)
        mean += static_cast<double>(k) * pmf[k];
    EXPECT_NEAR(mean, 1.9 + std::exp(-1.9), 1e-12);

    auto rng = make_stream(22, 0);
    const int n = 100000;
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s += sample_cluster_count(nyc_73ghz(), rng);
    EXPECT_NEAR(s / n, mean, 0.02);
}

TEST(ClusterCount, TotalVariationAgainstTruncatedPoisson)
{
    for (const auto& band : {nyc_28ghz(), nyc_73ghz()}) {
        const auto pmf = oracle::truncated_poisson_pmf(band.cluster_rate, 60);
        std::vector<double> counts(pmf.size(), 0.0);
        auto rng = make_stream(23, 0);
        const int n = 100000;
        for (int i = 0; i < n; ++i)
            counts[static_cast<std::size_t>(std::min(sample_cluster_count(band, rng), 60))] += 1.0;
        double tv = 0.0;
        for (std::size_t k = 0; k < pmf.size(); ++k)
            tv += std::abs(counts[k] / n - pmf[k]);
        EXPECT_LT(0.5 * tv, 0.01);
    }
}

TEST(ClusterCount, TinyRateAlwaysGivesOneCluster)
{
    auto band = nyc_28ghz();
    band.cluster_rate = 1e-9;
    auto rng = make_stream(24, 0);
    for (int i = 0; i < 1000; ++i)
        EXPECT_EQ(sample_cluster_count(band, rng), 1);
}

TEST(PowerFractions, SingleClusterTakesAllPower)
{
    auto rng = make_stream(25, 0);
    const auto g = sample_power_fractions(1, nyc_28ghz(), rng);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_DOUBLE_EQ(g[0], 1.0);
}

TEST(PowerFractions, SumToOneAndNonNegative)
{
    auto rng = make_stream(26, 0);
    for (int k = 1; k <= 12; ++k)
        for (int rep = 0; rep < 200; ++rep) {
            const auto g = sample_power_fractions(k, nyc_73ghz(), rng);
            EXPECT_NEAR(std::accumulate(g.begin(), g.end(), 0.0), 1.0, 1e-12);
            for (double x : g)
                EXPECT_GE(x, 0.0);
        }
}

TEST(PowerFractions, RejectsEmptyClusterSet)
{
    auto rng = make_stream(27, 0);
    EXPECT_THROW(sample_power_fractions(0, nyc_28ghz(), rng), std::domain_error);
}

TEST(PowerFractions, ExpectedMaxOfTwoMatchesBruteForce)
{
    const auto band = nyc_28ghz();
    oracle::PowerFractionSampler ref(band.power_delay_exponent, band.power_shadow_std_db, 99);
    const int n_ref = 1000000;
    double ref_mean = 0.0;
    for (int i = 0; i < n_ref; ++i) {
        const auto g = ref.draw(2);
        ref_mean += std::max(g[0], g[1]);
    }
    ref_mean /= n_ref;

    auto rng = make_stream(28, 0);
    const int n = 200000;
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto g = sample_power_fractions(2, band, rng);
        mean += std::max(g[0], g[1]);
    }
    EXPECT_NEAR(mean / n, ref_mean, 0.01);
}

TEST(PowerFractions, SortedFractionsMatchBruteForceKs)
{
    const auto band = nyc_73ghz();
    oracle::PowerFractionSampler ref(band.power_delay_exponent, band.power_shadow_std_db, 7);
    auto rng = make_stream(29, 0);
    const int n = 1000000;
    for (int k : {2, 3}) {
        std::vector<double> a, b;
        a.reserve(n);
        b.reserve(n);
        for (int i = 0; i < n; ++i) {
            auto x = sample_power_fractions(k, band, rng);
            a.push_back(*std::max_element(x.begin(), x.end()));
            auto y = ref.draw(k);
            b.push_back(*std::max_element(y.begin(), y.end()));
        }
        EXPECT_LT(oracle::ks_statistic(a, b), 0.01) << "K=" << k;
    }
}

TEST(ClusterGeometry, SpreadLawsAndAngleRanges)
{
    const auto band = nyc_28ghz();
    auto rng = make_stream(30, 0);
    const int n = 100000;
    double s_ue = 0.0, ss_ue = 0.0, s_bs = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto c = sample_cluster_geometry(1, band, ClusterAngleConfig{}, rng)[0];
        EXPECT_EQ(c.bs_elevation_spread_deg, 0.0);
        EXPECT_EQ(c.bs_central_elevation_deg, 0.0);
        EXPECT_GE(c.ue_central_elevation_deg, -10.0);
        EXPECT_LE(c.ue_central_elevation_deg, 10.0);
        EXPECT_GE(c.bs_central_azimuth_deg, -180.0);
        EXPECT_LT(c.bs_central_azimuth_deg, 180.0);
        s_ue += c.ue_azimuth_spread_deg;
        ss_ue += c.ue_azimuth_spread_deg * c.ue_azimuth_spread_deg;
        s_bs += c.bs_azimuth_spread_deg;
    }
    const double mean = s_ue / n;
    EXPECT_NEAR(mean, 15.5, 0.2);
    EXPECT_NEAR((ss_ue / n - mean * mean) / (15.5 * 15.5), 1.0, 0.05);
    EXPECT_NEAR(s_bs / n, 10.2, 0.2);
}

TEST(ClusterGeometry, ZeroMeanSpreadIsExactlyZero)
{
    auto band = nyc_73ghz();
    band.ue_elevation_spread_mean_deg = 0.0;
    auto rng = make_stream(31, 0);
    for (const auto& c : sample_cluster_geometry(50, band, ClusterAngleConfig{}, rng)) {
        EXPECT_EQ(c.bs_elevation_spread_deg, 0.0);
        EXPECT_EQ(c.ue_elevation_spread_deg, 0.0);
    }
}

TEST(Subpaths, RmsSpreadMatchesClusterSpread)
{
    auto rng = make_stream(32, 0);
    Cluster c;
    c.power_fraction = 0.3;
    c.bs_azimuth_spread_deg = 7.0;
    c.ue_azimuth_spread_deg = 21.0;
    c.ue_elevation_spread_deg = 4.0;
    synthesize_subpaths(c, 20, rng);
    ASSERT_EQ(c.subpaths.size(), 20u);
    auto rms = [&](auto field) {
        double s = 0.0, ss = 0.0;
        for (const auto& sp : c.subpaths) {
            s += sp.*field;
            ss += sp.*field * sp.*field;
        }
        EXPECT_NEAR(s / 20.0, 0.0, 1e-9);
        return std::sqrt(ss / 20.0);
    };
    EXPECT_NEAR(rms(&Subpath::bs_azimuth_offset_deg), 7.0, 1e-9);
    EXPECT_NEAR(rms(&Subpath::ue_azimuth_offset_deg), 21.0, 1e-9);
    EXPECT_NEAR(rms(&Subpath::ue_elevation_offset_deg), 4.0, 1e-9);
    EXPECT_NEAR(rms(&Subpath::bs_elevation_offset_deg), 0.0, 1e-12);
    double power = 0.0;
    for (const auto& sp : c.subpaths) {
        EXPECT_DOUBLE_EQ(sp.amplitude, c.subpaths[0].amplitude);
        EXPECT_GE(sp.phase_rad, 0.0);
        EXPECT_LT(sp.phase_rad, 2.0 * kPi);
        power += sp.amplitude * sp.amplitude;
    }
    EXPECT_NEAR(power, 0.3, 1e-12);
}

TEST(Subpaths, PointClusterIsOneRay)
{
    auto rng = make_stream(33, 0);
    Cluster c;
    c.power_fraction = 0.5;
    synthesize_subpaths(c, 20, rng);
    ASSERT_EQ(c.subpaths.size(), 1u);
    EXPECT_DOUBLE_EQ(c.subpaths[0].amplitude, std::sqrt(0.5));
}

TEST(Laplacian, UnitScaleHasVarianceTwo)
{
    auto rng = make_stream(34, 0);
    const int n = 200000;
    double s = 0.0, ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_laplacian(rng);
        s += x;
        ss += x * x;
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(ss / n, 2.0, 0.04);
}
