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
#include "mmw/net/scenario.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace mmw::net {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Cell {
    int id = 0;
    int site = 0;
    double orientation_deg = 0.0; // sector boresight
    bool interior = false;
};

struct Topology {
    std::vector<Point> sites;
    std::vector<bool> site_interior;
    std::vector<Cell> cells;
    std::vector<Point> ues;
    std::vector<bool> ue_interior;

    int n_cells() const { return static_cast<int>(cells.size()); }
    int n_ues() const { return static_cast<int>(ues.size()); }
};

inline bool inside_margin(const Point& p, double area_m, double margin_m)
{
    return p.x >= margin_m && p.x <= area_m - margin_m && p.y >= margin_m && p.y <= area_m - margin_m;
}

/// Hexagonal site lattice centred on the square area, clipped to it.
inline std::vector<Point> hex_sites(double area_m, double isd_m)
{
    const double dy = isd_m * std::sqrt(3.0) / 2.0;
    const double c = area_m / 2.0;
    const int nx = static_cast<int>(std::ceil(c / isd_m)) + 1;
    const int ny = static_cast<int>(std::ceil(c / dy)) + 1;
    std::vector<Point> sites;
    for (int j = -ny; j <= ny; ++j) {
        const double shift = (j & 1) ? 0.5 * isd_m : 0.0;
        for (int i = -nx; i <= nx; ++i) {
            const Point p{c + i * isd_m + shift, c + j * dy};
            if (p.x >= 0.0 && p.x <= area_m && p.y >= 0.0 && p.y <= area_m)
                sites.push_back(p);
        }
    }
    return sites;
}

/// Sites, sectors (cell id = site * sectors + sector) and a Poisson number of
/// uniformly dropped UEs with mean ues_per_cell_mean per cell.
template <class Rng>
Topology build_topology(const NetworkScenario& scenario, Rng& rng)
{
    if (!(scenario.area_m > 0.0) || !(scenario.isd_m > 0.0))
        throw std::domain_error("build_topology: area and inter-site distance must be positive");
    Topology topo;
    topo.sites = hex_sites(scenario.area_m, scenario.isd_m);
    if (topo.sites.empty())
        throw std::domain_error("build_topology: area too small for a single site");

    const int sectors = scenario.sectors_per_site;
    for (std::size_t s = 0; s < topo.sites.size(); ++s) {
        const bool interior = inside_margin(topo.sites[s], scenario.area_m, scenario.edge_margin_m);
        topo.site_interior.push_back(interior);
        for (int k = 0; k < sectors; ++k) {
            topo.cells.push_back(Cell{static_cast<int>(s) * sectors + k, static_cast<int>(s),
                                      360.0 * k / sectors, interior});
        }
    }

    const double mean_ues = scenario.ues_per_cell_mean * static_cast<double>(topo.cells.size());
    const int n_ues = mean_ues > 0.0 ? std::poisson_distribution<int>(mean_ues)(rng) : 0;
    std::uniform_real_distribution<double> coord(0.0, scenario.area_m);
    topo.ues.reserve(static_cast<std::size_t>(n_ues));
    for (int u = 0; u < n_ues; ++u) {
        const double x = coord(rng);
        const double y = coord(rng);
        topo.ues.push_back(Point{x, y});
        topo.ue_interior.push_back(inside_margin(topo.ues.back(), scenario.area_m, scenario.edge_margin_m));
    }
    return topo;
}

/// True when `ue` lies outside the angular wedge served by `cell`.
inline bool outside_sector(const Topology& topo, const Cell& cell, const Point& ue, int sectors_per_site)
{
    if (sectors_per_site <= 1)
        return false;
    const Point& site = topo.sites[static_cast<std::size_t>(cell.site)];
    const double bearing = rad_to_deg(std::atan2(ue.y - site.y, ue.x - site.x));
    const double off = std::abs(wrap_azimuth_deg(bearing - cell.orientation_deg));
    return off > 180.0 / sectors_per_site;
}

} // namespace mmw::net
