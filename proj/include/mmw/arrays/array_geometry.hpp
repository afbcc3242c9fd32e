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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace mmw::arrays {

using cd = std::complex<double>;

/// Uniform planar array in the plane normal to its boresight. Columns run
/// horizontally, rows vertically; element pitch is given in wavelengths.
struct ArrayGeometry {
    int rows = 1;
    int cols = 1;
    double spacing_wavelengths = 0.5;

    int size() const { return rows * cols; }

    /// Physical extent of one side, (n - 1) * pitch.
    double aperture_m(double carrier_frequency_ghz) const
    {
        return (rows - 1) * spacing_wavelengths * wavelength_m(carrier_frequency_ghz);
    }

    void validate() const
    {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("ArrayGeometry: rows and cols must be >= 1");
        if (!(spacing_wavelengths > 0.0))
            throw std::invalid_argument("ArrayGeometry: spacing_wavelengths must be > 0");
    }

    static ArrayGeometry square(int n, double spacing = 0.5) { return ArrayGeometry{n, n, spacing}; }

    friend bool operator==(const ArrayGeometry&, const ArrayGeometry&) = default;
};

/// Unnormalized steering vector. Element (p, q) (column p, row q) has phase
/// 2 pi s (p u + q v) with u = cos(el) sin(az), v = sin(el); index = q * cols + p.
inline Eigen::VectorXcd array_response(const ArrayGeometry& geom, double azimuth_deg, double elevation_deg)
{
    const double az = deg_to_rad(azimuth_deg);
    const double el = deg_to_rad(elevation_deg);
    const double k = 2.0 * kPi * geom.spacing_wavelengths;
    const double u = std::cos(el) * std::sin(az);
    const double v = std::sin(el);

    const cd step_h = std::polar(1.0, k * u);
    const cd step_v = std::polar(1.0, k * v);

    Eigen::VectorXcd out(geom.size());
    cd row_phase(1.0, 0.0);
    for (int q = 0; q < geom.rows; ++q) {
        cd phase = row_phase;
        for (int p = 0; p < geom.cols; ++p) {
            out[q * geom.cols + p] = phase;
            phase *= step_h;
        }
        row_phase *= step_v;
    }
    return out;
}

} // namespace mmw::arrays
