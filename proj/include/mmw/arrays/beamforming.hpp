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

#include "mmw/arrays/array_geometry.hpp"
#include "mmw/channel/channel.hpp"
#include "mmw/core/units.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mmw::arrays {

enum class ArrayEnd { tx, rx };

/// Long-term beamforming weights for one link. `rx_beams` holds `n_beams`
/// orthonormal receive directions (one per column) whose powers are added
/// non-coherently; the transmit side uses a single direction.
struct BeamformerState {
    Eigen::VectorXcd tx_weights;
    Eigen::MatrixXcd rx_beams;
    int n_beams = 1;

    Eigen::VectorXcd rx_weights() const { return rx_beams.col(0); }
};

/// Steering vectors of every ray at one end, one column per ray.
inline Eigen::MatrixXcd steering_matrix(std::span<const channel::Ray> rays, const ArrayGeometry& geom, ArrayEnd end)
{
    Eigen::MatrixXcd a(geom.size(), static_cast<Eigen::Index>(rays.size()));
    for (std::size_t r = 0; r < rays.size(); ++r) {
        const auto& ray = rays[r];
        a.col(static_cast<Eigen::Index>(r)) =
            end == ArrayEnd::tx ? array_response(geom, ray.tx_azimuth_deg, ray.tx_elevation_deg)
                                : array_response(geom, ray.rx_azimuth_deg, ray.rx_elevation_deg);
    }
    return a;
}

/// Spatial covariance at one end averaged over subpath phases and normalised
/// per element of the opposite array: sum_r p_r a_r a_r^H. Its trace equals
/// the number of elements at this end.
inline Eigen::MatrixXcd long_term_covariance(const channel::ChannelRealization& realization, ArrayEnd end)
{
    if (realization.in_outage())
        throw std::logic_error("long_term_covariance: link is in outage");
    const auto rays = channel::rays_of(realization.clusters);
    const ArrayGeometry& geom = end == ArrayEnd::tx ? realization.tx_geometry : realization.rx_geometry;
    const Eigen::MatrixXcd a = steering_matrix(rays, geom, end);
    Eigen::VectorXd p(static_cast<Eigen::Index>(rays.size()));
    for (std::size_t r = 0; r < rays.size(); ++r)
        p[static_cast<Eigen::Index>(r)] = rays[r].power;
    return a * p.asDiagonal() * a.adjoint();
}

inline bool is_hermitian(const Eigen::MatrixXcd& m, double rel_tol = 1e-9)
{
    if (m.rows() != m.cols())
        return false;
    const double scale = std::max(1.0, m.norm());
    return (m - m.adjoint()).norm() <= rel_tol * scale;
}

/// Eigenvectors of the `count` largest eigenvalues, strongest first.
inline Eigen::MatrixXcd top_eigenvectors(const Eigen::MatrixXcd& cov, int count, Eigen::VectorXd* values = nullptr)
{
    if (!is_hermitian(cov))
        throw std::domain_error("covariance must be Hermitian");
    if (count < 1 || count > cov.rows())
        throw std::domain_error("requested eigenvector count out of range");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(cov);
    const Eigen::Index n = cov.rows();
    Eigen::MatrixXcd out(n, count);
    if (values)
        values->resize(count);
    for (int i = 0; i < count; ++i) {
        out.col(i) = eig.eigenvectors().col(n - 1 - i);
        if (values)
            (*values)[i] = eig.eigenvalues()[n - 1 - i];
    }
    return out;
}

/// Principal eigenvector of the transmit covariance and the top `n_beams`
/// eigenvectors of the receive covariance.
inline BeamformerState eigen_beamformer(const Eigen::MatrixXcd& cov_tx, const Eigen::MatrixXcd& cov_rx, int n_beams)
{
    if (n_beams < 1)
        throw std::domain_error("n_beams must be >= 1");
    BeamformerState bf;
    bf.tx_weights = top_eigenvectors(cov_tx, 1).col(0);
    bf.rx_beams = top_eigenvectors(cov_rx, std::min<int>(n_beams, static_cast<int>(cov_rx.rows())));
    bf.n_beams = static_cast<int>(bf.rx_beams.cols());
    return bf;
}

/// Above this size principal_directions tries Lanczos before a dense solve.
inline constexpr Eigen::Index kDenseEigenLimit = 24;

/// Top `count` eigenvectors of B B^H by Lanczos with full
/// reorthogonalisation, started from B * 1. Returns nothing when the Krylov
/// space closes or fails to converge before `count` Ritz pairs have residual
/// below rel_tol * theta_max; callers then use a dense solver.
inline std::optional<Eigen::MatrixXcd> lanczos_top_eigenvectors(const Eigen::MatrixXcd& b, int count,
                                                                double rel_tol = 1e-11)
{
    const Eigen::Index n = b.rows();
    const Eigen::Index max_steps = std::min<Eigen::Index>(n, b.cols());
    if (count < 1 || count >= max_steps)
        return std::nullopt;

    Eigen::MatrixXcd q(n, max_steps + 1);
    Eigen::VectorXcd v = b.rowwise().sum();
    double norm = v.norm();
    if (!(norm > 0.0))
        return std::nullopt;
    q.col(0) = v / norm;

    std::vector<double> alpha;
    std::vector<double> beta;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz;
    Eigen::VectorXcd w(n);
    Eigen::VectorXcd tmp(b.cols());
    for (Eigen::Index j = 0; j < max_steps; ++j) {
        tmp.noalias() = b.adjoint() * q.col(j);
        w.noalias() = b * tmp;
        alpha.push_back(q.col(j).dot(w).real());
        // Two passes of classical Gram-Schmidt against the whole basis.
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::VectorXcd c = q.leftCols(j + 1).adjoint() * w;
            w.noalias() -= q.leftCols(j + 1) * c;
        }
        const double bj = w.norm();
        const auto m = static_cast<Eigen::Index>(alpha.size());
        if (m >= count) {
            Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
            Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1))
                                        : Eigen::VectorXd();
            ritz.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
            const double theta_max = ritz.eigenvalues()[m - 1];
            bool converged = theta_max > 0.0;
            for (int i = 0; i < count && converged; ++i)
                converged = std::abs(bj * ritz.eigenvectors()(m - 1, m - 1 - i)) <= rel_tol * theta_max;
            if (converged) {
                Eigen::MatrixXcd out(n, count);
                for (int i = 0; i < count; ++i) {
                    out.col(i) = q.leftCols(m) * ritz.eigenvectors().col(m - 1 - i).cast<std::complex<double>>();
                    out.col(i).normalize();
                }
                return out;
            }
        }
        if (!(bj > 1e-13 * std::sqrt(std::abs(alpha.front()) + 1.0)))
            return std::nullopt; // invariant subspace smaller than needed
        beta.push_back(bj);
        q.col(j + 1) = w / bj;
    }
    return std::nullopt;
}

/// Top `count` eigenvectors of sum_r p_r a_r a_r^H computed directly from the
/// rays. When there are fewer rays than elements the decomposition runs on the
/// (rays x rays) Gram matrix instead, which has the same non-zero spectrum.
inline Eigen::MatrixXcd principal_directions(std::span<const channel::Ray> rays, const ArrayGeometry& geom,
                                             ArrayEnd end, int count)
{
    const Eigen::Index n = geom.size();
    const auto r = static_cast<Eigen::Index>(rays.size());
    count = std::min<int>(count, static_cast<int>(n));
    if (r == 0)
        throw std::domain_error("principal_directions: no rays");

    // All rays at one elevation: every steering vector is a_v (x) a_h(u) with a
    // common vertical factor, so the covariance is (a_v a_v^H) (x) C_h and its
    // non-zero eigenvectors are a_v / |a_v| (x) (eigenvectors of C_h).
    auto elevation = [&](const channel::Ray& ray) {
        return end == ArrayEnd::tx ? ray.tx_elevation_deg : ray.rx_elevation_deg;
    };
    const double el0 = elevation(rays[0]);
    const bool common_elevation =
        geom.rows > 1 && count <= geom.cols &&
        std::all_of(rays.begin(), rays.end(), [&](const channel::Ray& ray) { return elevation(ray) == el0; });
    if (common_elevation) {
        const ArrayGeometry row{1, geom.cols, geom.spacing_wavelengths};
        const Eigen::MatrixXcd horizontal = principal_directions(rays, row, end, count);
        const ArrayGeometry column{geom.rows, 1, geom.spacing_wavelengths};
        Eigen::VectorXcd vertical = array_response(column, 0.0, el0);
        vertical /= vertical.norm();
        Eigen::MatrixXcd out(n, count);
        for (int i = 0; i < count; ++i)
            for (int q = 0; q < geom.rows; ++q)
                out.col(i).segment(q * geom.cols, geom.cols) = vertical[q] * horizontal.col(i);
        return out;
    }
    Eigen::MatrixXcd b = steering_matrix(rays, geom, end);
    for (Eigen::Index i = 0; i < r; ++i)
        b.col(i) *= std::sqrt(rays[static_cast<std::size_t>(i)].power);

    if (std::min(n, r) > kDenseEigenLimit)
        if (auto fast = lanczos_top_eigenvectors(b, count))
            return *std::move(fast);
    if (r >= n || count > r) {
        const Eigen::MatrixXcd cov = b * b.adjoint();
        return top_eigenvectors(cov, count);
    }
    const Eigen::MatrixXcd gram = b.adjoint() * b;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    Eigen::MatrixXcd out(n, count);
    for (int i = 0; i < count; ++i) {
        const double lambda = eig.eigenvalues()[r - 1 - i];
        if (!(lambda > 1e-12 * std::max(1.0, eig.eigenvalues()[r - 1]))) {
            // Rank-deficient: fall back to the full covariance.
            const Eigen::MatrixXcd cov = b * b.adjoint();
            return top_eigenvectors(cov, count);
        }
        out.col(i) = b * eig.eigenvectors().col(r - 1 - i) / std::sqrt(lambda);
    }
    return out;
}

/// Same state as eigen_beamformer on the link covariances, without forming
/// them explicitly.
inline BeamformerState beamformer_from_rays(std::span<const channel::Ray> rays, const ArrayGeometry& tx,
                                            const ArrayGeometry& rx, int n_beams)
{
    if (n_beams < 1)
        throw std::domain_error("n_beams must be >= 1");
    if (rays.empty())
        throw std::domain_error("beamformer_from_rays: no rays");
    BeamformerState bf;
    bf.tx_weights = principal_directions(rays, tx, ArrayEnd::tx, 1).col(0);
    bf.rx_beams = principal_directions(rays, rx, ArrayEnd::rx, n_beams);
    bf.n_beams = static_cast<int>(bf.rx_beams.cols());
    return bf;
}

/// Evaluates sum_b |w_b^H a(az, el)|^2 for a fixed set of beams without
/// materialising the steering vector: a = a_v (x) a_h, so each projection is
/// a_v^T conj(W_b) a_h with W_b the beam reshaped to rows x cols.
class BeamProjector {
public:
    BeamProjector(const ArrayGeometry& geom, const Eigen::MatrixXcd& beams)
        : geom_(geom), h_(geom.cols), v_(geom.rows), t_(geom.rows)
    {
        if (beams.rows() != geom.size())
            throw std::domain_error("beam length does not match the array");
        for (Eigen::Index b = 0; b < beams.cols(); ++b) {
            Eigen::MatrixXcd w(geom.rows, geom.cols);
            for (int q = 0; q < geom.rows; ++q)
                for (int p = 0; p < geom.cols; ++p)
                    w(q, p) = std::conj(beams(q * geom.cols + p, b));
            weights_.push_back(std::move(w));
        }
    }

    double power(double azimuth_deg, double elevation_deg)
    {
        const double az = deg_to_rad(azimuth_deg);
        const double el = deg_to_rad(elevation_deg);
        const double k = 2.0 * kPi * geom_.spacing_wavelengths;
        fill_phasors(h_, std::polar(1.0, k * std::cos(el) * std::sin(az)));
        fill_phasors(v_, std::polar(1.0, k * std::sin(el)));
        double total = 0.0;
        for (const auto& w : weights_) {
            t_.noalias() = w * h_;
            total += std::norm(v_.cwiseProduct(t_).sum());
        }
        return total;
    }

private:
    static void fill_phasors(Eigen::VectorXcd& out, cd step)
    {
        cd phase(1.0, 0.0);
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            out[i] = phase;
            phase *= step;
        }
    }

    ArrayGeometry geom_;
    std::vector<Eigen::MatrixXcd> weights_;
    Eigen::VectorXcd h_;
    Eigen::VectorXcd v_;
    Eigen::VectorXcd t_;
};

/// sum_r p_r (sum_i |u_i^H a_tx,r|^2) (sum_j |w_j^H a_rx,r|^2) for transmit
/// beams u_i and receive beams w_j (columns), in linear units.
inline double expected_beam_power(std::span<const channel::Ray> rays, const ArrayGeometry& tx_geom,
                                  const ArrayGeometry& rx_geom, const Eigen::MatrixXcd& tx_beams,
                                  const Eigen::MatrixXcd& rx_beams)
{
    if (tx_beams.rows() != tx_geom.size() || rx_beams.rows() != rx_geom.size())
        throw std::domain_error("beamformer dimensions do not match the arrays");
    BeamProjector tx(tx_geom, tx_beams);
    BeamProjector rx(rx_geom, rx_beams);
    double total = 0.0;
    for (const auto& ray : rays)
        total += ray.power * tx.power(ray.tx_azimuth_deg, ray.tx_elevation_deg) *
                 rx.power(ray.rx_azimuth_deg, ray.rx_elevation_deg);
    return total;
}

/// Long-term beamformed gain of a link in dB.
inline double link_gain(const channel::ChannelRealization& realization, const BeamformerState& bf)
{
    if (realization.in_outage())
        throw std::logic_error("link_gain: link is in outage");
    const auto rays = channel::rays_of(realization.clusters);
    return linear_to_db(
        expected_beam_power(rays, realization.tx_geometry, realization.rx_geometry, bf.tx_weights, bf.rx_beams));
}

} // namespace mmw::arrays
