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

#include <algorithm>
#include <cmath>
#include <concepts>
#include <random>
#include <stdexcept>
#include <string_view>

namespace mmw::channel {

enum class LinkState { los, nlos, outage };

inline std::string_view to_string(LinkState s)
{
    switch (s) {
    case LinkState::los: return "LOS";
    case LinkState::nlos: return "NLOS";
    case LinkState::outage: return "Outage";
    }
    return "?";
}

/// Probability that a link is undetectable as a function of distance.
///
/// HardThreshold: every link longer than `threshold_m` is in outage, shorter
/// links never are. SoftCurve: p_out(d) = max(0, 1 - exp(-a d + b)), clamped
/// to [0, 1]. With a >= 0 the curve is non-decreasing in d.
struct OutageModel {
    enum class Kind { hard_threshold, soft_curve };

    Kind kind = Kind::hard_threshold;
    double threshold_m = 175.0;
    // Soft parameters default to the curve through 20% at 80 m and 50% at
    // 175 m, so selecting soft_curve alone gives soft_default().
    double soft_a = 0.004947406623639322; // 1/m
    double soft_b = 0.17264897857693606;

    static OutageModel hard(double threshold_m = 175.0)
    {
        OutageModel m;
        m.kind = Kind::hard_threshold;
        m.threshold_m = threshold_m;
        return m;
    }

    static OutageModel soft(double a, double b)
    {
        OutageModel m;
        m.kind = Kind::soft_curve;
        m.soft_a = a;
        m.soft_b = b;
        return m;
    }

    /// Soft curve through two (distance, outage probability) anchors.
    static OutageModel soft_through(double d1, double p1, double d2, double p2)
    {
        if (!(d2 > d1) || !(p1 >= 0.0 && p1 < 1.0) || !(p2 > p1 && p2 < 1.0))
            throw std::invalid_argument("soft outage anchors must be increasing and below 1");
        const double a = (std::log(1.0 - p1) - std::log(1.0 - p2)) / (d2 - d1);
        const double b = std::log(1.0 - p1) + a * d1;
        return soft(a, b);
    }

    /// Default soft curve: 20% outage at 80 m and 50% at 175 m.
    static OutageModel soft_default() { return soft_through(80.0, 0.20, 175.0, 0.50); }

    double probability(double distance_m) const
    {
        if (kind == Kind::hard_threshold)
            return distance_m > threshold_m ? 1.0 : 0.0;
        const double p = 1.0 - std::exp(-soft_a * distance_m + soft_b);
        return std::clamp(p, 0.0, 1.0);
    }

    void validate() const
    {
        if (kind == Kind::hard_threshold && !(threshold_m >= 0.0))
            throw std::invalid_argument("OutageModel: threshold_m must be >= 0");
        if (kind == Kind::soft_curve && (!(soft_a >= 0.0) || !std::isfinite(soft_b)))
            throw std::invalid_argument("OutageModel: soft_a must be >= 0 and soft_b finite");
    }

    friend bool operator==(const OutageModel&, const OutageModel&) = default;
};

/// LOS probability as a function of distance. `umi` uses
/// min(d_B/d, 1)(1 - exp(-d/d_B)) + exp(-d/d_B).
struct LosModel {
    enum class Kind { nlos_only, umi };

    Kind kind = Kind::umi;
    double breakpoint_m = 18.0;

    static LosModel nlos_only() { return LosModel{Kind::nlos_only, 18.0}; }
    static LosModel umi(double breakpoint_m = 18.0) { return LosModel{Kind::umi, breakpoint_m}; }

    double operator()(double distance_m) const
    {
        if (kind == Kind::nlos_only)
            return 0.0;
        const double e = std::exp(-distance_m / breakpoint_m);
        return std::min(breakpoint_m / distance_m, 1.0) * (1.0 - e) + e;
    }

    void validate() const
    {
        if (kind == Kind::umi && !(breakpoint_m > 0.0))
            throw std::invalid_argument("LosModel: breakpoint_m must be > 0");
    }

    friend bool operator==(const LosModel&, const LosModel&) = default;
};

namespace detail {

// Bernoulli draw that consumes no randomness for degenerate probabilities.
template <class Rng>
bool draw_event(double p, Rng& rng)
{
    if (p <= 0.0)
        return false;
    if (p >= 1.0)
        return true;
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

} // namespace detail

/// Draws outage first, then LOS/NLOS for a surviving link.
template <class LosFn, class Rng>
    requires std::invocable<const LosFn&, double>
LinkState sample_link_state(double distance_m, const OutageModel& outage, const LosFn& los_probability,
                            Rng& rng)
{
    mmw::detail::require_positive(distance_m, "distance");
    if (detail::draw_event(outage.probability(distance_m), rng))
        return LinkState::outage;
    return detail::draw_event(los_probability(distance_m), rng) ? LinkState::los : LinkState::nlos;
}

} // namespace mmw::channel
