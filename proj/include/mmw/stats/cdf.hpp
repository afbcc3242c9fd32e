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

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmw::stats {

/// Empirical distribution of a scalar metric.
///
/// values() holds the distinct samples in ascending order and
/// probabilities()[i] = P(X <= values()[i]), so both are strictly increasing
/// and the last probability is 1. Percentiles interpolate linearly between
/// order statistics of the full sample.
class EmpiricalCdf {
public:
    std::string metric;
    std::string units;
    std::string scenario_hash;

    /// Builds the CDF. -inf entries are replaced by `floor`, or by the
    /// smallest finite sample when no floor is given.
    explicit EmpiricalCdf(std::span<const double> samples, std::optional<double> floor = std::nullopt)
    {
        if (samples.empty())
            throw std::domain_error("EmpiricalCdf: no samples");
        sorted_.reserve(samples.size());
        bool has_sentinel = false;
        for (double x : samples) {
            if (std::isnan(x) || x == std::numeric_limits<double>::infinity())
                throw std::domain_error("EmpiricalCdf: samples must be finite or -inf");
            if (std::isinf(x))
                has_sentinel = true;
            else
                sorted_.push_back(x);
        }
        if (has_sentinel) {
            double f;
            if (floor) {
                f = *floor;
            } else {
                if (sorted_.empty())
                    throw std::domain_error("EmpiricalCdf: only -inf samples and no floor");
                f = *std::min_element(sorted_.begin(), sorted_.end());
            }
            if (!std::isfinite(f))
                throw std::domain_error("EmpiricalCdf: floor must be finite");
            sorted_.resize(samples.size(), f);
        }
        std::sort(sorted_.begin(), sorted_.end());

        const double n = static_cast<double>(sorted_.size());
        for (std::size_t i = 0; i < sorted_.size(); ++i) {
            if (i + 1 < sorted_.size() && sorted_[i + 1] == sorted_[i])
                continue;
            values_.push_back(sorted_[i]);
            probabilities_.push_back(static_cast<double>(i + 1) / n);
        }
    }

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& probabilities() const { return probabilities_; }
    const std::vector<double>& sorted_samples() const { return sorted_; }
    std::size_t sample_count() const { return sorted_.size(); }

    double min() const { return sorted_.front(); }
    double max() const { return sorted_.back(); }

    double mean() const
    {
        double s = 0.0;
        for (double x : sorted_)
            s += x;
        return s / static_cast<double>(sorted_.size());
    }

    /// P(X <= x).
    double operator()(double x) const
    {
        const auto it = std::upper_bound(values_.begin(), values_.end(), x);
        if (it == values_.begin())
            return 0.0;
        return probabilities_[static_cast<std::size_t>(it - values_.begin()) - 1];
    }

    /// Quantile at p in [0, 1] with linear interpolation between order
    /// statistics at positions p (n - 1). Monotone in p; p = 1 gives max().
    double percentile(double p) const
    {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::domain_error("percentile: p must lie in [0, 1]");
        const double pos = p * static_cast<double>(sorted_.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, sorted_.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return sorted_[lo] + frac * (sorted_[hi] - sorted_[lo]);
    }

    double median() const { return percentile(0.5); }

private:
    std::vector<double> sorted_;
    std::vector<double> values_;
    std::vector<double> probabilities_;
};

} // namespace mmw::stats
