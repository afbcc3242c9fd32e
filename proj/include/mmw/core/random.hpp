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

#include <cstdint>
#include <random>

namespace mmw {

/// Random stream used throughout the simulator. Every sampling routine takes
/// a reference to one; results depend only on the stream state.
using RandomStream = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for an independent sub-stream (e.g. one Monte Carlo drop).
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_index)
{
    return splitmix64(splitmix64(master_seed) ^ splitmix64(stream_index + 0x632be59bd9b4e019ULL));
}

inline RandomStream make_stream(std::uint64_t master_seed, std::uint64_t stream_index)
{
    return RandomStream(derive_seed(master_seed, stream_index));
}

/// Zero-mean Laplacian draw with unit scale parameter.
template <class Rng>
double sample_laplacian(Rng& rng)
{
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    double x = u(rng);
    while (x == -0.5)
        x = u(rng);
    return x < 0.0 ? std::log1p(2.0 * x) : -std::log1p(-2.0 * x);
}

} // namespace mmw
