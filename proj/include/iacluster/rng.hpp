// SPDX-License-Identifier: Apache-2.0
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

#ifndef IACLUSTER_RNG_HPP
#define IACLUSTER_RNG_HPP

#include <cstdint>
#include <random>

namespace iacluster
{

using Rng = std::mt19937_64;

// Independent substreams of one trial. Geometry, fading and precoder draws are kept apart so
// that one factor can be changed while the others stay fixed.
enum class Stream : std::uint64_t
{
    Geometry = 1,
    Fading = 2,
    Precoder = 3,
    Cluster = 4,
};

// splitmix64 finaliser
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed of the substream (master, trial, attempt, stream). Depends on nothing else, so trial
// results do not depend on scheduling.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t trial, std::uint64_t attempt,
                                       Stream stream)
{
    std::uint64_t h = mix64(master);
    h = mix64(h ^ trial);
    h = mix64(h ^ (attempt * 0x100000001b3ULL));
    return mix64(h ^ static_cast<std::uint64_t>(stream));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t trial, std::uint64_t attempt, Stream stream)
{
    return Rng(substream_seed(master, trial, attempt, stream));
}

} // namespace iacluster

#endif
