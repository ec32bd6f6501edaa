// SPDX-License-Identifier: Apache-2.0
//
// beamsim C++ library for beam domain massive MIMO channel modelling,
// per-beam synchronization and beam scheduling simulation
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

#ifndef beamsim_common_H
#define beamsim_common_H

#include <cstdint>
#include <random>

namespace beamsim
{

// Speed of light in m/s
constexpr double speed_of_light = 299792458.0;

// SplitMix64 step; used to derive independent substream seeds so that trial
// counts can change without perturbing earlier trials.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream)
{
    return splitmix64(splitmix64(master) ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 0x193a6754ULL));
}

inline std::mt19937_64 substream_rng(std::uint64_t master, std::uint64_t stream)
{
    return std::mt19937_64(substream_seed(master, stream));
}

} // namespace beamsim

#endif
