// SPDX-License-Identifier: Apache-2.0
//
// mimosched: correlation-based user scheduling and beamforming for massive MIMO
// Copyright (C) 2026 The mimosched authors
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

#ifndef mimosched_rng_H
#define mimosched_rng_H

#include <cstdint>
#include <random>

namespace mimosched
{
    using Rng = std::mt19937_64;

    // SplitMix64 finalizer, used to derive independent sub-seeds from a master seed.
    constexpr std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
    {
        return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
    }

    // Independent streams of one drop. Schemes evaluated on the same drop seed see the same
    // geometry and the same fading, only the pilot noise stream is specific to channel estimation.
    enum class Stream : std::uint64_t
    {
        Geometry = 1,
        Fading = 2,
        Pilot = 3
    };

    inline Rng make_rng(std::uint64_t drop_seed, Stream s)
    {
        return Rng(derive_seed(drop_seed, static_cast<std::uint64_t>(s)));
    }
}

#endif
