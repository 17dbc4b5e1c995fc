// SPDX-License-Identifier: Apache-2.0
//
// arraymetrics: physical-layer authentication with chaotic antenna arrays
// Copyright (C) 2026 The arraymetrics authors
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

#include "arraymetrics/types.hpp"

namespace arraymetrics
{
    using Engine = std::mt19937_64;

    /// SplitMix64 finalizer. Bijective on 64-bit words.
    constexpr std::uint64_t mix64(std::uint64_t z) noexcept
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Child seed for (stream, index) under a parent seed.
    ///
    /// Every random quantity in the library is drawn from an engine seeded through this
    /// function, so results depend only on the master seed and the logical position of a
    /// draw, never on scheduling or thread count.
    constexpr Seed derive_seed(Seed parent, std::uint64_t stream, std::uint64_t index = 0) noexcept
    {
        return mix64(mix64(parent ^ mix64(stream)) + index);
    }

    // Stream identifiers for derive_seed.
    namespace streams
    {
        inline constexpr std::uint64_t geometry = 1;
        inline constexpr std::uint64_t chaotic_noise = 2;
        inline constexpr std::uint64_t pilot = 3;
        inline constexpr std::uint64_t paths = 4;
        inline constexpr std::uint64_t awgn = 5;
        inline constexpr std::uint64_t trial = 6;
        inline constexpr std::uint64_t intruder_noise = 7;
        inline constexpr std::uint64_t intruder_pilot = 8;
        inline constexpr std::uint64_t enrollment = 9;
        inline constexpr std::uint64_t other_paths = 10;
        inline constexpr std::uint64_t intruder_paths = 11;
    }

    /// CN(0, variance) sample: independent N(0, variance/2) real and imaginary parts.
    cplx complex_normal(Engine &engine, double variance = 1.0);

    /// rows x cols matrix of i.i.d. CN(0, variance) entries, filled column by column.
    CMatrix complex_normal_matrix(Engine &engine, Eigen::Index rows, Eigen::Index cols, double variance = 1.0);
}
