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

#include <cstddef>
#include <vector>

#include "arraymetrics/types.hpp"

namespace arraymetrics
{
    /// Pilot length used when none is given. See README for how it was chosen.
    inline constexpr std::size_t default_t_bauds = 2;

    struct PilotConfig
    {
        std::size_t m_antennas = 16;
        std::size_t t_bauds = default_t_bauds;
        double activation_threshold = 0.0; ///< nu_n in [0, 1]
        Seed seed = 0;

        void validate() const;

        friend bool operator==(const PilotConfig &, const PilotConfig &) = default;
    };

    /// M x T pilot. Row m is antenna m, column t is baud t; a zero entry means antenna m is
    /// silent during baud t.
    struct PilotMatrix
    {
        CMatrix values;
        BoolMatrix active_mask;

        Eigen::Index antennas() const noexcept { return values.rows(); }
        Eigen::Index bauds() const noexcept { return values.cols(); }

        friend bool operator==(const PilotMatrix &a, const PilotMatrix &b)
        {
            return a.values.rows() == b.values.rows() && a.values.cols() == b.values.cols() &&
                   a.values == b.values && a.active_mask == b.active_mask;
        }
    };

    /// For every (m, t), column by column: nu ~ U(0,1); active iff nu >= nu_n; active entries get
    /// magnitude sqrt(U(0,1)) and phase U(-pi, pi).
    PilotMatrix generate_pilot_matrix(const PilotConfig &cfg);

    /// Squared Frobenius norm.
    double pilot_energy(const PilotMatrix &x);

    /// Number of active antennas in each baud.
    std::vector<std::size_t> active_count_per_baud(const PilotMatrix &x);
}
