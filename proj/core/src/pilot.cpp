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

#include "arraymetrics/pilot.hpp"

#include <cmath>
#include <random>

#include "arraymetrics/error.hpp"
#include "arraymetrics/random.hpp"

namespace arraymetrics
{
    void PilotConfig::validate() const
    {
        if (m_antennas == 0)
            throw ParameterError("pilot: m_antennas must be at least 1");
        if (t_bauds == 0)
            throw ParameterError("pilot: t_bauds must be at least 1");
        if (!(activation_threshold >= 0.0 && activation_threshold <= 1.0))
            throw ParameterError("pilot: activation threshold must lie in [0, 1]");
    }

    PilotMatrix generate_pilot_matrix(const PilotConfig &cfg)
    {
        cfg.validate();
        const auto rows = static_cast<Eigen::Index>(cfg.m_antennas);
        const auto cols = static_cast<Eigen::Index>(cfg.t_bauds);

        Engine engine(cfg.seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_real_distribution<double> phase(-pi, pi);

        PilotMatrix x{CMatrix::Zero(rows, cols), BoolMatrix::Constant(rows, cols, false)};
        for (Eigen::Index t = 0; t < cols; ++t)
            for (Eigen::Index m = 0; m < rows; ++m)
            {
                if (unit(engine) < cfg.activation_threshold)
                    continue;
                // 1 - U lies in (0, 1], so an active entry is never exactly zero.
                const double magnitude = std::sqrt(1.0 - unit(engine));
                x.values(m, t) = std::polar(magnitude, phase(engine));
                x.active_mask(m, t) = true;
            }
        return x;
    }

    double pilot_energy(const PilotMatrix &x) { return x.values.squaredNorm(); }

    std::vector<std::size_t> active_count_per_baud(const PilotMatrix &x)
    {
        std::vector<std::size_t> counts(static_cast<std::size_t>(x.active_mask.cols()), 0);
        for (Eigen::Index t = 0; t < x.active_mask.cols(); ++t)
            counts[static_cast<std::size_t>(t)] = static_cast<std::size_t>(x.active_mask.col(t).count());
        return counts;
    }
}
