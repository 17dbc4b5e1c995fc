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

#include "arraymetrics/random.hpp"

#include <cmath>

namespace arraymetrics
{
    cplx complex_normal(Engine &engine, double variance)
    {
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
        const double re = normal(engine);
        const double im = normal(engine);
        return {re, im};
    }

    CMatrix complex_normal_matrix(Engine &engine, Eigen::Index rows, Eigen::Index cols, double variance)
    {
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
        CMatrix out(rows, cols);
        cplx *data = out.data();
        for (Eigen::Index i = 0; i < out.size(); ++i)
        {
            const double re = normal(engine);
            const double im = normal(engine);
            data[i] = {re, im};
        }
        return out;
    }
}
