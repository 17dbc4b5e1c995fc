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

#include "arraymetrics/signature.hpp"

#include <algorithm>
#include <cmath>

#include "arraymetrics/error.hpp"
#include "arraymetrics/random.hpp"

namespace arraymetrics
{
    namespace
    {
        CVector ula_values(std::size_t m, double spacing, double cosine)
        {
            CVector out(static_cast<Eigen::Index>(m));
            const double scale = 1.0 / std::sqrt(static_cast<double>(m));
            const double step = -2.0 * pi * spacing * cosine;
            for (std::size_t k = 0; k < m; ++k)
                out[static_cast<Eigen::Index>(k)] = std::polar(scale, step * static_cast<double>(k));
            return out;
        }
    }

    void Direction::validate() const
    {
        if (!(azimuth >= -pi && azimuth < pi))
            throw ParameterError("direction: azimuth must lie in [-pi, pi)");
        if (!(elevation >= -pi / 2.0 && elevation <= pi / 2.0))
            throw ParameterError("direction: elevation must lie in [-pi/2, pi/2]");
    }

    double Direction::horizontal_cosine() const { return std::cos(elevation) * std::sin(azimuth); }

    double Direction::vertical_cosine() const { return std::sin(elevation); }

    ChaoticNoise ChaoticNoise::draw(std::size_t m, Seed seed)
    {
        Engine engine(seed);
        ChaoticNoise noise;
        noise.values = complex_normal_matrix(engine, static_cast<Eigen::Index>(m), 1);
        noise.seed = seed;
        return noise;
    }

    SpatialSignature ula_unit_signature(std::size_t m, double spacing, double cosine)
    {
        if (m == 0)
            throw ParameterError("signature: array must have at least one element");
        if (!(spacing > 0.0))
            throw ParameterError("signature: element spacing must be positive");
        return {ula_values(m, spacing, cosine), SignatureKind::nominal_unit, std::nullopt};
    }

    SpatialSignature planar_unit_signature(std::size_t h_count, std::size_t v_count, const Direction &dir)
    {
        if (h_count == 0 || v_count == 0)
            throw ParameterError("signature: array must have at least one element per edge");

        const CVector horizontal = ula_values(h_count, 0.5, dir.horizontal_cosine());
        const CVector vertical = ula_values(v_count, 0.5, dir.vertical_cosine());

        const auto v = static_cast<Eigen::Index>(v_count);
        CVector out(horizontal.size() * v);
        for (Eigen::Index i = 0; i < horizontal.size(); ++i)
            out.segment(i * v, v) = horizontal[i] * vertical;
        return {std::move(out), SignatureKind::nominal_unit, std::nullopt};
    }

    SpatialSignature perturb_signature(const SpatialSignature &e_t, const ChaoticNoise &noise)
    {
        if (e_t.kind != SignatureKind::nominal_unit)
            throw ParameterError("signature: only a nominal unit signature can be perturbed");
        if (e_t.size() != noise.size())
            throw DimensionError("signature: chaotic noise length differs from signature length");

        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        CVector values = e_t.values.array() * (noise.values.array() + 1.0) * inv_sqrt2;
        return {std::move(values), SignatureKind::perturbed_unit, std::nullopt};
    }

    SpatialSignature scale_signature(const SpatialSignature &unit, double sigma_h)
    {
        if (!unit.is_unit())
            throw ParameterError("signature: signature is already scaled");
        if (!(sigma_h > 0.0))
            throw ParameterError("signature: sigma_h must be positive");
        const auto kind = unit.kind == SignatureKind::nominal_unit ? SignatureKind::scaled : SignatureKind::scaled_perturbed;
        return {unit.values * sigma_h, kind, sigma_h};
    }

    double signature_correlation(const SpatialSignature &a, const SpatialSignature &b)
    {
        if (a.size() != b.size())
            throw DimensionError("signature: correlation needs equal lengths");
        const double na = a.values.norm();
        const double nb = b.values.norm();
        if (na == 0.0 || nb == 0.0)
            throw UndefinedCorrelationError("signature: correlation with a zero vector is undefined");
        return std::min(1.0, std::abs(a.values.dot(b.values)) / (na * nb));
    }
}
