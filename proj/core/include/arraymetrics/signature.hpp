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
#include <optional>

#include "arraymetrics/types.hpp"

namespace arraymetrics
{
    /// Transmit or receive direction in radians.
    struct Direction
    {
        double azimuth = 0.0;   ///< [-pi, pi)
        double elevation = 0.0; ///< [-pi/2, pi/2]

        /// Throws ParameterError outside the documented ranges.
        void validate() const;

        /// Directional cosine along the horizontal array edge.
        double horizontal_cosine() const;
        /// Directional cosine along the vertical array edge.
        double vertical_cosine() const;
    };

    enum class SignatureKind
    {
        nominal_unit,     ///< e_t: steering vector of the unmodified array
        perturbed_unit,   ///< e_n: steering vector after chaotic perturbation
        scaled,           ///< h = sigma_h * e_t
        scaled_perturbed, ///< sigma_h * e_n
    };

    struct SpatialSignature
    {
        CVector values;
        SignatureKind kind = SignatureKind::nominal_unit;
        std::optional<double> sigma_h; ///< set for the scaled kinds

        Eigen::Index size() const noexcept { return values.size(); }
        bool is_unit() const noexcept
        {
            return kind == SignatureKind::nominal_unit || kind == SignatureKind::perturbed_unit;
        }
    };

    /// Per-element CN(0, 1) perturbation of a device's signature. Stored verbatim at enrollment.
    struct ChaoticNoise
    {
        CVector values;
        Seed seed = 0;

        Eigen::Index size() const noexcept { return values.size(); }

        /// Draws m i.i.d. CN(0, 1) values from seed.
        static ChaoticNoise draw(std::size_t m, Seed seed);
    };

    /// (1/sqrt(m)) [1, exp(-j 2 pi s c), ..., exp(-j 2 pi (m-1) s c)] for spacing s (in
    /// wavelengths) and directional cosine c.
    SpatialSignature ula_unit_signature(std::size_t m, double spacing, double cosine);

    /// Half-wavelength planar array: kron(horizontal ULA, vertical ULA), entry h * v_count + v.
    SpatialSignature planar_unit_signature(std::size_t h_count, std::size_t v_count, const Direction &dir);

    /// e_n = e_t (.) (1 + noise) / sqrt(2), the unit-convention form of h_n = (h + sigma_h noise (.) e_t) / sqrt(2).
    SpatialSignature perturb_signature(const SpatialSignature &e_t, const ChaoticNoise &noise);

    /// sigma_h times a unit signature.
    SpatialSignature scale_signature(const SpatialSignature &unit, double sigma_h);

    /// |<a, b>| / (||a|| ||b||), in [0, 1].
    double signature_correlation(const SpatialSignature &a, const SpatialSignature &b);
}
