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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "arraymetrics/types.hpp"

namespace arraymetrics
{
    /// 2D point or displacement in meters.
    struct Point
    {
        double x = 0.0;
        double y = 0.0;

        friend bool operator==(const Point &, const Point &) = default;
    };

    /// Four vertices of one patch element, counter-clockwise from bottom-left.
    using Quad = std::array<Point, 4>;

    /// Free-space wavelength at 2.4 GHz.
    inline constexpr double default_lambda0 = 0.125;

    /// Inputs to the chaotic vertex perturbation of a planar patch array.
    struct PerturbationParams
    {
        std::size_t h_count = 4; ///< antennas along the horizontal edge
        std::size_t v_count = 4; ///< antennas along the vertical edge
        double lambda0 = default_lambda0;
        double lambdag = 0.6 * default_lambda0;
        Seed seed = 0;

        std::size_t element_count() const noexcept { return h_count * v_count; }

        /// Support of the per-coordinate displacement law: [-lambdag/4, (lambda0 - lambdag)/4].
        double displacement_min() const noexcept { return -lambdag / 4.0; }
        double displacement_max() const noexcept { return (lambda0 - lambdag) / 4.0; }

        /// Throws ParameterError unless counts are positive and 0 < lambdag < lambda0.
        void validate() const;

        friend bool operator==(const PerturbationParams &, const PerturbationParams &) = default;
    };

    /// Perturbed layout of a chaotic array.
    ///
    /// Elements are indexed m = h * v_count + v, where h is the column along the horizontal
    /// edge and v the row along the vertical edge. This matches the Kronecker ordering of
    /// planar_unit_signature(). Element centers sit on a lambda0/2 grid starting at the
    /// origin; each nominal element is a square of edge lambdag/2.
    struct ArrayGeometry
    {
        PerturbationParams params;
        std::vector<Quad> elements;      ///< final vertex coordinates
        std::vector<Quad> displacements; ///< per-vertex (u_x, u_y)

        std::size_t element_count() const noexcept { return elements.size(); }

        friend bool operator==(const ArrayGeometry &, const ArrayGeometry &) = default;
    };

    /// Unperturbed square of element m.
    Quad nominal_element(const PerturbationParams &params, std::size_t m);

    /// Draws 8 * M independent U(displacement_min, displacement_max) offsets from params.seed.
    /// Draw order: element, vertex, then x before y.
    ArrayGeometry generate_chaotic_geometry(const PerturbationParams &params);

    /// Rebuilds a geometry from stored displacements (vertex = nominal + displacement).
    ArrayGeometry geometry_from_displacements(const PerturbationParams &params, std::vector<Quad> displacements);

    /// Geometry with every displacement zero.
    ArrayGeometry nominal_geometry(const PerturbationParams &params);

    /// True if two non-adjacent edges of the quadrilateral properly cross.
    bool is_self_intersecting(const Quad &quad);

    struct GeometryFinding
    {
        enum class Kind
        {
            displacement_out_of_bounds,
            self_intersecting,
            vertex_mismatch,
            shape_mismatch,
        };

        Kind kind;
        std::size_t element = 0;
        int vertex = -1; ///< -1 when the finding concerns the whole element
        std::string detail;
    };

    struct ValidationReport
    {
        std::vector<GeometryFinding> findings;

        bool clean() const noexcept { return findings.empty(); }
        std::size_t count(GeometryFinding::Kind kind) const noexcept;
    };

    /// Report-only check of displacement bounds, vertex bookkeeping and self-intersection.
    ValidationReport validate_geometry(const ArrayGeometry &geometry);

    /// SVG drawing of the nominal grid (dashed) and perturbed elements (solid).
    /// Output depends only on the geometry, so equal geometries render to identical bytes.
    std::string render_geometry_svg(const ArrayGeometry &geometry);
}
