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

#include "arraymetrics/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "arraymetrics/error.hpp"
#include "arraymetrics/random.hpp"

namespace arraymetrics
{
    namespace
    {
        // Unit offsets of the four vertices around an element center, CCW from bottom-left.
        constexpr std::array<Point, 4> corner_sign{{{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}};

        double cross(const Point &o, const Point &a, const Point &b)
        {
            return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
        }

        bool segments_cross(const Point &p1, const Point &p2, const Point &q1, const Point &q2)
        {
            const double d1 = cross(q1, q2, p1);
            const double d2 = cross(q1, q2, p2);
            const double d3 = cross(p1, p2, q1);
            const double d4 = cross(p1, p2, q2);
            return ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
                   ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
        }

        std::string fmt_mm(double meters)
        {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4f", meters * 1000.0);
            return buf;
        }

        std::string polygon_points(const Quad &quad, double y_flip)
        {
            std::string out;
            for (std::size_t a = 0; a < quad.size(); ++a)
            {
                if (a != 0)
                    out += ' ';
                out += fmt_mm(quad[a].x);
                out += ',';
                out += fmt_mm(y_flip - quad[a].y);
            }
            return out;
        }
    }

    void PerturbationParams::validate() const
    {
        if (h_count == 0 || v_count == 0)
            throw ParameterError("geometry: h_count and v_count must be at least 1");
        if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
            throw ParameterError("geometry: lambda0 must be positive and finite");
        if (!(lambdag > 0.0) || !(lambdag < lambda0))
            throw ParameterError("geometry: guided wavelength must satisfy 0 < lambdag < lambda0");
    }

    Quad nominal_element(const PerturbationParams &params, std::size_t m)
    {
        const std::size_t h = m / params.v_count;
        const std::size_t v = m % params.v_count;
        const double pitch = params.lambda0 / 2.0;
        const double half_edge = params.lambdag / 4.0;
        const Point center{static_cast<double>(h) * pitch, static_cast<double>(v) * pitch};

        Quad quad;
        for (std::size_t a = 0; a < 4; ++a)
            quad[a] = {center.x + corner_sign[a].x * half_edge, center.y + corner_sign[a].y * half_edge};
        return quad;
    }

    ArrayGeometry geometry_from_displacements(const PerturbationParams &params, std::vector<Quad> displacements)
    {
        params.validate();
        if (displacements.size() != params.element_count())
            throw DimensionError("geometry: displacement count does not match h_count * v_count");

        ArrayGeometry geometry;
        geometry.params = params;
        geometry.elements.resize(displacements.size());
        for (std::size_t m = 0; m < displacements.size(); ++m)
        {
            const Quad nominal = nominal_element(params, m);
            for (std::size_t a = 0; a < 4; ++a)
                geometry.elements[m][a] = {nominal[a].x + displacements[m][a].x, nominal[a].y + displacements[m][a].y};
        }
        geometry.displacements = std::move(displacements);
        return geometry;
    }

    ArrayGeometry generate_chaotic_geometry(const PerturbationParams &params)
    {
        params.validate();
        Engine engine(params.seed);
        std::uniform_real_distribution<double> uniform(params.displacement_min(), params.displacement_max());

        std::vector<Quad> displacements(params.element_count());
        for (auto &element : displacements)
            for (auto &vertex : element)
            {
                vertex.x = uniform(engine);
                vertex.y = uniform(engine);
            }
        return geometry_from_displacements(params, std::move(displacements));
    }

    ArrayGeometry nominal_geometry(const PerturbationParams &params)
    {
        params.validate();
        return geometry_from_displacements(params, std::vector<Quad>(params.element_count()));
    }

    bool is_self_intersecting(const Quad &q)
    {
        return segments_cross(q[0], q[1], q[2], q[3]) || segments_cross(q[1], q[2], q[3], q[0]);
    }

    std::size_t ValidationReport::count(GeometryFinding::Kind kind) const noexcept
    {
        return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(),
                                                      [kind](const GeometryFinding &f) { return f.kind == kind; }));
    }

    ValidationReport validate_geometry(const ArrayGeometry &geometry)
    {
        using Kind = GeometryFinding::Kind;
        ValidationReport report;
        const auto &params = geometry.params;

        if (geometry.elements.size() != params.element_count() ||
            geometry.displacements.size() != params.element_count())
        {
            report.findings.push_back({Kind::shape_mismatch, 0, -1, "element count differs from h_count * v_count"});
            return report;
        }

        const double lo = params.displacement_min();
        const double hi = params.displacement_max();
        for (std::size_t m = 0; m < geometry.elements.size(); ++m)
        {
            const Quad nominal = nominal_element(params, m);
            for (int a = 0; a < 4; ++a)
            {
                const Point &u = geometry.displacements[m][a];
                if (u.x < lo || u.x > hi || u.y < lo || u.y > hi)
                    report.findings.push_back({Kind::displacement_out_of_bounds, m, a, "displacement outside the perturbation support"});

                const Point expected{nominal[a].x + u.x, nominal[a].y + u.y};
                if (!(geometry.elements[m][a] == expected))
                    report.findings.push_back({Kind::vertex_mismatch, m, a, "vertex differs from nominal plus displacement"});
            }
            if (is_self_intersecting(geometry.elements[m]))
                report.findings.push_back({Kind::self_intersecting, m, -1, "element outline crosses itself"});
        }
        return report;
    }

    std::string render_geometry_svg(const ArrayGeometry &geometry)
    {
        const auto &params = geometry.params;
        double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
        double max_x = -min_x, max_y = -min_x;
        auto extend = [&](const Quad &q)
        {
            for (const auto &p : q)
            {
                min_x = std::min(min_x, p.x);
                min_y = std::min(min_y, p.y);
                max_x = std::max(max_x, p.x);
                max_y = std::max(max_y, p.y);
            }
        };
        for (std::size_t m = 0; m < geometry.elements.size(); ++m)
        {
            extend(geometry.elements[m]);
            extend(nominal_element(params, m));
        }
        if (geometry.elements.empty())
            min_x = min_y = max_x = max_y = 0.0;

        const double margin = params.lambda0 / 8.0;
        min_x -= margin;
        min_y -= margin;
        max_x += margin;
        max_y += margin;

        // SVG y grows downward; mirror about max_y so the array keeps its physical orientation.
        std::ostringstream svg;
        svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt_mm(min_x) << ' ' << fmt_mm(0.0) << ' '
            << fmt_mm(max_x - min_x) << ' ' << fmt_mm(max_y - min_y) << "\" width=\"" << fmt_mm(max_x - min_x)
            << "mm\" height=\"" << fmt_mm(max_y - min_y) << "mm\">\n";
        svg << "  <title>chaotic array " << params.h_count << "x" << params.v_count << "</title>\n";
        svg << "  <g id=\"nominal\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.3\" stroke-dasharray=\"1.5,1\">\n";
        for (std::size_t m = 0; m < geometry.elements.size(); ++m)
            svg << "    <polygon class=\"nominal\" data-element=\"" << m << "\" points=\""
                << polygon_points(nominal_element(params, m), max_y) << "\"/>\n";
        svg << "  </g>\n";
        svg << "  <g id=\"perturbed\" fill=\"#c8553d\" fill-opacity=\"0.35\" stroke=\"#7a1f10\" stroke-width=\"0.4\">\n";
        for (std::size_t m = 0; m < geometry.elements.size(); ++m)
            svg << "    <polygon class=\"element\" data-element=\"" << m << "\" points=\""
                << polygon_points(geometry.elements[m], max_y) << "\"/>\n";
        svg << "  </g>\n";
        svg << "</svg>\n";
        return svg.str();
    }
}
