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

#include <gtest/gtest.h>

#include <regex>

#include "arraymetrics/error.hpp"
#include "arraymetrics/geometry.hpp"
#include "arraymetrics/random.hpp"
#include "oracles.hpp"

using namespace arraymetrics;

namespace
{
    std::vector<Quad> zero_displacements(std::size_t m) { return std::vector<Quad>(m); }
}

TEST(Geometry, ZeroDisplacementEqualsNominalGrid)
{
    PerturbationParams p;
    const ArrayGeometry g = geometry_from_displacements(p, zero_displacements(p.element_count()));
    const ArrayGeometry nominal = nominal_geometry(p);
    EXPECT_EQ(g.elements, nominal.elements);

    // Element centers on a lambda0/2 grid, lambdag/2 squares, CCW from bottom-left.
    for (std::size_t h = 0; h < p.h_count; ++h)
        for (std::size_t v = 0; v < p.v_count; ++v)
        {
            const Quad &q = g.elements[h * p.v_count + v];
            const double cx = 0.5 * p.lambda0 * static_cast<double>(h);
            const double cy = 0.5 * p.lambda0 * static_cast<double>(v);
            const double a = p.lambdag / 4.0;
            EXPECT_DOUBLE_EQ(q[0].x, cx - a);
            EXPECT_DOUBLE_EQ(q[0].y, cy - a);
            EXPECT_DOUBLE_EQ(q[1].x, cx + a);
            EXPECT_DOUBLE_EQ(q[1].y, cy - a);
            EXPECT_DOUBLE_EQ(q[2].x, cx + a);
            EXPECT_DOUBLE_EQ(q[2].y, cy + a);
            EXPECT_DOUBLE_EQ(q[3].x, cx - a);
            EXPECT_DOUBLE_EQ(q[3].y, cy + a);
        }
    EXPECT_TRUE(validate_geometry(g).clean());
}

TEST(Geometry, FourByFourHasSixteenElementsWithinBounds)
{
    PerturbationParams p;
    p.seed = 7;
    const ArrayGeometry g = generate_chaotic_geometry(p);
    ASSERT_EQ(g.elements.size(), 16u);
    ASSERT_EQ(g.displacements.size(), 16u);
    std::size_t vertices = 0;
    for (std::size_t m = 0; m < 16; ++m)
    {
        const Quad nominal = nominal_element(p, m);
        for (int a = 0; a < 4; ++a)
        {
            ++vertices;
            const Point &u = g.displacements[m][a];
            EXPECT_GE(u.x, p.displacement_min());
            EXPECT_LE(u.x, p.displacement_max());
            EXPECT_GE(u.y, p.displacement_min());
            EXPECT_LE(u.y, p.displacement_max());
            // Vertex equals nominal plus displacement exactly.
            EXPECT_EQ(g.elements[m][a].x, nominal[a].x + u.x);
            EXPECT_EQ(g.elements[m][a].y, nominal[a].y + u.y);
        }
    }
    EXPECT_EQ(vertices, 64u);
    EXPECT_EQ(validate_geometry(g).count(GeometryFinding::Kind::displacement_out_of_bounds), 0u);
}

TEST(Geometry, DeterministicPerSeed)
{
    PerturbationParams p;
    p.seed = 11;
    EXPECT_EQ(generate_chaotic_geometry(p), generate_chaotic_geometry(p));
    PerturbationParams q = p;
    q.seed = 12;
    EXPECT_NE(generate_chaotic_geometry(p).elements, generate_chaotic_geometry(q).elements);
}

TEST(Geometry, RejectsInvalidParams)
{
    PerturbationParams p;
    p.lambdag = p.lambda0;
    EXPECT_THROW(generate_chaotic_geometry(p), ParameterError);
    p = {};
    p.h_count = 0;
    EXPECT_THROW(generate_chaotic_geometry(p), ParameterError);
    p = {};
    p.v_count = 0;
    EXPECT_THROW(generate_chaotic_geometry(p), ParameterError);
    p = {};
    p.lambdag = 0.0;
    EXPECT_THROW(generate_chaotic_geometry(p), ParameterError);
}

TEST(Geometry, OutOfBoundsDisplacementIsReported)
{
    PerturbationParams p;
    std::vector<Quad> d = zero_displacements(p.element_count());
    d[5][2].x = p.lambda0;
    const ArrayGeometry g = geometry_from_displacements(p, d);
    const ValidationReport r = validate_geometry(g);
    EXPECT_EQ(r.count(GeometryFinding::Kind::displacement_out_of_bounds), 1u);
    ASSERT_FALSE(r.findings.empty());
    EXPECT_EQ(r.findings.front().element, 5u);
}

TEST(Geometry, SelfIntersectionDetector)
{
    const Quad square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    const Quad bowtie{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}};
    EXPECT_FALSE(is_self_intersecting(square));
    EXPECT_TRUE(is_self_intersecting(bowtie));
}

TEST(Geometry, SelfIntersectionStatisticIsRecorded)
{
    PerturbationParams p;
    std::size_t flagged = 0;
    const std::size_t n = 10000;
    for (std::size_t i = 0; i < n; ++i)
    {
        p.seed = derive_seed(99, streams::geometry, i);
        if (validate_geometry(generate_chaotic_geometry(p)).count(GeometryFinding::Kind::self_intersecting) > 0)
            ++flagged;
    }
    const double fraction = static_cast<double>(flagged) / static_cast<double>(n);
    RecordProperty("self_intersecting_fraction", std::to_string(fraction));
    EXPECT_GE(fraction, 0.0);
    EXPECT_LT(fraction, 1.0);
}

TEST(GeometryProperty, DisplacementMeanMatchesUniformLaw)
{
    PerturbationParams p;
    p.h_count = 2;
    p.v_count = 2;
    const double lo = p.displacement_min();
    const double hi = p.displacement_max();
    double sum = 0.0;
    std::size_t n = 0;
    std::vector<double> sample;
    for (std::size_t i = 0; i < 25000; ++i)
    {
        p.seed = derive_seed(5, streams::geometry, i);
        const ArrayGeometry g = generate_chaotic_geometry(p);
        for (const Quad &q : g.displacements)
            for (const Point &u : q)
            {
                ASSERT_GE(u.x, lo);
                ASSERT_LE(u.x, hi);
                ASSERT_GE(u.y, lo);
                ASSERT_LE(u.y, hi);
                sum += u.x + u.y;
                n += 2;
                if (sample.size() < 100000)
                    sample.push_back(u.x);
            }
    }
    ASSERT_GE(n, 100000u);
    const double tol = 3.0 * (hi - lo) / std::sqrt(12.0 * static_cast<double>(n));
    EXPECT_NEAR(sum / static_cast<double>(n), 0.5 * (lo + hi), tol);
    EXPECT_GT(oracle::ks_uniform_pvalue(sample, lo, hi), 0.01);
}

TEST(GeometryProperty, DisplacementComponentsUncorrelated)
{
    PerturbationParams p;
    p.h_count = 2;
    p.v_count = 2;
    const std::size_t n = 200000;
    // Same vertex x/y, neighbouring vertices, neighbouring elements, first/last element.
    std::vector<double> a0(n), a1(n), b0(n), b1(n), c0(n), c1(n), d0(n), d1(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        p.seed = derive_seed(6, streams::geometry, i);
        const ArrayGeometry g = generate_chaotic_geometry(p);
        a0[i] = g.displacements[0][0].x;
        a1[i] = g.displacements[0][0].y;
        b0[i] = g.displacements[1][1].x;
        b1[i] = g.displacements[1][2].x;
        c0[i] = g.displacements[1][3].y;
        c1[i] = g.displacements[2][0].y;
        d0[i] = g.displacements[0][0].x;
        d1[i] = g.displacements[3][3].y;
    }
    EXPECT_LT(std::abs(oracle::pearson(a0, a1)), 0.01);
    EXPECT_LT(std::abs(oracle::pearson(b0, b1)), 0.01);
    EXPECT_LT(std::abs(oracle::pearson(c0, c1)), 0.01);
    EXPECT_LT(std::abs(oracle::pearson(d0, d1)), 0.01);
}

TEST(GeometrySvg, SixteenSolidElementsAndDashedGrid)
{
    PerturbationParams p;
    p.seed = 3;
    const std::string svg = render_geometry_svg(generate_chaotic_geometry(p));
    const std::regex element(R"(<polygon class="element")");
    const std::regex nominal(R"(<polygon class="nominal")");
    EXPECT_EQ(std::distance(std::sregex_iterator(svg.begin(), svg.end(), element), std::sregex_iterator()), 16);
    EXPECT_EQ(std::distance(std::sregex_iterator(svg.begin(), svg.end(), nominal), std::sregex_iterator()), 16);
    EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
    EXPECT_EQ(svg, render_geometry_svg(generate_chaotic_geometry(p)));
}

TEST(GeometrySvg, ZeroDisplacementOutlinesCoincide)
{
    PerturbationParams p;
    const std::string svg = render_geometry_svg(geometry_from_displacements(p, zero_displacements(p.element_count())));
    const std::regex points(R"re(class="(element|nominal)"[^>]*points="([^"]*)")re");
    std::vector<std::string> elements, nominals;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), points); it != std::sregex_iterator(); ++it)
        ((*it)[1] == "element" ? elements : nominals).push_back((*it)[2]);
    ASSERT_EQ(elements.size(), 16u);
    EXPECT_EQ(elements, nominals);
}
