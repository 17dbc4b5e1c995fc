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

#include "arraymetrics/serialization.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>

#include "arraymetrics/error.hpp"

namespace arraymetrics
{
    using nlohmann::json;

    namespace
    {
        const json &member(const json &j, const char *key)
        {
            if (!j.is_object() || !j.contains(key))
                throw SchemaError(std::string("registry: missing field '") + key + "'");
            return j.at(key);
        }

        std::size_t count_field(const json &j, const char *key)
        {
            const json &v = member(j, key);
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
                throw SchemaError(std::string("registry: field '") + key + "' must be a non-negative integer");
            return v.get<std::size_t>();
        }

        Seed seed_field(const json &j, const char *key)
        {
            const json &v = member(j, key);
            if (!v.is_number_unsigned() && !v.is_number_integer())
                throw SchemaError(std::string("registry: field '") + key + "' must be an integer");
            return v.get<Seed>();
        }

        const json &array_of(const json &j, std::size_t expected, const char *what)
        {
            if (!j.is_array() || j.size() != expected)
                throw SchemaError(std::string("registry: ") + what + " has the wrong length");
            return j;
        }
    }

    std::string encode_double(double value)
    {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(value)));
        return buf;
    }

    double decode_double(const json &value)
    {
        if (!value.is_string())
            throw SchemaError("registry: expected a hex-encoded double");
        const auto &text = value.get_ref<const std::string &>();
        if (text.size() != 18 || text[0] != '0' || text[1] != 'x')
            throw SchemaError("registry: malformed hex double '" + text + "'");
        std::uint64_t bits = 0;
        const auto [end, ec] = std::from_chars(text.data() + 2, text.data() + text.size(), bits, 16);
        if (ec != std::errc() || end != text.data() + text.size())
            throw SchemaError("registry: malformed hex double '" + text + "'");
        return std::bit_cast<double>(bits);
    }

    json encode_complex(cplx value) { return json::array({encode_double(value.real()), encode_double(value.imag())}); }

    cplx decode_complex(const json &value)
    {
        array_of(value, 2, "complex value");
        return {decode_double(value[0]), decode_double(value[1])};
    }

    void to_json(json &j, const PerturbationParams &params)
    {
        j = json{{"h_count", params.h_count},
                 {"v_count", params.v_count},
                 {"lambda0", encode_double(params.lambda0)},
                 {"lambdag", encode_double(params.lambdag)},
                 {"seed", params.seed}};
    }

    void from_json(const json &j, PerturbationParams &params)
    {
        params.h_count = count_field(j, "h_count");
        params.v_count = count_field(j, "v_count");
        params.lambda0 = decode_double(member(j, "lambda0"));
        params.lambdag = decode_double(member(j, "lambdag"));
        params.seed = seed_field(j, "seed");
    }

    void to_json(json &j, const ArrayGeometry &geometry)
    {
        json elements = json::array();
        for (const auto &quad : geometry.displacements)
        {
            json vertices = json::array();
            for (const auto &u : quad)
                vertices.push_back(json::array({encode_double(u.x), encode_double(u.y)}));
            elements.push_back(std::move(vertices));
        }
        j = json{{"params", geometry.params}, {"displacements", std::move(elements)}};
    }

    void from_json(const json &j, ArrayGeometry &geometry)
    {
        const auto params = member(j, "params").get<PerturbationParams>();
        try
        {
            params.validate();
        }
        catch (const ParameterError &e)
        {
            throw SchemaError(std::string("registry: invalid geometry parameters: ") + e.what());
        }

        const json &elements = array_of(member(j, "displacements"), params.element_count(), "geometry displacements");
        std::vector<Quad> displacements(params.element_count());
        for (std::size_t m = 0; m < displacements.size(); ++m)
        {
            const json &vertices = array_of(elements[m], 4, "element vertex list");
            for (std::size_t a = 0; a < 4; ++a)
            {
                const json &u = array_of(vertices[a], 2, "vertex displacement");
                displacements[m][a] = {decode_double(u[0]), decode_double(u[1])};
            }
        }
        geometry = geometry_from_displacements(params, std::move(displacements));
    }

    void to_json(json &j, const ChaoticNoise &noise)
    {
        json values = json::array();
        for (Eigen::Index i = 0; i < noise.values.size(); ++i)
            values.push_back(encode_complex(noise.values[i]));
        j = json{{"seed", noise.seed}, {"values", std::move(values)}};
    }

    void from_json(const json &j, ChaoticNoise &noise)
    {
        noise.seed = seed_field(j, "seed");
        const json &values = member(j, "values");
        if (!values.is_array())
            throw SchemaError("registry: chaotic noise values must be an array");
        noise.values.resize(static_cast<Eigen::Index>(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i)
            noise.values[static_cast<Eigen::Index>(i)] = decode_complex(values[i]);
    }

    void to_json(json &j, const PilotConfig &cfg)
    {
        j = json{{"m_antennas", cfg.m_antennas},
                 {"t_bauds", cfg.t_bauds},
                 {"activation_threshold", encode_double(cfg.activation_threshold)},
                 {"seed", cfg.seed}};
    }

    void from_json(const json &j, PilotConfig &cfg)
    {
        cfg.m_antennas = count_field(j, "m_antennas");
        cfg.t_bauds = count_field(j, "t_bauds");
        cfg.activation_threshold = decode_double(member(j, "activation_threshold"));
        cfg.seed = seed_field(j, "seed");
    }

    void to_json(json &j, const PilotMatrix &pilot)
    {
        json values = json::array();
        json mask = json::array();
        for (Eigen::Index m = 0; m < pilot.values.rows(); ++m)
        {
            json row = json::array();
            std::string bits;
            for (Eigen::Index t = 0; t < pilot.values.cols(); ++t)
            {
                row.push_back(encode_complex(pilot.values(m, t)));
                bits += pilot.active_mask(m, t) ? '1' : '0';
            }
            values.push_back(std::move(row));
            mask.push_back(std::move(bits));
        }
        j = json{{"rows", pilot.values.rows()},
                 {"cols", pilot.values.cols()},
                 {"values", std::move(values)},
                 {"active_mask", std::move(mask)}};
    }

    void from_json(const json &j, PilotMatrix &pilot)
    {
        const auto rows = count_field(j, "rows");
        const auto cols = count_field(j, "cols");
        const json &values = array_of(member(j, "values"), rows, "pilot rows");
        const json &mask = array_of(member(j, "active_mask"), rows, "pilot mask rows");

        pilot.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        pilot.active_mask.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        for (std::size_t m = 0; m < rows; ++m)
        {
            const json &row = array_of(values[m], cols, "pilot row");
            if (!mask[m].is_string() || mask[m].get_ref<const std::string &>().size() != cols)
                throw SchemaError("registry: pilot mask row has the wrong length");
            const auto &bits = mask[m].get_ref<const std::string &>();
            for (std::size_t t = 0; t < cols; ++t)
            {
                const auto r = static_cast<Eigen::Index>(m);
                const auto c = static_cast<Eigen::Index>(t);
                pilot.values(r, c) = decode_complex(row[t]);
                if (bits[t] != '0' && bits[t] != '1')
                    throw SchemaError("registry: pilot mask must contain only '0' and '1'");
                pilot.active_mask(r, c) = bits[t] == '1';
                if (pilot.active_mask(r, c) != (pilot.values(r, c) != cplx(0.0, 0.0)))
                    throw SchemaError("registry: pilot mask disagrees with zero entries");
            }
        }
    }

    void to_json(json &j, const ChannelRealization &h)
    {
        auto direction = [](const Direction &d) { return json{{"azimuth", d.azimuth}, {"elevation", d.elevation}}; };
        json paths = json::array();
        for (const auto &p : h.paths)
            paths.push_back(json{{"gain", {p.gain.real(), p.gain.imag()}},
                                 {"tx_dir", direction(p.tx_dir)},
                                 {"rx_dir", direction(p.rx_dir)}});
        json matrix = json::array();
        for (Eigen::Index r = 0; r < h.matrix.rows(); ++r)
        {
            json row = json::array();
            for (Eigen::Index c = 0; c < h.matrix.cols(); ++c)
                row.push_back({h.matrix(r, c).real(), h.matrix(r, c).imag()});
            matrix.push_back(std::move(row));
        }
        j = json{{"n_seraph", h.matrix.rows()},
                 {"m_antennas", h.matrix.cols()},
                 {"sigma_h", h.sigma_h},
                 {"tx_kind", h.tx_kind == TxSignatureKind::perturbed ? "perturbed" : "nominal"},
                 {"paths", std::move(paths)},
                 {"matrix", std::move(matrix)}};
    }
}
