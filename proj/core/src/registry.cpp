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

#include "arraymetrics/registry.hpp"

#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

#include "arraymetrics/error.hpp"
#include "arraymetrics/random.hpp"
#include "arraymetrics/serialization.hpp"

namespace arraymetrics
{
    using nlohmann::json;

    namespace
    {
        bool same_values(const CVector &a, const CVector &b) { return a.size() == b.size() && a == b; }

        json profile_to_json(const DeviceProfile &p)
        {
            return json{{"device_id", p.device_id},
                        {"pilot_config", p.pilot_config},
                        {"geometry", p.geometry},
                        {"chaotic_noise", p.chaotic_noise},
                        {"pilot", p.pilot},
                        {"enrolled_at", p.enrolled_at}};
        }

        DeviceProfile profile_from_json(const json &j)
        {
            if (!j.is_object())
                throw SchemaError("registry: device entry must be an object");
            for (const char *key : {"device_id", "pilot_config", "geometry", "chaotic_noise", "pilot", "enrolled_at"})
                if (!j.contains(key))
                    throw SchemaError(std::string("registry: device entry is missing '") + key + "'");
            if (!j.at("device_id").is_string() || !j.at("enrolled_at").is_string())
                throw SchemaError("registry: device_id and enrolled_at must be strings");

            DeviceProfile p;
            p.device_id = j.at("device_id").get<std::string>();
            p.pilot_config = j.at("pilot_config").get<PilotConfig>();
            p.geometry = j.at("geometry").get<ArrayGeometry>();
            p.chaotic_noise = j.at("chaotic_noise").get<ChaoticNoise>();
            p.pilot = j.at("pilot").get<PilotMatrix>();
            p.enrolled_at = j.at("enrolled_at").get<std::string>();
            try
            {
                p.validate();
            }
            catch (const RegistryError &e)
            {
                throw SchemaError(e.what());
            }
            return p;
        }
    }

    TransmitArray DeviceProfile::transmit_array() const { return TransmitArray::perturbed(shape(), chaotic_noise); }

    void DeviceProfile::validate() const
    {
        if (device_id.empty())
            throw RegistryError("registry: device id must not be empty");
        const auto m = static_cast<Eigen::Index>(element_count());
        if (m == 0 || geometry.params.element_count() != element_count())
            throw RegistryError("registry: geometry of '" + device_id + "' is inconsistent");
        if (chaotic_noise.size() != m)
            throw RegistryError("registry: chaotic noise length of '" + device_id + "' differs from element count");
        if (pilot.values.rows() != m || pilot.active_mask.rows() != m ||
            pilot.active_mask.cols() != pilot.values.cols() || pilot.values.cols() == 0)
            throw RegistryError("registry: pilot shape of '" + device_id + "' differs from element count");
        if (pilot_config.m_antennas != element_count() ||
            pilot_config.t_bauds != static_cast<std::size_t>(pilot.values.cols()))
            throw RegistryError("registry: pilot config of '" + device_id + "' disagrees with its pilot");
    }

    bool operator==(const DeviceProfile &a, const DeviceProfile &b)
    {
        return a.device_id == b.device_id && a.geometry == b.geometry && a.chaotic_noise.seed == b.chaotic_noise.seed &&
               same_values(a.chaotic_noise.values, b.chaotic_noise.values) && a.pilot == b.pilot &&
               a.pilot_config == b.pilot_config && a.enrolled_at == b.enrolled_at;
    }

    DeviceProfile make_device_profile(const DeviceSpec &spec)
    {
        PerturbationParams params;
        params.h_count = spec.h_count;
        params.v_count = spec.v_count;
        params.lambda0 = spec.lambda0;
        params.lambdag = spec.lambdag;
        params.seed = derive_seed(spec.seed, streams::geometry);

        PilotConfig pilot_cfg;
        pilot_cfg.m_antennas = params.element_count();
        pilot_cfg.t_bauds = spec.t_bauds;
        pilot_cfg.activation_threshold = spec.activation_threshold;
        pilot_cfg.seed = derive_seed(spec.seed, streams::pilot);

        DeviceProfile p;
        p.device_id = spec.device_id;
        p.geometry = generate_chaotic_geometry(params);
        p.chaotic_noise = ChaoticNoise::draw(params.element_count(), derive_seed(spec.seed, streams::chaotic_noise));
        p.pilot = generate_pilot_matrix(pilot_cfg);
        p.pilot_config = pilot_cfg;
        p.enrolled_at = spec.enrolled_at;
        return p;
    }

    const DeviceProfile &Registry::at(std::string_view id) const
    {
        const auto it = devices_.find(id);
        if (it == devices_.end())
            throw UnknownDeviceError("registry: no device '" + std::string(id) + "'");
        return it->second;
    }

    Registry enroll(DeviceProfile profile, const Registry &registry)
    {
        profile.validate();
        if (registry.contains(profile.device_id))
            throw DuplicateDeviceError("registry: device '" + profile.device_id + "' is already enrolled");
        Registry next = registry;
        std::string id = profile.device_id;
        next.devices_.emplace(std::move(id), std::move(profile));
        return next;
    }

    std::vector<CMatrix> expected_signals(const Registry &registry, const ChannelMap &channels)
    {
        std::vector<CMatrix> out;
        out.reserve(registry.size());
        for (const auto &[id, profile] : registry.devices())
        {
            const auto it = channels.find(id);
            if (it == channels.end())
                throw UnknownDeviceError("registry: no channel for device '" + id + "'");
            if (it->second.matrix.cols() != profile.pilot.values.rows())
                throw DimensionError("registry: channel of '" + id + "' does not match its antenna count");
            out.push_back(it->second.matrix * profile.pilot.values);
        }
        return out;
    }

    std::string serialize_registry(const Registry &registry)
    {
        json devices = json::array();
        for (const auto &[id, profile] : registry.devices())
            devices.push_back(profile_to_json(profile));
        const json doc{{"version", Registry::schema_version}, {"devices", std::move(devices)}};
        return doc.dump(2) + "\n";
    }

    Registry parse_registry(std::string_view document)
    {
        json doc;
        try
        {
            doc = json::parse(document);
        }
        catch (const json::exception &e)
        {
            throw SchemaError(std::string("registry: not valid JSON: ") + e.what());
        }
        if (!doc.is_object() || !doc.contains("version") || !doc.contains("devices"))
            throw SchemaError("registry: document needs 'version' and 'devices'");
        if (!doc.at("version").is_number_integer() || doc.at("version").get<long long>() != Registry::schema_version)
            throw SchemaError("registry: unsupported schema version " + doc.at("version").dump());
        if (!doc.at("devices").is_array())
            throw SchemaError("registry: 'devices' must be an array");

        Registry registry;
        try
        {
            for (const auto &entry : doc.at("devices"))
                registry = enroll(profile_from_json(entry), registry);
        }
        catch (const json::exception &e)
        {
            throw SchemaError(std::string("registry: ") + e.what());
        }
        catch (const DuplicateDeviceError &e)
        {
            throw SchemaError(e.what());
        }
        return registry;
    }

    void save_registry(const Registry &registry, const std::filesystem::path &path)
    {
        const std::string text = serialize_registry(registry);
        std::filesystem::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw RegistryError("registry: cannot open '" + tmp.string() + "' for writing");
            out.write(text.data(), static_cast<std::streamsize>(text.size()));
            out.flush();
            if (!out)
            {
                out.close();
                std::error_code ignored;
                std::filesystem::remove(tmp, ignored);
                throw RegistryError("registry: failed writing '" + tmp.string() + "'");
            }
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec)
        {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw RegistryError("registry: cannot replace '" + path.string() + "': " + ec.message());
        }
    }

    Registry load_registry(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw RegistryError("registry: cannot open '" + path.string() + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_registry(buf.str());
    }
}
