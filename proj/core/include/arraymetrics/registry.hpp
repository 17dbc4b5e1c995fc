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
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "arraymetrics/channel.hpp"
#include "arraymetrics/geometry.hpp"
#include "arraymetrics/pilot.hpp"
#include "arraymetrics/signature.hpp"

namespace arraymetrics
{
    /// Everything Seraph keeps about one enrolled device.
    struct DeviceProfile
    {
        std::string device_id;
        ArrayGeometry geometry;
        ChaoticNoise chaotic_noise;
        PilotMatrix pilot;
        PilotConfig pilot_config;
        std::string enrolled_at; ///< ISO-8601 UTC

        ArrayShape shape() const noexcept { return {geometry.params.h_count, geometry.params.v_count}; }
        std::size_t element_count() const noexcept { return geometry.element_count(); }

        /// The device as a transmitter: planar array perturbed by its chaotic noise.
        TransmitArray transmit_array() const;

        /// Throws RegistryError unless noise length, element count and pilot rows agree.
        void validate() const;

        friend bool operator==(const DeviceProfile &a, const DeviceProfile &b);
    };

    /// Inputs for creating a device from a single seed.
    struct DeviceSpec
    {
        std::string device_id;
        std::size_t h_count = 4;
        std::size_t v_count = 4;
        std::size_t t_bauds = default_t_bauds;
        double activation_threshold = 0.0;
        double lambda0 = default_lambda0;
        double lambdag = 0.6 * default_lambda0;
        Seed seed = 0;
        std::string enrolled_at;
    };

    /// Geometry, chaotic noise and pilot drawn from independent child seeds of spec.seed.
    DeviceProfile make_device_profile(const DeviceSpec &spec);

    /// Allowlist of enrolled devices, ordered by device id. Values are immutable; enroll()
    /// returns a new registry.
    class Registry
    {
    public:
        static constexpr int schema_version = 1;
        using DeviceMap = std::map<std::string, DeviceProfile, std::less<>>;

        const DeviceMap &devices() const noexcept { return devices_; }
        std::size_t size() const noexcept { return devices_.size(); }
        bool empty() const noexcept { return devices_.empty(); }
        bool contains(std::string_view id) const { return devices_.find(id) != devices_.end(); }

        /// Throws UnknownDeviceError.
        const DeviceProfile &at(std::string_view id) const;

        friend Registry enroll(DeviceProfile profile, const Registry &registry);
        friend bool operator==(const Registry &, const Registry &) = default;

    private:
        DeviceMap devices_;
    };

    /// Copy of registry with profile added. Throws DuplicateDeviceError or RegistryError.
    Registry enroll(DeviceProfile profile, const Registry &registry);

    using ChannelMap = std::map<std::string, ChannelRealization, std::less<>>;

    /// H_i X_i for every enrolled device i, in device-id order. Throws UnknownDeviceError
    /// when a device has no channel.
    std::vector<CMatrix> expected_signals(const Registry &registry, const ChannelMap &channels);

    std::string serialize_registry(const Registry &registry);

    /// Throws SchemaError on malformed input or a version other than schema_version.
    Registry parse_registry(std::string_view document);

    /// Writes to a temporary file beside path and renames it into place.
    void save_registry(const Registry &registry, const std::filesystem::path &path);

    Registry load_registry(const std::filesystem::path &path);
}
