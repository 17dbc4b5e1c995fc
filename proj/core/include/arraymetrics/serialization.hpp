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

#include <string>

#include <nlohmann/json.hpp>

#include "arraymetrics/channel.hpp"
#include "arraymetrics/geometry.hpp"
#include "arraymetrics/pilot.hpp"
#include "arraymetrics/signature.hpp"

// JSON mappings for the value types. Doubles that must survive a round trip bit for bit
// are written as the hex image of their IEEE-754 bits ("0x3ff0000000000000"); complex
// numbers are [re, im] pairs of such strings.
namespace arraymetrics
{
    std::string encode_double(double value);

    /// Throws SchemaError unless value is a string produced by encode_double().
    double decode_double(const nlohmann::json &value);

    nlohmann::json encode_complex(cplx value);
    cplx decode_complex(const nlohmann::json &value);

    void to_json(nlohmann::json &j, const PerturbationParams &params);
    void from_json(const nlohmann::json &j, PerturbationParams &params);

    void to_json(nlohmann::json &j, const ArrayGeometry &geometry);
    void from_json(const nlohmann::json &j, ArrayGeometry &geometry);

    void to_json(nlohmann::json &j, const ChaoticNoise &noise);
    void from_json(const nlohmann::json &j, ChaoticNoise &noise);

    void to_json(nlohmann::json &j, const PilotConfig &cfg);
    void from_json(const nlohmann::json &j, PilotConfig &cfg);

    void to_json(nlohmann::json &j, const PilotMatrix &pilot);
    void from_json(const nlohmann::json &j, PilotMatrix &pilot);

    /// Debug dump; plain decimal numbers, not meant to be read back.
    void to_json(nlohmann::json &j, const ChannelRealization &h);
}
