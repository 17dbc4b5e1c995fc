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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace arraymetrics::cli
{
    /// Parses "a,b,c", "start:step:stop" (inclusive) or a mix of both; "inf" denotes a
    /// noiseless point.
    std::vector<double> parse_snr_grid(std::string_view text);

    /// Runs the command line; returns the process exit code. Never throws.
    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

    int run(int argc, char **argv, std::ostream &out, std::ostream &err);
}
