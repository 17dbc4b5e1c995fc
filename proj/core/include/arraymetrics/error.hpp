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

#include <stdexcept>
#include <string>

namespace arraymetrics
{
    /// Base class of every error thrown by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// A configuration value or argument violates its documented range.
    class ParameterError : public Error
    {
    public:
        using Error::Error;
    };

    /// Matrix or vector operands have incompatible shapes.
    class DimensionError : public ParameterError
    {
    public:
        using ParameterError::ParameterError;
    };

    /// The noise-variance estimate is zero or negative, so the detection metric is undefined.
    class DegenerateEstimateError : public Error
    {
    public:
        using Error::Error;
    };

    /// Not enough free dimensions in the frame space for the requested noise probes.
    class InsufficientDimensionsError : public Error
    {
    public:
        using Error::Error;
    };

    /// Correlation with a zero-norm vector.
    class UndefinedCorrelationError : public Error
    {
    public:
        using Error::Error;
    };

    class RegistryError : public Error
    {
    public:
        using Error::Error;
    };

    class DuplicateDeviceError : public RegistryError
    {
    public:
        using RegistryError::RegistryError;
    };

    class UnknownDeviceError : public RegistryError
    {
    public:
        using RegistryError::RegistryError;
    };

    /// Malformed registry document or unsupported schema version.
    class SchemaError : public RegistryError
    {
    public:
        using RegistryError::RegistryError;
    };
}
