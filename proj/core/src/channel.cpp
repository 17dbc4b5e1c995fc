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

#include "arraymetrics/channel.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "arraymetrics/error.hpp"
#include "arraymetrics/random.hpp"

namespace arraymetrics
{
    ArrayShape ArrayShape::near_square(std::size_t n)
    {
        if (n == 0)
            throw ParameterError("array shape: element count must be at least 1");
        auto h = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
        while (h * h > n)
            --h;
        while (n % h != 0)
            --h;
        return {h, n / h};
    }

    void ChannelConfig::validate() const
    {
        if (n_seraph == 0)
            throw ParameterError("channel: n_seraph must be at least 1");
        if (path_count == 0)
            throw ParameterError("channel: path_count must be at least 1");
        if (!(sigma_h > 0.0) || !std::isfinite(sigma_h))
            throw ParameterError("channel: sigma_h must be positive and finite");
    }

    TransmitArray::TransmitArray(ArrayShape shape, std::optional<ChaoticNoise> noise)
        : shape_(shape), noise_(std::move(noise))
    {
        if (shape_.size() == 0)
            throw ParameterError("transmit array: shape must have at least one element");
        if (noise_ && static_cast<std::size_t>(noise_->size()) != shape_.size())
            throw DimensionError("transmit array: chaotic noise length differs from element count");
    }

    TransmitArray TransmitArray::nominal(ArrayShape shape) { return TransmitArray(shape, std::nullopt); }

    TransmitArray TransmitArray::perturbed(ArrayShape shape, ChaoticNoise noise)
    {
        return TransmitArray(shape, std::move(noise));
    }

    CVector TransmitArray::signature(const Direction &dir) const
    {
        SpatialSignature e_t = planar_unit_signature(shape_.h_count, shape_.v_count, dir);
        if (!noise_)
            return std::move(e_t.values);
        return perturb_signature(e_t, *noise_).values;
    }

    std::vector<Path> draw_paths(const ChannelConfig &cfg, std::size_t m_antennas)
    {
        cfg.validate();
        if (m_antennas == 0)
            throw ParameterError("channel: device must have at least one antenna");

        Engine engine(cfg.seed);
        std::uniform_real_distribution<double> azimuth(-pi, pi);
        std::uniform_real_distribution<double> elevation(-pi / 2.0, pi / 2.0);
        const double gain_variance = cfg.sigma_h * cfg.sigma_h /
                                     (static_cast<double>(cfg.path_count) * static_cast<double>(cfg.n_seraph) *
                                      static_cast<double>(m_antennas));

        std::vector<Path> paths(cfg.path_count);
        for (auto &path : paths)
        {
            path.tx_dir.azimuth = azimuth(engine);
            path.tx_dir.elevation = elevation(engine);
            path.rx_dir.azimuth = azimuth(engine);
            path.rx_dir.elevation = elevation(engine);
            path.gain = complex_normal(engine, gain_variance);
        }
        return paths;
    }

    ChannelFactors channel_factors(const std::vector<Path> &paths, const ChannelConfig &cfg, const TransmitArray &tx)
    {
        cfg.validate();
        if (paths.empty())
            throw ParameterError("channel: at least one path is required");

        const ArrayShape seraph = ArrayShape::near_square(cfg.n_seraph);
        const auto n_rx = static_cast<Eigen::Index>(seraph.size());
        const auto n_tx = static_cast<Eigen::Index>(tx.shape().size());
        const auto n_paths = static_cast<Eigen::Index>(paths.size());
        const double array_gain = std::sqrt(static_cast<double>(n_rx) * static_cast<double>(n_tx));

        ChannelFactors f{CMatrix(n_rx, n_paths), CMatrix(n_tx, n_paths)};
        for (Eigen::Index i = 0; i < n_paths; ++i)
        {
            const Path &path = paths[static_cast<std::size_t>(i)];
            f.receive.col(i) = planar_unit_signature(seraph.h_count, seraph.v_count, path.rx_dir).values;
            f.transmit.col(i) = tx.signature(path.tx_dir) * std::conj(path.gain * array_gain);
        }
        return f;
    }

    CMatrix apply_channel(const ChannelFactors &factors, const CMatrix &x)
    {
        if (factors.transmit.rows() != x.rows())
            throw DimensionError("channel: pilot rows differ from channel columns");
        const CMatrix projected = factors.transmit.adjoint() * x;
        return factors.receive * projected;
    }

    ChannelRealization synthesize_channel(std::vector<Path> paths, const ChannelConfig &cfg, const TransmitArray &tx)
    {
        const ChannelFactors f = channel_factors(paths, cfg, tx);

        ChannelRealization h;
        h.matrix.noalias() = f.receive * f.transmit.adjoint();
        h.paths = std::move(paths);
        h.tx_kind = tx.kind();
        h.seraph_shape = ArrayShape::near_square(cfg.n_seraph);
        h.device_shape = tx.shape();
        h.sigma_h = cfg.sigma_h;
        return h;
    }

    ChannelRealization generate_scattering_channel(const ChannelConfig &cfg, const TransmitArray &tx)
    {
        return synthesize_channel(draw_paths(cfg, tx.shape().size()), cfg, tx);
    }

    double snr_db_to_gamma(double snr_db) { return std::pow(10.0, snr_db / 20.0); }

    double gamma_to_snr_db(double gamma)
    {
        if (!(gamma > 0.0))
            throw ParameterError("channel: gamma must be positive");
        return 20.0 * std::log10(gamma);
    }

    double noise_variance(double sigma_h, double snr_db)
    {
        if (std::isnan(snr_db))
            throw ParameterError("channel: SNR is NaN");
        if (snr_db == std::numeric_limits<double>::infinity())
            return 0.0;
        const double ratio = sigma_h / snr_db_to_gamma(snr_db);
        return ratio * ratio;
    }

    CMatrix draw_unit_noise(Eigen::Index rows, Eigen::Index cols, Seed seed)
    {
        Engine engine(seed);
        return complex_normal_matrix(engine, rows, cols, 1.0);
    }

    ReceivedFrame receive(const CMatrix &clean, const CMatrix &unit_noise, double sigma_h, double snr_db)
    {
        if (clean.rows() != unit_noise.rows() || clean.cols() != unit_noise.cols())
            throw DimensionError("channel: noise shape differs from signal shape");
        const double variance = noise_variance(sigma_h, snr_db);

        ReceivedFrame frame;
        if (variance == 0.0)
            frame.samples = clean;
        else
            frame.samples = clean + std::sqrt(variance) * unit_noise;
        frame.true_noise_variance = variance;
        frame.snr_db = snr_db;
        return frame;
    }

    ReceivedFrame transmit(const ChannelRealization &h, const PilotMatrix &x, double snr_db, Seed noise_seed)
    {
        if (h.matrix.cols() != x.values.rows())
            throw DimensionError("channel: pilot rows differ from channel columns");
        const CMatrix clean = h.matrix * x.values;
        return receive(clean, draw_unit_noise(clean.rows(), clean.cols(), noise_seed), h.sigma_h, snr_db);
    }
}
