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
#include <optional>
#include <vector>

#include "arraymetrics/pilot.hpp"
#include "arraymetrics/signature.hpp"
#include "arraymetrics/types.hpp"

namespace arraymetrics
{
    /// Element grid of a planar array.
    struct ArrayShape
    {
        std::size_t h_count = 1;
        std::size_t v_count = 1;

        std::size_t size() const noexcept { return h_count * v_count; }

        /// h x v = n with h the largest divisor of n not above sqrt(n) (512 -> 16 x 32).
        static ArrayShape near_square(std::size_t n);

        friend bool operator==(const ArrayShape &, const ArrayShape &) = default;
    };

    struct ChannelConfig
    {
        std::size_t n_seraph = 512;  ///< receive antennas N_s
        std::size_t path_count = 32; ///< scattering paths L
        double sigma_h = 1.0;        ///< square root of the channel gain
        Seed seed = 0;

        void validate() const;
    };

    struct Path
    {
        cplx gain;
        Direction tx_dir;
        Direction rx_dir;
    };

    enum class TxSignatureKind
    {
        nominal,
        perturbed,
    };

    /// Transmit-side unit signature of a device as a function of direction.
    class TransmitArray
    {
    public:
        /// Unmodified half-wavelength planar array.
        static TransmitArray nominal(ArrayShape shape);
        /// Chaotic array whose steering vectors are perturbed by the enrolled noise.
        static TransmitArray perturbed(ArrayShape shape, ChaoticNoise noise);

        CVector signature(const Direction &dir) const;

        TxSignatureKind kind() const noexcept { return noise_ ? TxSignatureKind::perturbed : TxSignatureKind::nominal; }
        const ArrayShape &shape() const noexcept { return shape_; }

    private:
        TransmitArray(ArrayShape shape, std::optional<ChaoticNoise> noise);

        ArrayShape shape_;
        std::optional<ChaoticNoise> noise_;
    };

    /// One draw of the N_s x M channel and the paths it was built from.
    struct ChannelRealization
    {
        CMatrix matrix;
        std::vector<Path> paths;
        TxSignatureKind tx_kind = TxSignatureKind::perturbed;
        ArrayShape seraph_shape;
        ArrayShape device_shape;
        double sigma_h = 1.0;
    };

    /// L paths with azimuth ~ U(-pi, pi), elevation ~ U(-pi/2, pi/2) at both ends and
    /// gain ~ CN(0, sigma_h^2 / (L N_s M)). Per path the draw order is tx azimuth, tx
    /// elevation, rx azimuth, rx elevation, gain.
    std::vector<Path> draw_paths(const ChannelConfig &cfg, std::size_t m_antennas);

    /// H = receive * transmit^H with one column per path; receive columns are the Seraph's
    /// unit signatures, transmit columns carry e_tx conj(g sqrt(N_s M)).
    struct ChannelFactors
    {
        CMatrix receive;  ///< N_s x L
        CMatrix transmit; ///< M x L
    };

    ChannelFactors channel_factors(const std::vector<Path> &paths, const ChannelConfig &cfg, const TransmitArray &tx);

    /// H X evaluated through the factors, without forming H.
    CMatrix apply_channel(const ChannelFactors &factors, const CMatrix &x);

    /// H = sum_i gain_i sqrt(N_s M) e_r(rx_i) e_tx(tx_i)^H.
    ///
    /// Reusing one path set with two TransmitArrays gives two devices seen from the same spot.
    ChannelRealization synthesize_channel(std::vector<Path> paths, const ChannelConfig &cfg, const TransmitArray &tx);

    /// draw_paths() followed by synthesize_channel().
    ChannelRealization generate_scattering_channel(const ChannelConfig &cfg, const TransmitArray &tx);

    struct ReceivedFrame
    {
        CMatrix samples;                 ///< N_s x T
        double true_noise_variance = 0.0; ///< per-entry variance of the AWGN that was added
        double snr_db = 0.0;
    };

    /// gamma = 10^(snr_db / 20), so that 10 log10(sigma_h^2 / sigma_w^2) = snr_db.
    double snr_db_to_gamma(double snr_db);
    double gamma_to_snr_db(double gamma);

    /// (sigma_h / gamma)^2. An SNR of +infinity disables the noise.
    double noise_variance(double sigma_h, double snr_db);

    /// i.i.d. CN(0, 1) matrix from seed.
    CMatrix draw_unit_noise(Eigen::Index rows, Eigen::Index cols, Seed seed);

    /// clean + sqrt(noise_variance) * unit_noise.
    ReceivedFrame receive(const CMatrix &clean, const CMatrix &unit_noise, double sigma_h, double snr_db);

    /// y = H X + w with w ~ CN(0, (sigma_h / gamma)^2) drawn from noise_seed.
    ReceivedFrame transmit(const ChannelRealization &h, const PilotMatrix &x, double snr_db, Seed noise_seed);
}
