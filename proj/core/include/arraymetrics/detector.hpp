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
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arraymetrics/channel.hpp"
#include "arraymetrics/pilot.hpp"
#include "arraymetrics/registry.hpp"

namespace arraymetrics
{
    struct DetectorConfig
    {
        double pfa_target = 0.01;      ///< designed false-authentication probability, in (0, 1)
        std::size_t probe_count = 256; ///< K orthonormal probes for the noise estimate, >= 8

        void validate() const;
    };

    /// Diagnostics of one authentication attempt.
    struct DetectionResult
    {
        double rho = 0.0;        ///< Re tr(X^H H^H y)
        double sigma2_hat = 0.0; ///< noise variance estimate
        double beta = 0.0;       ///< rho / sigma2_hat
        double psi_e = 0.0;      ///< midpoint threshold
        double psi_fa = 0.0;     ///< false-authentication threshold
        double psi = 0.0;        ///< max(psi_e, psi_fa)
        bool accepted = false;   ///< beta > psi
    };

    void to_json(nlohmann::json &j, const DetectionResult &r);

    /// Re tr(S^H Y) = Re <vec S, vec Y>.
    double correlate(const CMatrix &expected, const CMatrix &samples);

    /// Matched-filter correlation of a frame against H X.
    double correlate(const PilotMatrix &x, const ChannelRealization &h, const ReceivedFrame &y);

    /// Orthonormal probe set in the vectorized frame space, orthogonal to every allowlisted
    /// expected signal.
    ///
    /// Probe j is the coordinate axis e_{p_j} of vec(y) (p_j = floor(j D / K), D = rows * cols)
    /// projected onto the orthogonal complement of the allowlist span and then
    /// orthonormalized together with the others. The probes are never formed: with Q an
    /// orthonormal basis of the span and A = Q restricted to rows p_j, the projected axes have
    /// Gram matrix G = I - A A^H, and the energy of y in their span is b^H G^{-1} b with
    /// b_j = y_{p_j} - A_j Q^H y. Woodbury reduces G^{-1} to an r x r solve.
    class NoiseProbes
    {
    public:
        /// Throws InsufficientDimensionsError when K + rank(span) exceeds D or when the probe
        /// axes do not stay linearly independent after projection.
        NoiseProbes(std::span<const CMatrix> allowlist_signals, Eigen::Index rows, Eigen::Index cols,
                    std::size_t probe_count);

        /// (1/K) sum_j |<q_j, vec(y)>|^2.
        double estimate(const CMatrix &samples) const;

        std::size_t probe_count() const noexcept { return coords_.size(); }
        Eigen::Index span_rank() const noexcept { return basis_.cols(); }
        const std::vector<Eigen::Index> &coordinates() const noexcept { return coords_; }
        const CMatrix &span_basis() const noexcept { return basis_; }

    private:
        Eigen::Index rows_;
        Eigen::Index cols_;
        std::vector<Eigen::Index> coords_;
        CMatrix basis_;   // D x r
        CMatrix sampled_; // K x r, rows of basis_ at coords_
        Eigen::LLT<CMatrix> woodbury_; // of I_r - A^H A
    };

    /// NoiseProbes(expected_signals, ...).estimate(y).
    double estimate_noise_variance(const ReceivedFrame &y, std::span<const CMatrix> expected_signals, std::size_t k);

    /// beta = rho / sigma2_hat. Throws DegenerateEstimateError for sigma2_hat <= 0.
    double detection_metric(double rho, double sigma2_hat);

    /// psi_e = ||H X||_F^2 / (2 sigma2_hat).
    double threshold_equidistant(double signal_energy, double sigma2_hat);
    double threshold_equidistant(const PilotMatrix &x, const ChannelRealization &h, double sigma2_hat);

    /// Upper pfa-quantile of Student's t with 2K degrees of freedom.
    ///
    /// Under noise only, rho ~ N(0, sigma^2 ||HX||^2 / 2) and K sigma2_hat / sigma^2 is
    /// chi-square with 2K degrees of freedom scaled by 1/2, independent of rho, so
    /// rho / (sigma_hat ||HX|| / sqrt(2)) is exactly t-distributed. Approaches the normal
    /// quantile as K grows.
    double fa_quantile(double pfa, std::size_t probe_count);

    /// psi_FA = fa_quantile(pfa, K) * sqrt(||H X||_F^2 / (2 sigma2_hat)).
    double threshold_fa(double signal_energy, double sigma2_hat, double pfa, std::size_t probe_count);
    double threshold_fa(const PilotMatrix &x, const ChannelRealization &h, double sigma2_hat, const DetectorConfig &cfg);

    struct Decision
    {
        double psi = 0.0;
        bool accepted = false;
    };

    /// psi = max(psi_e, psi_fa); accept iff beta > psi (ties reject).
    Decision decide(double beta, double psi_e, double psi_fa);

    /// Thresholds and decision from the scalar statistics of one frame.
    DetectionResult evaluate(double rho, double signal_energy, double sigma2_hat, double pfa, std::size_t probe_count);

    /// Full receiver chain for a precomputed expected signal H X and probe set.
    DetectionResult detect(const CMatrix &expected, const NoiseProbes &probes, const ReceivedFrame &y,
                           const DetectorConfig &cfg);

    /// Authenticate y as `device`. channels must hold a realization for every enrolled
    /// device; the noise probes are kept orthogonal to all of their expected signals.
    DetectionResult authenticate(const ReceivedFrame &y, const DeviceProfile &device, const Registry &allowlist,
                                 const ChannelMap &channels, const DetectorConfig &cfg);
}
