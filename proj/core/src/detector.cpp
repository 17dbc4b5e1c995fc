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

#include "arraymetrics/detector.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>
#include <nlohmann/json.hpp>

#include "arraymetrics/error.hpp"

namespace arraymetrics
{
    namespace
    {
        Eigen::Map<const CVector> vec(const CMatrix &m) { return {m.data(), m.size()}; }

        void require_positive(double sigma2_hat)
        {
            if (!(sigma2_hat > 0.0))
                throw DegenerateEstimateError("detector: noise variance estimate must be positive");
        }

        // Smallest admissible pivot of I - A^H A relative to 1.
        constexpr double min_pivot = 1e-10;
    }

    void DetectorConfig::validate() const
    {
        if (!(pfa_target > 0.0 && pfa_target < 1.0))
            throw ParameterError("detector: pfa_target must lie in (0, 1)");
        if (probe_count < 8)
            throw ParameterError("detector: at least 8 noise probes are required");
    }

    void to_json(nlohmann::json &j, const DetectionResult &r)
    {
        j = nlohmann::json{{"rho", r.rho},     {"sigma2_hat", r.sigma2_hat}, {"beta", r.beta},         {"psi_e", r.psi_e},
                           {"psi_fa", r.psi_fa}, {"psi", r.psi},               {"accepted", r.accepted}};
    }

    double correlate(const CMatrix &expected, const CMatrix &samples)
    {
        if (expected.rows() != samples.rows() || expected.cols() != samples.cols())
            throw DimensionError("detector: expected signal and frame differ in shape");
        return vec(expected).dot(vec(samples)).real();
    }

    double correlate(const PilotMatrix &x, const ChannelRealization &h, const ReceivedFrame &y)
    {
        if (h.matrix.cols() != x.values.rows())
            throw DimensionError("detector: pilot rows differ from channel columns");
        return correlate(CMatrix(h.matrix * x.values), y.samples);
    }

    NoiseProbes::NoiseProbes(std::span<const CMatrix> allowlist_signals, Eigen::Index rows, Eigen::Index cols,
                             std::size_t probe_count)
        : rows_(rows), cols_(cols)
    {
        if (probe_count == 0)
            throw ParameterError("detector: probe count must be positive");
        const Eigen::Index dim = rows * cols;
        const auto k = static_cast<Eigen::Index>(probe_count);

        CMatrix stacked(dim, static_cast<Eigen::Index>(allowlist_signals.size()));
        for (std::size_t i = 0; i < allowlist_signals.size(); ++i)
        {
            const CMatrix &s = allowlist_signals[i];
            if (s.rows() != rows || s.cols() != cols)
                throw DimensionError("detector: allowlist signal shape differs from the frame shape");
            stacked.col(static_cast<Eigen::Index>(i)) = vec(s);
        }

        if (stacked.cols() == 1)
        {
            const double n = stacked.col(0).norm();
            basis_ = n > 0.0 ? CMatrix(stacked / n) : CMatrix(dim, 0);
        }
        else if (stacked.cols() > 1)
        {
            Eigen::ColPivHouseholderQR<CMatrix> qr(stacked);
            basis_ = qr.householderQ() * CMatrix::Identity(dim, qr.rank());
        }
        else
            basis_.resize(dim, 0);

        if (k + basis_.cols() > dim)
            throw InsufficientDimensionsError("detector: " + std::to_string(probe_count) + " probes plus a span of rank " +
                                              std::to_string(basis_.cols()) + " exceed the " + std::to_string(dim) +
                                              "-dimensional frame space");

        coords_.resize(probe_count);
        for (Eigen::Index j = 0; j < k; ++j)
            coords_[static_cast<std::size_t>(j)] = (j * dim) / k;

        const Eigen::Index r = basis_.cols();
        sampled_.resize(k, r);
        for (Eigen::Index j = 0; j < k; ++j)
            sampled_.row(j) = basis_.row(coords_[static_cast<std::size_t>(j)]);

        if (r > 0)
        {
            const CMatrix m = CMatrix::Identity(r, r) - sampled_.adjoint() * sampled_;
            woodbury_.compute(m);
            const double pivot = woodbury_.info() == Eigen::Success ? woodbury_.matrixLLT().diagonal().real().minCoeff() : 0.0;
            if (!(pivot * pivot > min_pivot))
                throw InsufficientDimensionsError("detector: probe axes collapse after projection onto the allowlist complement");
        }
    }

    double NoiseProbes::estimate(const CMatrix &samples) const
    {
        if (samples.rows() != rows_ || samples.cols() != cols_)
            throw DimensionError("detector: frame shape differs from the probe set");
        const auto y = vec(samples);
        const auto k = static_cast<Eigen::Index>(coords_.size());

        CVector b(k);
        for (Eigen::Index j = 0; j < k; ++j)
            b[j] = y[coords_[static_cast<std::size_t>(j)]];

        double energy = 0.0;
        if (basis_.cols() == 0)
            energy = b.squaredNorm();
        else
        {
            const CVector span_coeff = basis_.adjoint() * y;
            b.noalias() -= sampled_ * span_coeff;
            const CVector c = sampled_.adjoint() * b;
            energy = b.squaredNorm() + c.dot(woodbury_.solve(c)).real();
        }
        return energy / static_cast<double>(k);
    }

    double estimate_noise_variance(const ReceivedFrame &y, std::span<const CMatrix> expected_signals, std::size_t k)
    {
        return NoiseProbes(expected_signals, y.samples.rows(), y.samples.cols(), k).estimate(y.samples);
    }

    double detection_metric(double rho, double sigma2_hat)
    {
        require_positive(sigma2_hat);
        return rho / sigma2_hat;
    }

    double threshold_equidistant(double signal_energy, double sigma2_hat)
    {
        require_positive(sigma2_hat);
        return signal_energy / (2.0 * sigma2_hat);
    }

    double threshold_equidistant(const PilotMatrix &x, const ChannelRealization &h, double sigma2_hat)
    {
        if (h.matrix.cols() != x.values.rows())
            throw DimensionError("detector: pilot rows differ from channel columns");
        return threshold_equidistant((h.matrix * x.values).squaredNorm(), sigma2_hat);
    }

    double fa_quantile(double pfa, std::size_t probe_count)
    {
        if (!(pfa > 0.0 && pfa < 1.0))
            throw ParameterError("detector: false-authentication probability must lie in (0, 1)");
        if (probe_count == 0)
            throw ParameterError("detector: probe count must be positive");
        const boost::math::students_t dist(2.0 * static_cast<double>(probe_count));
        if (pfa == 0.5)
            return 0.0;
        return boost::math::quantile(boost::math::complement(dist, pfa));
    }

    double threshold_fa(double signal_energy, double sigma2_hat, double pfa, std::size_t probe_count)
    {
        require_positive(sigma2_hat);
        return fa_quantile(pfa, probe_count) * std::sqrt(signal_energy / (2.0 * sigma2_hat));
    }

    double threshold_fa(const PilotMatrix &x, const ChannelRealization &h, double sigma2_hat, const DetectorConfig &cfg)
    {
        cfg.validate();
        if (h.matrix.cols() != x.values.rows())
            throw DimensionError("detector: pilot rows differ from channel columns");
        return threshold_fa((h.matrix * x.values).squaredNorm(), sigma2_hat, cfg.pfa_target, cfg.probe_count);
    }

    Decision decide(double beta, double psi_e, double psi_fa)
    {
        const double psi = std::max(psi_e, psi_fa);
        return {psi, beta > psi};
    }

    DetectionResult evaluate(double rho, double signal_energy, double sigma2_hat, double pfa, std::size_t probe_count)
    {
        DetectionResult r;
        r.rho = rho;
        r.sigma2_hat = sigma2_hat;
        r.beta = detection_metric(rho, sigma2_hat);
        r.psi_e = threshold_equidistant(signal_energy, sigma2_hat);
        r.psi_fa = threshold_fa(signal_energy, sigma2_hat, pfa, probe_count);
        const Decision d = decide(r.beta, r.psi_e, r.psi_fa);
        r.psi = d.psi;
        r.accepted = d.accepted;
        return r;
    }

    DetectionResult detect(const CMatrix &expected, const NoiseProbes &probes, const ReceivedFrame &y,
                           const DetectorConfig &cfg)
    {
        return evaluate(correlate(expected, y.samples), expected.squaredNorm(), probes.estimate(y.samples),
                        cfg.pfa_target, probes.probe_count());
    }

    DetectionResult authenticate(const ReceivedFrame &y, const DeviceProfile &device, const Registry &allowlist,
                                 const ChannelMap &channels, const DetectorConfig &cfg)
    {
        cfg.validate();
        if (!allowlist.contains(device.device_id))
            throw UnknownDeviceError("detector: device '" + device.device_id + "' is not on the allowlist");

        const std::vector<CMatrix> signals = expected_signals(allowlist, channels);
        const auto it = allowlist.devices().find(device.device_id);
        const auto index = static_cast<std::size_t>(std::distance(allowlist.devices().begin(), it));
        const CMatrix &expected = signals[index];
        if (expected.rows() != y.samples.rows() || expected.cols() != y.samples.cols())
            throw DimensionError("detector: frame shape differs from the device's expected signal");

        const NoiseProbes probes(signals, y.samples.rows(), y.samples.cols(), cfg.probe_count);
        return detect(expected, probes, y, cfg);
    }
}
