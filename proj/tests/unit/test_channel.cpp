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

#include <gtest/gtest.h>

#include "arraymetrics/channel.hpp"
#include "arraymetrics/error.hpp"
#include "arraymetrics/random.hpp"
#include "oracles.hpp"

using namespace arraymetrics;

namespace
{
    ChannelConfig config(std::size_t n, std::size_t l, Seed seed, double sigma_h = 1.0)
    {
        ChannelConfig c;
        c.n_seraph = n;
        c.path_count = l;
        c.sigma_h = sigma_h;
        c.seed = seed;
        return c;
    }

    // Re-sums the stored paths from the closed-form steering vectors.
    CMatrix resum(const ChannelRealization &h, const ChaoticNoise *noise)
    {
        const ArrayShape rx = h.seraph_shape;
        const ArrayShape tx = h.device_shape;
        const double g = std::sqrt(static_cast<double>(rx.size() * tx.size()));
        CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(rx.size()), static_cast<Eigen::Index>(tx.size()));
        for (const Path &p : h.paths)
        {
            CVector er = planar_unit_signature(rx.h_count, rx.v_count, p.rx_dir).values;
            CVector et = planar_unit_signature(tx.h_count, tx.v_count, p.tx_dir).values;
            if (noise)
                for (Eigen::Index m = 0; m < et.size(); ++m)
                    et[m] *= (1.0 + noise->values[m]) / std::sqrt(2.0);
            for (Eigen::Index n = 0; n < er.size(); ++n)
                for (Eigen::Index m = 0; m < et.size(); ++m)
                    out(n, m) += p.gain * g * er[n] * std::conj(et[m]);
        }
        return out;
    }
}

TEST(Channel, NearSquareShapes)
{
    EXPECT_EQ(ArrayShape::near_square(512), (ArrayShape{16, 32}));
    EXPECT_EQ(ArrayShape::near_square(16), (ArrayShape{4, 4}));
    EXPECT_EQ(ArrayShape::near_square(128), (ArrayShape{8, 16}));
    EXPECT_EQ(ArrayShape::near_square(7), (ArrayShape{1, 7}));
    EXPECT_THROW(ArrayShape::near_square(0), ParameterError);
}

TEST(Channel, SinglePathBroadsideClosedForm)
{
    const double sigma_h = 1.5;
    const std::size_t n = 16, m = 4;
    Path p{cplx(sigma_h / std::sqrt(double(n * m)), 0.0), {0.0, 0.0}, {0.0, 0.0}};
    const ChannelRealization h =
        synthesize_channel({p}, config(n, 1, 0, sigma_h), TransmitArray::nominal(ArrayShape::near_square(m)));
    EXPECT_TRUE(h.matrix.isApprox(CMatrix::Constant(16, 4, sigma_h / std::sqrt(double(n * m))), 1e-14));
}

TEST(Channel, PathsResumToMatrix)
{
    const ChaoticNoise noise = ChaoticNoise::draw(16, 4);
    const TransmitArray tx = TransmitArray::perturbed({4, 4}, noise);
    const ChannelRealization h = generate_scattering_channel(config(64, 8, 31), tx);
    EXPECT_EQ(h.tx_kind, TxSignatureKind::perturbed);
    const CMatrix ref = resum(h, &noise);
    EXPECT_LT((h.matrix - ref).norm() / ref.norm(), 1e-10);

    const ChannelRealization g = generate_scattering_channel(config(64, 8, 31), TransmitArray::nominal({4, 4}));
    EXPECT_EQ(g.tx_kind, TxSignatureKind::nominal);
    const CMatrix gref = resum(g, nullptr);
    EXPECT_LT((g.matrix - gref).norm() / gref.norm(), 1e-10);
}

TEST(Channel, FactoredProductMatchesDenseProduct)
{
    const TransmitArray tx = TransmitArray::perturbed({4, 4}, ChaoticNoise::draw(16, 5));
    const ChannelConfig cfg = config(512, 32, 6);
    const std::vector<Path> paths = draw_paths(cfg, 16);
    const ChannelRealization h = synthesize_channel(paths, cfg, tx);
    const CMatrix x = generate_pilot_matrix({16, 3, 0.0, 2}).values;
    const CMatrix dense = oracle::product(h.matrix, x);
    EXPECT_LT((apply_channel(channel_factors(paths, cfg, tx), x) - dense).norm() / dense.norm(), 1e-12);
}

TEST(Channel, GainVarianceFollowsPathLaw)
{
    // Per-path gains are CN(0, sigma_h^2 / (L N_s M)), so E ||H||_F^2 = sigma_h^2.
    const double sigma_h = 2.0;
    const std::size_t n = 64, l = 8, m = 4;
    const ChannelConfig base = config(n, l, 0, sigma_h);
    double sum = 0.0, sum2 = 0.0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i)
    {
        ChannelConfig c = base;
        c.seed = derive_seed(1, streams::paths, i);
        for (const Path &p : draw_paths(c, m))
        {
            const double v = std::norm(p.gain);
            sum += v;
            sum2 += v * v;
        }
    }
    const double k = static_cast<double>(draws * l);
    const double mean = sum / k;
    EXPECT_NEAR(mean, sigma_h * sigma_h / double(l * n * m), 3.0 * std::sqrt((sum2 / k - mean * mean) / k));
}

TEST(Channel, FrobeniusEnergyMatchesGainLaw)
{
    const double sigma_h = 1.3;
    const TransmitArray tx = TransmitArray::nominal({4, 4});
    double sum = 0.0, sum2 = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i)
    {
        const double e = generate_scattering_channel(config(64, 32, derive_seed(2, 4, i), sigma_h), tx).matrix.squaredNorm();
        sum += e;
        sum2 += e * e;
    }
    const double mean = sum / draws;
    EXPECT_NEAR(mean, sigma_h * sigma_h, 3.0 * std::sqrt((sum2 / draws - mean * mean) / draws));
}

TEST(Channel, IntruderSignatureChangesMatrix)
{
    const ChannelConfig cfg = config(32, 4, 9);
    const ChannelRealization neo = generate_scattering_channel(cfg, TransmitArray::perturbed({2, 2}, ChaoticNoise::draw(4, 1)));
    const ChannelRealization other = generate_scattering_channel(cfg, TransmitArray::perturbed({2, 2}, ChaoticNoise::draw(4, 2)));
    EXPECT_FALSE(neo.matrix.isApprox(other.matrix));
}

TEST(Channel, SnrMapping)
{
    EXPECT_DOUBLE_EQ(snr_db_to_gamma(0.0), 1.0);
    EXPECT_DOUBLE_EQ(snr_db_to_gamma(20.0), 10.0);
    for (double db = -30.0; db <= 30.0; db += 0.5)
        EXPECT_NEAR(gamma_to_snr_db(snr_db_to_gamma(db)), db, 1e-12);
    EXPECT_DOUBLE_EQ(noise_variance(1.0, 0.0), 1.0);
    EXPECT_NEAR(noise_variance(2.0, 10.0), 0.4, 1e-15);
    EXPECT_EQ(noise_variance(1.0, std::numeric_limits<double>::infinity()), 0.0);
    EXPECT_THROW(gamma_to_snr_db(0.0), ParameterError);
}

TEST(Channel, NoiselessTransmitIsExact)
{
    const ChannelRealization h = generate_scattering_channel(config(32, 8, 3), TransmitArray::nominal({2, 2}));
    const PilotMatrix x = generate_pilot_matrix({4, 5, 0.0, 1});
    const ReceivedFrame y = transmit(h, x, std::numeric_limits<double>::infinity(), 4);
    EXPECT_EQ(y.samples, CMatrix(h.matrix * x.values));
    EXPECT_EQ(y.true_noise_variance, 0.0);
}

TEST(Channel, NoiseOnlyVarianceAndWhiteness)
{
    const ChannelRealization h = generate_scattering_channel(config(512, 8, 3, 1.0), TransmitArray::nominal({2, 2}));
    PilotMatrix zero{CMatrix::Zero(4, 256), BoolMatrix::Constant(4, 256, false)};
    const ReceivedFrame y = transmit(h, zero, 6.0, 99);
    const double var = noise_variance(1.0, 6.0);
    EXPECT_DOUBLE_EQ(y.true_noise_variance, var);
    const double n = static_cast<double>(y.samples.size());
    ASSERT_GE(n, 1e5);
    EXPECT_NEAR(y.samples.squaredNorm() / n, var, 3.0 * var / std::sqrt(n));

    // Neighbouring rows and columns are uncorrelated.
    cplx rows = 0.0, cols = 0.0;
    for (Eigen::Index t = 0; t + 1 < y.samples.cols(); ++t)
        for (Eigen::Index r = 0; r + 1 < y.samples.rows(); ++r)
        {
            rows += y.samples(r, t) * std::conj(y.samples(r + 1, t));
            cols += y.samples(r, t) * std::conj(y.samples(r, t + 1));
        }
    const double pairs = static_cast<double>((y.samples.rows() - 1) * (y.samples.cols() - 1));
    EXPECT_LT(std::abs(rows) / pairs / var, 0.01);
    EXPECT_LT(std::abs(cols) / pairs / var, 0.01);
}

TEST(ChannelProperty, NoiselessTransmitIsLinear)
{
    const ChannelRealization h = generate_scattering_channel(config(64, 16, 8), TransmitArray::nominal({4, 2}));
    const PilotMatrix x1 = generate_pilot_matrix({8, 4, 0.2, 1});
    const PilotMatrix x2 = generate_pilot_matrix({8, 4, 0.2, 2});
    const cplx a(0.3, -1.2), b(-2.0, 0.5);
    PilotMatrix mix{a * x1.values + b * x2.values, x1.active_mask || x2.active_mask};
    const double inf = std::numeric_limits<double>::infinity();
    const CMatrix lhs = transmit(h, mix, inf, 0).samples;
    const CMatrix rhs = a * transmit(h, x1, inf, 0).samples + b * transmit(h, x2, inf, 0).samples;
    EXPECT_LT((lhs - rhs).norm() / rhs.norm(), 1e-12);
}

TEST(Channel, ShapeMismatchIsAParameterError)
{
    const ChannelRealization h = generate_scattering_channel(config(16, 4, 1), TransmitArray::nominal({2, 2}));
    EXPECT_THROW(transmit(h, generate_pilot_matrix({5, 2, 0.0, 1}), 10.0, 1), ParameterError);
    EXPECT_THROW(draw_paths(config(0, 4, 1), 4), ParameterError);
    EXPECT_THROW(draw_paths(config(4, 0, 1), 4), ParameterError);
    EXPECT_THROW(draw_paths(config(4, 4, 1, 0.0), 4), ParameterError);
}
