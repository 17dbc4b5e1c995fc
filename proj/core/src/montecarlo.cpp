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

#include "arraymetrics/montecarlo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <boost/math/distributions/normal.hpp>
#include <nlohmann/json.hpp>

#include "arraymetrics/detector.hpp"
#include "arraymetrics/error.hpp"
#include "arraymetrics/random.hpp"

namespace arraymetrics
{
    namespace
    {
        // Stand-in for the noise estimate of a noiseless frame, relative to the signal energy.
        // Any positive constant yields beta = 2 psi_e there.
        constexpr double noiseless_scale = 1e-200;

        constexpr std::string_view enrolled_at_epoch = "1970-01-01T00:00:00Z";

        void require(bool ok, const char *msg)
        {
            if (!ok)
                throw ParameterError(std::string("experiment: ") + msg);
        }

        nlohmann::json snr_to_json(double v)
        {
            if (std::isinf(v))
                return v > 0 ? "inf" : "-inf";
            return v;
        }

        double snr_from_json(const nlohmann::json &j)
        {
            if (j.is_string())
            {
                const auto &s = j.get_ref<const std::string &>();
                if (s == "inf")
                    return std::numeric_limits<double>::infinity();
                if (s == "-inf")
                    return -std::numeric_limits<double>::infinity();
                throw SchemaError("experiment config: invalid SNR value '" + s + "'");
            }
            if (!j.is_number())
                throw SchemaError("experiment config: SNR values must be numbers");
            return j.get<double>();
        }

        template <class T>
        void read_optional(const nlohmann::json &j, const char *key, T &out)
        {
            const auto it = j.find(key);
            if (it == j.end())
                return;
            try
            {
                out = it->template get<T>();
            }
            catch (const nlohmann::json::exception &e)
            {
                throw SchemaError(std::string("experiment config: bad value for '") + key + "': " + e.what());
            }
        }
    }

    std::string_view to_string(Scenario s) noexcept
    {
        switch (s)
        {
        case Scenario::miss:
            return "miss";
        case Scenario::fa_noise:
            return "fa_noise";
        case Scenario::intruder:
            return "intruder";
        }
        return "unknown";
    }

    Scenario parse_scenario(std::string_view name)
    {
        if (name == "miss")
            return Scenario::miss;
        if (name == "fa_noise")
            return Scenario::fa_noise;
        if (name == "intruder")
            return Scenario::intruder;
        throw ParameterError("experiment: unknown scenario '" + std::string(name) + "'");
    }

    std::vector<double> default_snr_grid()
    {
        std::vector<double> grid;
        for (int db = -10; db <= 20; ++db)
            grid.push_back(db);
        return grid;
    }

    ExperimentConfig ExperimentConfig::defaults(Scenario s)
    {
        ExperimentConfig c;
        c.scenario = s;
        c.trials_per_point = s == Scenario::miss ? 10000 : 100000;
        return c;
    }

    void ExperimentConfig::validate() const
    {
        require(!snr_grid_db.empty(), "SNR grid must not be empty");
        require(std::none_of(snr_grid_db.begin(), snr_grid_db.end(), [](double v) { return std::isnan(v); }),
                "SNR grid contains NaN");
        require(trials_per_point >= 100, "trials_per_point must be at least 100");
        require(m_active >= 1, "m_active must be at least 1");
        require(n_seraph >= 1, "n_seraph must be at least 1");
        require(pfa_target > 0.0 && pfa_target < 1.0, "pfa_target must lie in (0, 1)");
        require(t_bauds >= 1, "t_bauds must be at least 1");
        require(path_count >= 1, "path_count must be at least 1");
        require(enrolled_count >= 1, "enrolled_count must be at least 1");
        require(probe_count >= 8, "probe_count must be at least 8");
        require(sigma_h > 0.0 && std::isfinite(sigma_h), "sigma_h must be positive and finite");
        require(activation_threshold >= 0.0 && activation_threshold < 1.0, "activation_threshold must lie in [0, 1)");
        if (probe_count + enrolled_count > n_seraph * t_bauds)
            throw InsufficientDimensionsError("experiment: probe_count + enrolled_count exceeds n_seraph * t_bauds");
    }

    void to_json(nlohmann::json &j, const ExperimentConfig &c)
    {
        nlohmann::json grid = nlohmann::json::array();
        for (double v : c.snr_grid_db)
            grid.push_back(snr_to_json(v));
        j = nlohmann::json{{"scenario", std::string(to_string(c.scenario))},
                           {"snr_grid_db", std::move(grid)},
                           {"m_active", c.m_active},
                           {"n_seraph", c.n_seraph},
                           {"pfa_target", c.pfa_target},
                           {"trials_per_point", c.trials_per_point},
                           {"master_seed", c.master_seed},
                           {"t_bauds", c.t_bauds},
                           {"path_count", c.path_count},
                           {"enrolled_count", c.enrolled_count},
                           {"probe_count", c.probe_count},
                           {"sigma_h", c.sigma_h},
                           {"activation_threshold", c.activation_threshold},
                           {"clone_intruder", c.clone_intruder}};
    }

    void from_json(const nlohmann::json &j, ExperimentConfig &c)
    {
        if (!j.is_object())
            throw SchemaError("experiment config: expected a JSON object");
        static const std::vector<std::string> known = {
            "scenario",    "snr_grid_db",    "m_active",    "n_seraph", "pfa_target",           "trials_per_point", "master_seed",
            "t_bauds",     "path_count",     "enrolled_count", "probe_count", "sigma_h", "activation_threshold", "clone_intruder"};
        for (const auto &item : j.items())
            if (std::find(known.begin(), known.end(), item.key()) == known.end())
                throw SchemaError("experiment config: unknown key '" + item.key() + "'");

        if (const auto it = j.find("scenario"); it != j.end())
        {
            if (!it->is_string())
                throw SchemaError("experiment config: scenario must be a string");
            try
            {
                c.scenario = parse_scenario(it->get_ref<const std::string &>());
            }
            catch (const ParameterError &e)
            {
                throw SchemaError(e.what());
            }
        }
        if (const auto it = j.find("snr_grid_db"); it != j.end())
        {
            if (!it->is_array())
                throw SchemaError("experiment config: snr_grid_db must be an array");
            c.snr_grid_db.clear();
            for (const auto &v : *it)
                c.snr_grid_db.push_back(snr_from_json(v));
        }
        read_optional(j, "m_active", c.m_active);
        read_optional(j, "n_seraph", c.n_seraph);
        read_optional(j, "pfa_target", c.pfa_target);
        read_optional(j, "trials_per_point", c.trials_per_point);
        read_optional(j, "master_seed", c.master_seed);
        read_optional(j, "t_bauds", c.t_bauds);
        read_optional(j, "path_count", c.path_count);
        read_optional(j, "enrolled_count", c.enrolled_count);
        read_optional(j, "probe_count", c.probe_count);
        read_optional(j, "sigma_h", c.sigma_h);
        read_optional(j, "activation_threshold", c.activation_threshold);
        read_optional(j, "clone_intruder", c.clone_intruder);
    }

    std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence)
    {
        if (trials == 0)
            throw ParameterError("wilson interval: trials must be positive");
        if (successes > trials)
            throw ParameterError("wilson interval: successes exceed trials");
        if (!(confidence > 0.0 && confidence < 1.0))
            throw ParameterError("wilson interval: confidence must lie in (0, 1)");

        const double z = boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * confidence);
        const double n = static_cast<double>(trials);
        const double p = static_cast<double>(successes) / n;
        const double z2n = z * z / n;
        const double center = (p + 0.5 * z2n) / (1.0 + z2n);
        const double half = z / (1.0 + z2n) * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n);

        double low = successes == 0 ? 0.0 : std::clamp(center - half, 0.0, p);
        double high = successes == trials ? 1.0 : std::clamp(center + half, p, 1.0);
        return {low, high};
    }

    RateCurve make_curve(const ExperimentConfig &cfg, const std::vector<std::uint64_t> &events, std::uint64_t trials)
    {
        if (events.size() != cfg.snr_grid_db.size())
            throw DimensionError("experiment: event counts differ in length from the SNR grid");
        RateCurve curve;
        curve.scenario = cfg.scenario;
        curve.config = cfg;
        curve.points.reserve(events.size());
        for (std::size_t i = 0; i < events.size(); ++i)
        {
            RatePoint pt;
            pt.snr_db = cfg.snr_grid_db[i];
            pt.trials = trials;
            pt.events = events[i];
            pt.rate = static_cast<double>(events[i]) / static_cast<double>(trials);
            std::tie(pt.ci_low, pt.ci_high) = wilson_interval(events[i], trials);
            curve.points.push_back(pt);
        }
        return curve;
    }

    RateCurve merge_curves(const RateCurve &a, const RateCurve &b)
    {
        if (!(a.config == b.config) || a.points.size() != b.points.size())
            throw ParameterError("experiment: only curves of the same configuration can be merged");
        std::vector<std::uint64_t> events(a.points.size());
        std::uint64_t trials = 0;
        for (std::size_t i = 0; i < events.size(); ++i)
        {
            if (a.points[i].trials != a.points.front().trials || b.points[i].trials != b.points.front().trials)
                throw ParameterError("experiment: curve has uneven trial counts");
            events[i] = a.points[i].events + b.points[i].events;
            trials = a.points[i].trials + b.points[i].trials;
        }
        return make_curve(a.config, events, trials);
    }

    std::string experiment_device_id(std::size_t j)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "device-%03zu", j);
        return buf;
    }

    Experiment::Experiment(ExperimentConfig cfg) : cfg_(std::move(cfg))
    {
        cfg_.validate();
        const ArrayShape shape = ArrayShape::near_square(cfg_.m_active);
        for (std::size_t j = 0; j < cfg_.enrolled_count; ++j)
        {
            DeviceSpec spec;
            spec.device_id = experiment_device_id(j);
            spec.h_count = shape.h_count;
            spec.v_count = shape.v_count;
            spec.t_bauds = cfg_.t_bauds;
            spec.activation_threshold = cfg_.activation_threshold;
            spec.seed = derive_seed(cfg_.master_seed, streams::enrollment, j);
            spec.enrolled_at = enrolled_at_epoch;
            allowlist_ = enroll(make_device_profile(spec), allowlist_);
        }
        for (const auto &[id, profile] : allowlist_.devices())
            if (id != experiment_device_id(0))
                others_.push_back(&profile);
    }

    const DeviceProfile &Experiment::neo() const { return allowlist_.at(experiment_device_id(0)); }

    std::vector<bool> Experiment::trial_events(std::uint64_t i) const
    {
        const Seed ts = derive_seed(cfg_.master_seed, streams::trial, i);
        const DeviceProfile &device = neo();
        const auto rows = static_cast<Eigen::Index>(cfg_.n_seraph);
        const auto cols = static_cast<Eigen::Index>(cfg_.t_bauds);

        ChannelConfig cc;
        cc.n_seraph = cfg_.n_seraph;
        cc.path_count = cfg_.path_count;
        cc.sigma_h = cfg_.sigma_h;
        cc.seed = derive_seed(ts, streams::paths);
        const std::vector<Path> paths = draw_paths(cc, device.element_count());
        const CMatrix expected = apply_channel(channel_factors(paths, cc, device.transmit_array()), device.pilot.values);

        // Allowlist order is id order and Neo's id sorts first.
        std::vector<CMatrix> signals;
        signals.reserve(cfg_.enrolled_count);
        signals.push_back(expected);
        for (std::size_t j = 0; j < others_.size(); ++j)
        {
            const DeviceProfile &other = *others_[j];
            ChannelConfig oc = cc;
            oc.seed = derive_seed(ts, streams::other_paths, j);
            signals.push_back(apply_channel(channel_factors(draw_paths(oc, other.element_count()), oc, other.transmit_array()),
                                            other.pilot.values));
        }
        const NoiseProbes probes(signals, rows, cols, cfg_.probe_count);

        CMatrix signal;
        switch (cfg_.scenario)
        {
        case Scenario::miss:
            signal = expected;
            break;
        case Scenario::fa_noise:
            signal = CMatrix::Zero(rows, cols);
            break;
        case Scenario::intruder:
        {
            const std::size_t m = device.element_count();
            ChaoticNoise noise = cfg_.clone_intruder ? device.chaotic_noise
                                                     : ChaoticNoise::draw(m, derive_seed(ts, streams::intruder_noise));
            PilotMatrix pilot = device.pilot;
            if (!cfg_.clone_intruder)
            {
                PilotConfig pc = device.pilot_config;
                pc.seed = derive_seed(ts, streams::intruder_pilot);
                pilot = generate_pilot_matrix(pc);
            }
            // A random transmitter sits elsewhere and sees its own paths; a clone must share Neo's.
            ChannelConfig ic = cc;
            if (!cfg_.clone_intruder)
                ic.seed = derive_seed(ts, streams::intruder_paths);
            const std::vector<Path> intruder_paths = cfg_.clone_intruder ? paths : draw_paths(ic, m);
            const TransmitArray tx = TransmitArray::perturbed(device.shape(), std::move(noise));
            signal = apply_channel(channel_factors(intruder_paths, ic, tx), pilot.values);
            break;
        }
        }

        const CMatrix unit_noise = draw_unit_noise(rows, cols, derive_seed(ts, streams::awgn));
        const double energy = expected.squaredNorm();

        std::vector<bool> events(cfg_.snr_grid_db.size());
        for (std::size_t p = 0; p < events.size(); ++p)
        {
            const ReceivedFrame y = receive(signal, unit_noise, cfg_.sigma_h, cfg_.snr_grid_db[p]);
            double sigma2 = probes.estimate(y.samples);
            if (y.true_noise_variance == 0.0)
                sigma2 = noiseless_scale * std::max(energy, 1.0);
            const bool accepted =
                evaluate(correlate(expected, y.samples), energy, sigma2, cfg_.pfa_target, cfg_.probe_count).accepted;
            events[p] = cfg_.scenario == Scenario::miss ? !accepted : accepted;
        }
        return events;
    }

    std::vector<std::uint64_t> Experiment::count_events(std::uint64_t first, std::uint64_t count, unsigned threads) const
    {
        const std::size_t points = cfg_.snr_grid_db.size();
        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());
        const auto workers = static_cast<unsigned>(std::clamp<std::uint64_t>(count, 1, threads));

        std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(points, 0));
        std::vector<std::exception_ptr> errors(workers);
        auto work = [&](unsigned w) {
            const std::uint64_t lo = first + count * w / workers;
            const std::uint64_t hi = first + count * (w + 1) / workers;
            try
            {
                for (std::uint64_t i = lo; i < hi; ++i)
                {
                    const std::vector<bool> ev = trial_events(i);
                    for (std::size_t p = 0; p < points; ++p)
                        partial[w][p] += ev[p] ? 1 : 0;
                }
            }
            catch (...)
            {
                errors[w] = std::current_exception();
            }
        };

        if (workers == 1)
            work(0);
        else
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(work, w);
        }

        for (const auto &e : errors)
            if (e)
                std::rethrow_exception(e);

        std::vector<std::uint64_t> total(points, 0);
        for (const auto &part : partial)
            for (std::size_t p = 0; p < points; ++p)
                total[p] += part[p];
        return total;
    }

    RateCurve Experiment::run(const RunOptions &opts) const
    {
        const std::uint64_t n = cfg_.trials_per_point;
        if (opts.first_trial >= n)
            throw ParameterError("experiment: first_trial lies beyond trials_per_point");
        const std::uint64_t count = opts.trial_count == 0 ? n - opts.first_trial : opts.trial_count;
        if (count > n - opts.first_trial)
            throw ParameterError("experiment: trial range exceeds trials_per_point");
        return make_curve(cfg_, count_events(opts.first_trial, count, opts.threads), count);
    }

    RateCurve run_miss_curve(const ExperimentConfig &cfg, const RunOptions &opts)
    {
        require(cfg.scenario == Scenario::miss, "run_miss_curve requires scenario = miss");
        return Experiment(cfg).run(opts);
    }

    RateCurve run_fa_noise_curve(const ExperimentConfig &cfg, const RunOptions &opts)
    {
        require(cfg.scenario == Scenario::fa_noise, "run_fa_noise_curve requires scenario = fa_noise");
        return Experiment(cfg).run(opts);
    }

    RateCurve run_intruder_curve(const ExperimentConfig &cfg, const RunOptions &opts)
    {
        require(cfg.scenario == Scenario::intruder, "run_intruder_curve requires scenario = intruder");
        return Experiment(cfg).run(opts);
    }

    RateCurve run_experiment(const ExperimentConfig &cfg, const RunOptions &opts)
    {
        switch (cfg.scenario)
        {
        case Scenario::miss:
            return run_miss_curve(cfg, opts);
        case Scenario::fa_noise:
            return run_fa_noise_curve(cfg, opts);
        case Scenario::intruder:
            return run_intruder_curve(cfg, opts);
        }
        throw ParameterError("experiment: unknown scenario");
    }

    std::string format_number(double v)
    {
        if (v == 0.0)
            v = 0.0; // drop the sign of -0
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    }

    void write_csv(std::ostream &out, const std::vector<RateCurve> &curves)
    {
        out << csv_header << '\n';
        for (const RateCurve &c : curves)
            for (const RatePoint &p : c.points)
            {
                out << to_string(c.scenario) << ',' << format_number(p.snr_db) << ',' << std::to_string(c.config.m_active)
                    << ',' << std::to_string(c.config.n_seraph) << ',' << format_number(c.config.pfa_target) << ','
                    << std::to_string(p.trials) << ',' << std::to_string(p.events) << ',' << format_number(p.rate) << ','
                    << format_number(p.ci_low) << ',' << format_number(p.ci_high) << ','
                    << std::to_string(c.config.master_seed) << '\n';
            }
    }

    std::string to_csv(const std::vector<RateCurve> &curves)
    {
        std::ostringstream out;
        write_csv(out, curves);
        return out.str();
    }
}
