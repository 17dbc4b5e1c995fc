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
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arraymetrics/registry.hpp"
#include "arraymetrics/types.hpp"

namespace arraymetrics
{
    enum class Scenario
    {
        miss,     ///< true device rejected
        fa_noise, ///< noise-only frame accepted
        intruder, ///< random-signature intruder accepted
    };

    std::string_view to_string(Scenario s) noexcept;
    Scenario parse_scenario(std::string_view name);

    /// Grid -10 ... 20 dB in 1 dB steps.
    std::vector<double> default_snr_grid();

    struct ExperimentConfig
    {
        Scenario scenario = Scenario::miss;
        std::vector<double> snr_grid_db = default_snr_grid();
        std::size_t m_active = 16;
        std::size_t n_seraph = 512;
        double pfa_target = 0.01;
        std::size_t trials_per_point = 10000;
        Seed master_seed = 0;
        std::size_t t_bauds = default_t_bauds;
        std::size_t path_count = 32;
        std::size_t enrolled_count = 1; ///< devices on the allowlist, Neo included
        std::size_t probe_count = 256;
        double sigma_h = 1.0;
        double activation_threshold = 0.0;
        bool clone_intruder = false; ///< intruder reuses Neo's h~ and X (test hook)

        /// 10^4 trials for miss curves, 10^5 otherwise.
        static ExperimentConfig defaults(Scenario s);

        void validate() const;

        friend bool operator==(const ExperimentConfig &, const ExperimentConfig &) = default;
    };

    void to_json(nlohmann::json &j, const ExperimentConfig &c);

    /// Missing keys keep their defaults; unknown keys are rejected.
    void from_json(const nlohmann::json &j, ExperimentConfig &c);

    struct RatePoint
    {
        double snr_db = 0.0;
        std::uint64_t trials = 0;
        std::uint64_t events = 0;
        double rate = 0.0;
        double ci_low = 0.0;
        double ci_high = 0.0;
    };

    struct RateCurve
    {
        Scenario scenario = Scenario::miss;
        ExperimentConfig config;
        std::vector<RatePoint> points;
    };

    /// Wilson score interval for a binomial proportion.
    std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence = 0.95);

    /// Builds the curve from per-point event counts.
    RateCurve make_curve(const ExperimentConfig &cfg, const std::vector<std::uint64_t> &events, std::uint64_t trials);

    /// Sums the counts of two runs over disjoint trial ranges of the same configuration.
    RateCurve merge_curves(const RateCurve &a, const RateCurve &b);

    struct RunOptions
    {
        unsigned threads = 0;           ///< worker cap, 0 = hardware concurrency
        std::uint64_t first_trial = 0;  ///< index of the first trial to run
        std::uint64_t trial_count = 0;  ///< 0 = trials_per_point - first_trial
    };

    /// Enrolled devices and per-trial kernel of one experiment.
    ///
    /// Trial i draws everything it needs from derive_seed(master_seed, trial, i): Neo's channel,
    /// the other enrolled devices' channels, the unit noise and, for intruders, h~' and X'. The
    /// same draws serve every grid point, only the noise scale changes with SNR.
    class Experiment
    {
    public:
        explicit Experiment(ExperimentConfig cfg);

        const ExperimentConfig &config() const noexcept { return cfg_; }
        const Registry &allowlist() const noexcept { return allowlist_; }
        const DeviceProfile &neo() const;

        /// Event indicator per grid point for trial i.
        std::vector<bool> trial_events(std::uint64_t i) const;

        /// Events per grid point over a trial range, split across workers.
        std::vector<std::uint64_t> count_events(std::uint64_t first, std::uint64_t count, unsigned threads) const;

        RateCurve run(const RunOptions &opts = {}) const;

    private:
        ExperimentConfig cfg_;
        Registry allowlist_;
        std::vector<const DeviceProfile *> others_;
    };

    RateCurve run_miss_curve(const ExperimentConfig &cfg, const RunOptions &opts = {});
    RateCurve run_fa_noise_curve(const ExperimentConfig &cfg, const RunOptions &opts = {});
    RateCurve run_intruder_curve(const ExperimentConfig &cfg, const RunOptions &opts = {});

    /// Dispatches on cfg.scenario.
    RateCurve run_experiment(const ExperimentConfig &cfg, const RunOptions &opts = {});

    /// Device id of the j-th enrolled device; Neo is j = 0.
    std::string experiment_device_id(std::size_t j);

    inline constexpr std::string_view csv_header =
        "scenario,snr_db,m_active,n_seraph,pfa_target,trials,events,rate,ci_low,ci_high,master_seed";

    /// Header row plus one row per grid point of every curve.
    void write_csv(std::ostream &out, const std::vector<RateCurve> &curves);
    std::string to_csv(const std::vector<RateCurve> &curves);

    /// Shortest round-trip decimal representation, independent of the global locale.
    std::string format_number(double v);
}
