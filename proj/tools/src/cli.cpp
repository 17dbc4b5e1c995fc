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

#include "arraymetrics_cli/cli.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "arraymetrics/error.hpp"
#include "arraymetrics/geometry.hpp"
#include "arraymetrics/montecarlo.hpp"
#include "arraymetrics/registry.hpp"

namespace fs = std::filesystem;

namespace arraymetrics::cli
{
    namespace
    {
        constexpr std::string_view default_enrolled_at = "1970-01-01T00:00:00Z";

        double parse_real(std::string_view s)
        {
            while (!s.empty() && s.front() == ' ')
                s.remove_prefix(1);
            while (!s.empty() && s.back() == ' ')
                s.remove_suffix(1);
            if (s == "inf" || s == "+inf")
                return std::numeric_limits<double>::infinity();
            double v = 0.0;
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
                throw ParameterError("snr grid: cannot parse '" + std::string(s) + "'");
            return v;
        }

        // Writes next to the target and renames, so readers never see a partial file.
        void write_atomically(const fs::path &path, const std::string &content)
        {
            fs::path tmp = path;
            tmp += ".tmp";
            {
                std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
                if (!f)
                    throw Error("cannot open '" + tmp.string() + "' for writing");
                f << content;
                f.flush();
                if (!f)
                {
                    f.close();
                    std::error_code ec;
                    fs::remove(tmp, ec);
                    throw Error("failed writing '" + tmp.string() + "'");
                }
            }
            std::error_code ec;
            fs::rename(tmp, path, ec);
            if (ec)
            {
                fs::remove(tmp, ec);
                throw Error("cannot move output into place at '" + path.string() + "'");
            }
        }

        std::string hex_seed(Seed s)
        {
            char buf[24];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(s));
            return buf;
        }

        struct EnrollArgs
        {
            std::string registry;
            std::string id;
            std::size_t h_count = 4;
            std::size_t v_count = 4;
            std::size_t t_bauds = default_t_bauds;
            double nu = 0.0;
            double lambda0 = default_lambda0;
            double lambdag = 0.6 * default_lambda0;
            Seed seed = 0;
            std::string enrolled_at{default_enrolled_at};
        };

        int cmd_enroll(const EnrollArgs &a, std::ostream &out)
        {
            Registry reg;
            if (fs::exists(a.registry))
                reg = load_registry(a.registry);

            DeviceSpec spec;
            spec.device_id = a.id.empty() ? "dev-" + hex_seed(a.seed) : a.id;
            spec.h_count = a.h_count;
            spec.v_count = a.v_count;
            spec.t_bauds = a.t_bauds;
            spec.activation_threshold = a.nu;
            spec.lambda0 = a.lambda0;
            spec.lambdag = a.lambdag;
            spec.seed = a.seed;
            spec.enrolled_at = a.enrolled_at;

            reg = enroll(make_device_profile(spec), reg);
            save_registry(reg, a.registry);
            out << spec.device_id << '\n';
            return 0;
        }

        struct RenderArgs
        {
            std::string registry;
            std::string device_id;
            std::string out;
            Seed seed = 0;
        };

        int cmd_render(const RenderArgs &a, std::ostream &out)
        {
            const Registry reg = load_registry(a.registry);
            const DeviceProfile &dev = reg.at(a.device_id);
            write_atomically(a.out, render_geometry_svg(dev.geometry));
            out << "wrote " << a.out << " (" << dev.element_count() << " elements)\n";
            return 0;
        }

        struct ShowArgs
        {
            std::string registry;
            bool json = false;
            Seed seed = 0;
        };

        int cmd_show(const ShowArgs &a, std::ostream &out)
        {
            const Registry reg = load_registry(a.registry);
            if (a.json)
            {
                out << serialize_registry(reg);
                return 0;
            }
            char line[256];
            std::snprintf(line, sizeof line, "%-24s %-7s %4s %6s %7s  %s\n", "device_id", "shape", "T", "nu", "active",
                          "enrolled_at");
            out << line;
            for (const auto &[id, dev] : reg.devices())
            {
                const std::string shape = std::to_string(dev.geometry.params.h_count) + "x" +
                                          std::to_string(dev.geometry.params.v_count);
                std::snprintf(line, sizeof line, "%-24s %-7s %4zu %6.3f %7lld  %s\n", id.c_str(), shape.c_str(),
                              dev.pilot_config.t_bauds, dev.pilot_config.activation_threshold,
                              static_cast<long long>(dev.pilot.active_mask.count()), dev.enrolled_at.c_str());
                out << line;
            }
            out << reg.size() << " device(s)\n";
            return 0;
        }

        struct SimulateArgs
        {
            std::string config;
            std::string scenario;
            std::string snr_grid;
            std::size_t m_active = 0;
            std::size_t n_seraph = 0;
            double pfa = 0.0;
            std::size_t trials = 0;
            Seed seed = 0;
            std::size_t t_bauds = 0;
            std::size_t paths = 0;
            std::size_t enrolled = 0;
            std::size_t probes = 0;
            double sigma_h = 0.0;
            double nu = 0.0;
            unsigned threads = 0;
            std::string out;
            std::string echo;
            bool quiet = false;
        };

        ExperimentConfig assemble(const SimulateArgs &a, const CLI::App &sub)
        {
            auto given = [&](const char *name) { return sub.count(name) > 0; };

            nlohmann::json file;
            if (!a.config.empty())
            {
                std::ifstream f(a.config);
                if (!f)
                    throw Error("cannot read config '" + a.config + "'");
                try
                {
                    file = nlohmann::json::parse(f);
                }
                catch (const nlohmann::json::exception &e)
                {
                    throw SchemaError("config '" + a.config + "': " + e.what());
                }
                if (!file.is_object())
                    throw SchemaError("config '" + a.config + "': expected a JSON object");
            }

            Scenario scenario = Scenario::miss;
            if (given("--scenario"))
                scenario = parse_scenario(a.scenario);
            else if (file.contains("scenario") && file["scenario"].is_string())
                scenario = parse_scenario(file["scenario"].get<std::string>());

            ExperimentConfig cfg = ExperimentConfig::defaults(scenario);
            if (!file.is_null())
                from_json(file, cfg);
            cfg.scenario = scenario;

            if (given("--snr-grid"))
                cfg.snr_grid_db = parse_snr_grid(a.snr_grid);
            if (given("--m-active"))
                cfg.m_active = a.m_active;
            if (given("--n-seraph"))
                cfg.n_seraph = a.n_seraph;
            if (given("--pfa"))
                cfg.pfa_target = a.pfa;
            if (given("--trials"))
                cfg.trials_per_point = a.trials;
            if (given("--seed"))
                cfg.master_seed = a.seed;
            if (given("--t-bauds"))
                cfg.t_bauds = a.t_bauds;
            if (given("--paths"))
                cfg.path_count = a.paths;
            if (given("--enrolled"))
                cfg.enrolled_count = a.enrolled;
            if (given("--probes"))
                cfg.probe_count = a.probes;
            if (given("--sigma-h"))
                cfg.sigma_h = a.sigma_h;
            if (given("--nu"))
                cfg.activation_threshold = a.nu;
            cfg.validate();
            return cfg;
        }

        void print_summary(const RateCurve &c, std::ostream &out)
        {
            const char *label = c.scenario == Scenario::miss ? "miss" : "accept";
            char line[160];
            std::snprintf(line, sizeof line, "scenario=%s m_active=%zu n_seraph=%zu pfa=%g trials=%zu seed=%llu\n",
                          std::string(to_string(c.scenario)).c_str(), c.config.m_active, c.config.n_seraph,
                          c.config.pfa_target, c.config.trials_per_point,
                          static_cast<unsigned long long>(c.config.master_seed));
            out << line;
            std::snprintf(line, sizeof line, "%8s %10s %12s %12s %12s\n", "snr_db", "events", label, "ci_low", "ci_high");
            out << line;
            for (const RatePoint &p : c.points)
            {
                std::snprintf(line, sizeof line, "%8g %10llu %12.4e %12.4e %12.4e\n", p.snr_db,
                              static_cast<unsigned long long>(p.events), p.rate, p.ci_low, p.ci_high);
                out << line;
            }
        }

        int cmd_simulate(const SimulateArgs &a, const CLI::App &sub, std::ostream &out)
        {
            const ExperimentConfig cfg = assemble(a, sub);
            RunOptions opts;
            opts.threads = a.threads;
            const RateCurve curve = run_experiment(cfg, opts);

            write_atomically(a.out, to_csv({curve}));
            if (!a.echo.empty())
                write_atomically(a.echo, nlohmann::json(cfg).dump(2) + "\n");
            if (!a.quiet)
                print_summary(curve, out);
            return 0;
        }
    }

    std::vector<double> parse_snr_grid(std::string_view text)
    {
        std::vector<double> grid;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            const std::size_t comma = std::min(text.find(',', pos), text.size());
            const std::string_view item = text.substr(pos, comma - pos);
            const std::size_t c1 = item.find(':');
            if (c1 == std::string_view::npos)
                grid.push_back(parse_real(item));
            else
            {
                const std::size_t c2 = item.find(':', c1 + 1);
                if (c2 == std::string_view::npos || item.find(':', c2 + 1) != std::string_view::npos)
                    throw ParameterError("snr grid: ranges take the form start:step:stop");
                const double start = parse_real(item.substr(0, c1));
                const double step = parse_real(item.substr(c1 + 1, c2 - c1 - 1));
                const double stop = parse_real(item.substr(c2 + 1));
                if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start)
                    throw ParameterError("snr grid: range needs a positive step and start <= stop");
                const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
                if (n > 100000)
                    throw ParameterError("snr grid: range has too many points");
                for (long i = 0; i <= n; ++i)
                    grid.push_back(start + static_cast<double>(i) * step);
            }
            pos = comma + 1;
        }
        return grid;
    }

    int run(int argc, char **argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Physical-layer authentication of chaotic antenna arrays"};
        app.name("arraymetrics");
        app.require_subcommand(1);

        EnrollArgs enroll_args;
        auto *enroll_cmd = app.add_subcommand("enroll", "Characterize a new device and add it to the registry");
        enroll_cmd->add_option("--registry", enroll_args.registry, "Registry JSON file (created if missing)")->required();
        enroll_cmd->add_option("--id", enroll_args.id, "Device id (default: dev-<seed in hex>)");
        enroll_cmd->add_option("--h-count", enroll_args.h_count, "Elements per row")->check(CLI::PositiveNumber);
        enroll_cmd->add_option("--v-count", enroll_args.v_count, "Elements per column")->check(CLI::PositiveNumber);
        enroll_cmd->add_option("--t-bauds", enroll_args.t_bauds, "Pilot length in bauds")->check(CLI::PositiveNumber);
        enroll_cmd->add_option("--nu", enroll_args.nu, "Pilot activation threshold")->check(CLI::Range(0.0, 1.0));
        enroll_cmd->add_option("--lambda0", enroll_args.lambda0, "Carrier wavelength [m]");
        enroll_cmd->add_option("--lambdag", enroll_args.lambdag, "Guided wavelength [m]");
        enroll_cmd->add_option("--seed", enroll_args.seed, "Enrollment seed");
        enroll_cmd->add_option("--enrolled-at", enroll_args.enrolled_at, "ISO-8601 UTC timestamp to record");

        RenderArgs render_args;
        auto *render_cmd = app.add_subcommand("render-geometry", "Render an enrolled geometry as SVG");
        render_cmd->add_option("--registry", render_args.registry, "Registry JSON file")->required();
        render_cmd->add_option("--device-id", render_args.device_id, "Device to render")->required();
        render_cmd->add_option("--out", render_args.out, "SVG output path")->required();
        render_cmd->add_option("--seed", render_args.seed, "Accepted for uniformity; unused");

        SimulateArgs sim_args;
        auto *sim_cmd = app.add_subcommand("simulate", "Run a Monte Carlo rate curve and write CSV");
        sim_cmd->add_option("--config", sim_args.config, "Experiment config JSON; flags override its values");
        sim_cmd->add_option("--scenario", sim_args.scenario, "miss | fa_noise | intruder")
            ->check(CLI::IsMember({"miss", "fa_noise", "intruder"}));
        sim_cmd->add_option("--snr-grid", sim_args.snr_grid, "SNR points in dB, e.g. -10:1:20 or 0,5,10");
        sim_cmd->add_option("--m-active", sim_args.m_active, "Transmit antennas of the enrolled device");
        sim_cmd->add_option("--n-seraph", sim_args.n_seraph, "Receive antennas");
        sim_cmd->add_option("--pfa", sim_args.pfa, "Designed false-authentication probability");
        sim_cmd->add_option("--trials", sim_args.trials, "Trials per grid point");
        sim_cmd->add_option("--seed", sim_args.seed, "Master seed");
        sim_cmd->add_option("--t-bauds", sim_args.t_bauds, "Pilot length in bauds");
        sim_cmd->add_option("--paths", sim_args.paths, "Scattering paths per channel");
        sim_cmd->add_option("--enrolled", sim_args.enrolled, "Devices on the allowlist");
        sim_cmd->add_option("--probes", sim_args.probes, "Noise-estimation probes");
        sim_cmd->add_option("--sigma-h", sim_args.sigma_h, "Channel gain sigma_h");
        sim_cmd->add_option("--nu", sim_args.nu, "Pilot activation threshold");
        sim_cmd->add_option("--threads", sim_args.threads, "Worker cap (0 = all cores); results do not depend on it");
        sim_cmd->add_option("--out", sim_args.out, "CSV output path")->required();
        sim_cmd->add_option("--echo-config", sim_args.echo, "Also write the resolved config as JSON");
        sim_cmd->add_flag("--quiet", sim_args.quiet, "Suppress the summary table");

        ShowArgs show_args;
        auto *show_cmd = app.add_subcommand("show-registry", "List enrolled devices");
        show_cmd->add_option("--registry", show_args.registry, "Registry JSON file")->required();
        show_cmd->add_flag("--json", show_args.json, "Print the registry document");
        show_cmd->add_option("--seed", show_args.seed, "Accepted for uniformity; unused");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            return app.exit(e, out, err);
        }

        try
        {
            if (*enroll_cmd)
                return cmd_enroll(enroll_args, out);
            if (*render_cmd)
                return cmd_render(render_args, out);
            if (*sim_cmd)
                return cmd_simulate(sim_args, *sim_cmd, out);
            if (*show_cmd)
                return cmd_show(show_args, out);
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return 1;
        }
        return 1;
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        std::vector<std::string> owned;
        owned.reserve(args.size() + 1);
        owned.emplace_back("arraymetrics");
        owned.insert(owned.end(), args.begin(), args.end());
        std::vector<char *> argv;
        for (auto &s : owned)
            argv.push_back(s.data());
        argv.push_back(nullptr);
        return run(static_cast<int>(owned.size()), argv.data(), out, err);
    }
}
