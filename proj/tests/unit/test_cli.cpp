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

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "arraymetrics/error.hpp"
#include "arraymetrics/montecarlo.hpp"
#include "arraymetrics/registry.hpp"
#include "arraymetrics_cli/cli.hpp"

namespace fs = std::filesystem;
using arraymetrics::cli::run;

namespace
{
    struct Result
    {
        int code;
        std::string out;
        std::string err;
    };

    Result invoke(const std::vector<std::string> &args)
    {
        std::ostringstream out, err;
        const int code = run(args, out, err);
        return {code, out.str(), err.str()};
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream f(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(f), {}};
    }

    class Cli : public ::testing::Test
    {
    protected:
        void SetUp() override
        {
            dir_ = fs::temp_directory_path() / ("arraymetrics_cli_" + std::string(
                                                    ::testing::UnitTest::GetInstance()->current_test_info()->name()));
            fs::remove_all(dir_);
            fs::create_directories(dir_);
        }
        void TearDown() override { fs::remove_all(dir_); }

        std::string path(const std::string &name) const { return (dir_ / name).string(); }

        fs::path dir_;
    };

    const std::vector<std::string> smoke = {"simulate", "--scenario", "miss", "--snr-grid", "0:4:12", "--trials", "100",
                                            "--n-seraph", "64", "--m-active", "4", "--probes", "32", "--paths", "8"};
}

TEST_F(Cli, EnrollCreatesRegistryAndPrintsId)
{
    const Result r = invoke({"enroll", "--registry", path("reg.json"), "--seed", "5", "--id", "neo"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "neo\n");
    EXPECT_EQ(arraymetrics::load_registry(path("reg.json")).size(), 1u);

    const Result dup = invoke({"enroll", "--registry", path("reg.json"), "--seed", "6", "--id", "neo"});
    EXPECT_NE(dup.code, 0);
    EXPECT_NE(dup.err.find("neo"), std::string::npos);
    EXPECT_EQ(arraymetrics::load_registry(path("reg.json")).size(), 1u);

    const Result gen = invoke({"enroll", "--registry", path("reg.json"), "--seed", "255"});
    ASSERT_EQ(gen.code, 0) << gen.err;
    EXPECT_EQ(gen.out, "dev-00000000000000ff\n");
}

TEST_F(Cli, SameSeedGivesIdenticalNoisePayload)
{
    ASSERT_EQ(invoke({"enroll", "--registry", path("reg.json"), "--seed", "9", "--id", "a"}).code, 0);
    ASSERT_EQ(invoke({"enroll", "--registry", path("reg.json"), "--seed", "9", "--id", "b"}).code, 0);
    const nlohmann::json doc = nlohmann::json::parse(slurp(path("reg.json")));
    EXPECT_EQ(doc["devices"][0]["chaotic_noise"], doc["devices"][1]["chaotic_noise"]);
    EXPECT_EQ(doc["devices"][0]["pilot"], doc["devices"][1]["pilot"]);
}

TEST_F(Cli, EnrollIsDeterministic)
{
    ASSERT_EQ(invoke({"enroll", "--registry", path("a.json"), "--seed", "3", "--t-bauds", "4", "--nu", "0.2"}).code, 0);
    ASSERT_EQ(invoke({"enroll", "--registry", path("b.json"), "--seed", "3", "--t-bauds", "4", "--nu", "0.2"}).code, 0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(Cli, UnwritableRegistryFails)
{
    const Result r = invoke({"enroll", "--registry", "/dev/null/reg.json", "--seed", "1"});
    EXPECT_NE(r.code, 0);
}

TEST_F(Cli, UnknownFlagsAreRejected)
{
    EXPECT_NE(invoke({"enroll", "--registry", path("r.json"), "--bogus", "1"}).code, 0);
    EXPECT_NE(invoke({"show-registry", "--registry", path("r.json"), "--verbose"}).code, 0);
    EXPECT_NE(invoke({"frobnicate"}).code, 0);
    EXPECT_NE(invoke({}).code, 0);
}

TEST_F(Cli, RenderGeometry)
{
    ASSERT_EQ(invoke({"enroll", "--registry", path("reg.json"), "--seed", "4", "--id", "neo"}).code, 0);
    const Result r = invoke({"render-geometry", "--registry", path("reg.json"), "--device-id", "neo", "--out",
                             path("neo.svg"), "--seed", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string svg = slurp(path("neo.svg"));
    const std::regex element(R"(<polygon class="element")");
    EXPECT_EQ(std::distance(std::sregex_iterator(svg.begin(), svg.end(), element), std::sregex_iterator()), 16);

    ASSERT_EQ(invoke({"render-geometry", "--registry", path("reg.json"), "--device-id", "neo", "--out", path("again.svg")})
                  .code,
              0);
    EXPECT_EQ(svg, slurp(path("again.svg")));

    const Result missing =
        invoke({"render-geometry", "--registry", path("reg.json"), "--device-id", "smith", "--out", path("x.svg")});
    EXPECT_NE(missing.code, 0);
    EXPECT_FALSE(fs::exists(path("x.svg")));
}

TEST_F(Cli, ShowRegistry)
{
    ASSERT_EQ(invoke({"enroll", "--registry", path("reg.json"), "--seed", "4", "--id", "neo"}).code, 0);
    const Result r = invoke({"show-registry", "--registry", path("reg.json"), "--seed", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("neo"), std::string::npos);
    EXPECT_NE(r.out.find("4x4"), std::string::npos);
    const Result j = invoke({"show-registry", "--registry", path("reg.json"), "--json"});
    EXPECT_EQ(j.out, slurp(path("reg.json")));
}

TEST_F(Cli, SimulateSmokeRun)
{
    std::vector<std::string> args = smoke;
    args.insert(args.end(), {"--seed", "17", "--out", path("miss.csv")});
    const Result r = invoke(args);
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream csv(slurp(path("miss.csv")));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, arraymetrics::csv_header);
    int rows = 0;
    while (std::getline(csv, line))
        ++rows;
    EXPECT_EQ(rows, 4);
    EXPECT_NE(r.out.find("snr_db"), std::string::npos);
    EXPECT_FALSE(fs::exists(path("miss.csv.tmp")));
}

TEST_F(Cli, SimulateIsDeterministicAcrossThreadCounts)
{
    std::vector<std::string> a = smoke, b = smoke;
    a.insert(a.end(), {"--seed", "3", "--threads", "1", "--out", path("a.csv")});
    b.insert(b.end(), {"--seed", "3", "--threads", "4", "--out", path("b.csv")});
    ASSERT_EQ(invoke(a).code, 0);
    ASSERT_EQ(invoke(b).code, 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(Cli, NoiseOnlySummaryNearTarget)
{
    const Result r = invoke({"simulate", "--scenario", "fa_noise", "--snr-grid", "-10", "--trials", "20000", "--pfa",
                             "0.01", "--n-seraph", "64", "--m-active", "4", "--probes", "32", "--paths", "8", "--seed",
                             "1", "--out", path("fa.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream csv(slurp(path("fa.csv")));
    std::string header, row;
    std::getline(csv, header);
    std::getline(csv, row);
    std::vector<std::string> cells;
    std::stringstream ss(row);
    for (std::string cell; std::getline(ss, cell, ',');)
        cells.push_back(cell);
    ASSERT_EQ(cells.size(), 11u);
    const double rate = std::stod(cells[7]);
    EXPECT_NEAR(rate, 0.01, 3.0 * std::sqrt(0.01 * 0.99 / 20000));
}

TEST_F(Cli, ConfigFileWithFlagOverrides)
{
    arraymetrics::ExperimentConfig cfg = arraymetrics::ExperimentConfig::defaults(arraymetrics::Scenario::intruder);
    cfg.snr_grid_db = {0.0, 10.0};
    cfg.trials_per_point = 150;
    cfg.n_seraph = 64;
    cfg.m_active = 4;
    cfg.probe_count = 32;
    cfg.path_count = 8;
    cfg.master_seed = 11;
    std::ofstream(path("cfg.json")) << nlohmann::json(cfg).dump();

    const Result r = invoke({"simulate", "--config", path("cfg.json"), "--trials", "120", "--out", path("o.csv"),
                             "--echo-config", path("echo.json"), "--quiet"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    const auto echo = nlohmann::json::parse(slurp(path("echo.json"))).get<arraymetrics::ExperimentConfig>();
    cfg.trials_per_point = 120;
    EXPECT_EQ(echo, cfg);
    EXPECT_NE(slurp(path("o.csv")).find("intruder,10,4,64,0.01,120,"), std::string::npos);
}

TEST_F(Cli, InvalidSimulationLeavesNoCsv)
{
    std::vector<std::string> args = smoke;
    args[6] = "50"; // --trials below the minimum
    args.insert(args.end(), {"--out", path("bad.csv")});
    const Result r = invoke(args);
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("trials"), std::string::npos);
    EXPECT_FALSE(fs::exists(path("bad.csv")));
    EXPECT_FALSE(fs::exists(path("bad.csv.tmp")));

    EXPECT_NE(invoke({"simulate", "--scenario", "nope", "--out", path("bad.csv")}).code, 0);
    EXPECT_NE(invoke({"simulate", "--snr-grid", "1:0:5", "--out", path("bad.csv")}).code, 0);
    EXPECT_NE(invoke({"simulate", "--config", path("missing.json"), "--out", path("bad.csv")}).code, 0);
    EXPECT_FALSE(fs::exists(path("bad.csv")));
}

TEST(CliGrid, ParsesListsRangesAndInfinity)
{
    using arraymetrics::cli::parse_snr_grid;
    EXPECT_EQ(parse_snr_grid("0,5,10"), (std::vector<double>{0, 5, 10}));
    EXPECT_EQ(parse_snr_grid("-10:5:10"), (std::vector<double>{-10, -5, 0, 5, 10}));
    EXPECT_EQ(parse_snr_grid("0:0.5:1,inf").back(), std::numeric_limits<double>::infinity());
    EXPECT_EQ(parse_snr_grid("0:0.1:1").size(), 11u);
    EXPECT_THROW(parse_snr_grid("a"), arraymetrics::ParameterError);
    EXPECT_THROW(parse_snr_grid("1:2"), arraymetrics::ParameterError);
    EXPECT_THROW(parse_snr_grid("5:1:0"), arraymetrics::ParameterError);
    EXPECT_THROW(parse_snr_grid(""), arraymetrics::ParameterError);
}
