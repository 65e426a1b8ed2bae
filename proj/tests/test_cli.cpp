// SPDX-License-Identifier: Apache-2.0
//
// nfce: near-field line-of-sight channel synthesis and wavefront estimation
// Copyright (C) 2026 The nfce authors
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

#include "catch_amalgamated.hpp"

#include "nfce/cli.hpp"
#include "nfce/config.hpp"
#include "nfce/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nfce;
namespace fs = std::filesystem;

namespace
{
    struct RunResult
    {
        int code = 0;
        std::string out, err;
    };

    RunResult run(std::vector<std::string> args)
    {
        args.insert(args.begin(), "nfce");
        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return {code, out.str(), err.str()};
    }

    fs::path fresh_dir(const std::string &name)
    {
        const fs::path dir = fs::temp_directory_path() / ("nfce_cli_test_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir;
    }

    fs::path write_config(const fs::path &dir, const std::string &text)
    {
        const fs::path p = dir / "run.cfg";
        write_text(p, text);
        return p;
    }

    std::vector<std::string> lines_of(const fs::path &file)
    {
        std::vector<std::string> out;
        std::ifstream is(file);
        for (std::string line; std::getline(is, line);)
            out.push_back(line);
        return out;
    }
} // namespace

TEST_CASE("channel files round-trip bit for bit", "[io]")
{
    const fs::path dir = fresh_dir("io");
    ChannelTensor h({2, 1, 3, 1, 2});
    for (std::size_t i = 0; i < h.size(); ++i)
        h[i] = cdouble(0.1 * static_cast<double>(i) - 1.0 / 3.0, std::ldexp(1.0, -static_cast<int>(i)));
    write_channel(dir / "h.bin", h);
    CHECK(fs::file_size(dir / "h.bin") == 5 * 8 + h.size() * 16);
    CHECK(read_channel(dir / "h.bin") == h);

    write_text(dir / "bad.bin", "short");
    CHECK_THROWS_AS(read_channel(dir / "bad.bin"), IoError);
    CHECK_THROWS_AS(read_channel(dir / "missing.bin"), IoError);
    CHECK_THROWS_AS(write_channel(dir / "no" / "h.bin", h), IoError);
}

TEST_CASE("configuration parsing", "[config]")
{
    const KeyValueConfig c = KeyValueConfig::parse("# c\nntx = 8 # x\n snr_db = 0:10:5\nL=1,2\n", "t");
    CHECK(c.get_int("ntx", 1) == 8);
    CHECK(c.get_doubles("snr_db", {}) == std::vector<double>{0.0, 5.0, 10.0});
    CHECK(c.get_ints("L", {}) == std::vector<int>{1, 2});
    CHECK(c.get_int("nty", 3) == 3);
    CHECK_THROWS_AS(KeyValueConfig::parse("bogus = 1\n", "t"), ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::parse("ntx\n", "t"), ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::parse("ntx =\n", "t"), ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::parse("ntx = eight\n", "t").get_int("ntx", 1), ConfigError);
}

TEST_CASE("preset registry", "[cli]")
{
    for (const char *name : {"ula32-single", "mle-2x1-1x1", "mle-32x32-32x32", "mse-unit-ula-single", "mse-unit-upa-upa-wideband", "mse-exact-ula-single", "mse-exact-upa-upa-wideband", "landscape-ula256"})
        CHECK(find_preset(name) != nullptr);
    CHECK(find_preset("nope") == nullptr);
    const RunResult r = run({"--list-presets"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("mse-unit-ula-single") != std::string::npos);
}

TEST_CASE("synth writes the documented tensor layout", "[cli]")
{
    const fs::path dir = fresh_dir("synth");
    const RunResult r = run({"synth", "--preset", "ula32-single", "--out", dir.string()});
    REQUIRE(r.code == kExitOk);
    const ChannelTensor h = read_channel(dir / "channel.bin");
    CHECK(h.shape() == Shape{1, 1, 32, 1, 1});
    const std::string meta = read_text(dir / "channel.bin.meta");
    CHECK(meta.find("schema_version = 1") != std::string::npos);
    CHECK(meta.find("preset = ula32-single") != std::string::npos);
}

TEST_CASE("exit codes for user errors", "[cli]")
{
    const fs::path dir = fresh_dir("errors");
    CHECK(run({"synth", "--preset", "ula32-single", "--out", (dir / "absent").string()}).code == kExitIo);

    const fs::path bad = write_config(dir, "ntx = 8\nwhatever = 3\n");
    const RunResult unknown = run({"synth", "--config", bad.string(), "--out", dir.string()});
    CHECK(unknown.code == kExitConfig);
    CHECK(unknown.err.find("whatever") != std::string::npos);

    CHECK(run({"synth", "--config", (dir / "nope.cfg").string(), "--out", dir.string()}).code == kExitConfig);
    CHECK(run({"mse", "--preset", "landscape-ula256", "--out", dir.string()}).code == kExitConfig);
    CHECK(run({"synth", "--preset", "unknown", "--out", dir.string()}).code == kExitConfig);
    CHECK(run({"synth"}).code == kExitConfig);
    CHECK(run({"mse", "--preset", "mse-unit-ula-single", "--trials", "0", "--out", dir.string()}).code == kExitConfig);

    const fs::path infeasible = write_config(dir, "ntx = 3\nL = 5\nsnr_db = 0\ntrials = 1\n");
    CHECK(run({"mse", "--config", infeasible.string(), "--out", dir.string()}).code == kExitConfig);
}

TEST_CASE("estimate round trip through files", "[cli]")
{
    const fs::path dir = fresh_dir("estimate");
    REQUIRE(run({"synth", "--preset", "ula32-single", "--out", dir.string()}).code == kExitOk);
    const fs::path cfg = write_config(dir, "L = 2\n");
    const RunResult r = run({"estimate", "--input", (dir / "channel.bin").string(), "--config", cfg.string(),
                             "--out", dir.string()});
    REQUIRE(r.code == kExitOk);
    const auto rows = lines_of(dir / "coefficients.csv");
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "m_rx_x,m_rx_y,m_tx_x,m_tx_y,m_f,a_cycles");
    CHECK(read_channel(dir / "channel_hat.bin").shape() == Shape{1, 1, 32, 1, 1});

    const fs::path pilots = write_config(dir, "L = 2\npilots = true\n");
    CHECK(run({"estimate", "--input", (dir / "channel.bin").string(), "--config", pilots.string(), "--out",
               dir.string()})
              .code == kExitOk);
}

TEST_CASE("mse sweep output and reproducibility", "[cli]")
{
    const fs::path a = fresh_dir("mse_a"), b = fresh_dir("mse_b");
    const fs::path cfg = write_config(a, "trials = 3\n");
    const RunResult ra = run({"mse", "--preset", "mse-unit-ula-single", "--config", cfg.string(), "--seed", "11", "--out",
                              a.string()});
    REQUIRE(ra.code == kExitOk);
    const RunResult rb = run({"mse", "--preset", "mse-unit-ula-single", "--config", cfg.string(), "--seed", "11", "--out",
                              b.string()});
    REQUIRE(rb.code == kExitOk);
    const auto rows = lines_of(a / "mse.csv");
    CHECK(rows.size() == 22);
    CHECK(rows[0] == "snr_db,mse_db_1,mse_db_2,mse_db_3");
    CHECK(read_text(a / "mse.csv") == read_text(b / "mse.csv"));
    CHECK(read_text(a / "crb.csv") == read_text(b / "crb.csv"));
    const std::string meta = read_text(a / "mse.meta");
    CHECK(meta.find("seed_override = 11") != std::string::npos);
    CHECK(meta.find("config_hash") != std::string::npos);

    const RunResult one = run({"mse", "--preset", "mse-unit-ula-single", "--trials", "1", "--out", a.string()});
    CHECK(one.code == kExitOk);
    CHECK_FALSE(one.err.empty());
}

TEST_CASE("mle and landscape outputs", "[cli]")
{
    const fs::path dir = fresh_dir("mle");
    const fs::path cfg = write_config(dir, "ntx = 4\niterations = 15\n");
    const RunResult r = run({"mle", "--preset", "mle-2x1-1x1", "--config", cfg.string(), "--starts", "2", "--out",
                             dir.string()});
    REQUIRE(r.code == kExitOk);
    const auto rows = lines_of(dir / "trajectory.csv");
    REQUIRE(rows.size() == 17);
    CHECK(rows[0] == "Iteration,Best_1_Cost_dB,Best_2_Cost_dB,Proxy_Cost_dB");
    CHECK(read_text(dir / "trajectory.meta").find("schema_version") != std::string::npos);

    const fs::path land = fresh_dir("landscape");
    REQUIRE(run({"landscape", "--preset", "landscape-ula256", "--out", land.string()}).code == kExitOk);
    const auto lrows = lines_of(land / "landscape.csv");
    CHECK(lrows.size() == 8002);
    bool found = false;
    for (const auto &row : lrows)
        if (row.rfind("5,", 0) == 0)
        {
            found = true;
            CHECK(row == "5,0,0");
        }
    CHECK(found);
}
