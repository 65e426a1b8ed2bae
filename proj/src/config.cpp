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

#include "nfce/config.hpp"
#include "nfce/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace nfce
{
    namespace
    {
        std::string trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return std::string(s.substr(b, e - b + 1));
        }

        std::vector<std::string> split(const std::string &s, char sep)
        {
            std::vector<std::string> out;
            std::string item;
            std::istringstream is(s);
            while (std::getline(is, item, sep))
                out.push_back(trim(item));
            return out;
        }

        double parse_double(const std::string &key, const std::string &text)
        {
            double v = 0.0;
            const char *end = text.data() + text.size();
            const auto res = std::from_chars(text.data(), end, v);
            if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v))
                throw ConfigError("key '" + key + "': not a finite number: '" + text + "'");
            return v;
        }

        int parse_int(const std::string &key, const std::string &text)
        {
            long long v = 0;
            const char *end = text.data() + text.size();
            const auto res = std::from_chars(text.data(), end, v);
            if (res.ec != std::errc() || res.ptr != end || v < -2147483647LL || v > 2147483647LL)
                throw ConfigError("key '" + key + "': not an integer: '" + text + "'");
            return static_cast<int>(v);
        }

        Vec3 parse_vec3(const KeyValueConfig &cfg, const std::string &key, const Vec3 &fallback)
        {
            if (!cfg.has(key))
                return fallback;
            const auto parts = split(cfg.get_string(key, ""), ',');
            if (parts.size() != 3)
                throw ConfigError("key '" + key + "' needs three comma-separated numbers");
            return Vec3(parse_double(key, parts[0]), parse_double(key, parts[1]), parse_double(key, parts[2]));
        }
    } // namespace

    const std::vector<std::string> &config_keys()
    {
        static const std::vector<std::string> keys = {
            "amplitude", "antennas", "cost", "distance", "df", "drx", "dry", "dtx", "dty", "euler",
            "fc", "fd_step", "gradient", "hi", "iterations", "L", "learning_rate", "lo", "nf", "nrx",
            "nry", "ntx", "nty", "pilots", "r", "seed", "shell_max", "shell_measure", "shell_min", "snr_db",
            "starts", "step", "threads", "trials"};
        return keys;
    }

    KeyValueConfig KeyValueConfig::parse(std::string_view text, const std::string &origin)
    {
        KeyValueConfig cfg;
        std::istringstream is{std::string(text)};
        std::string line;
        int number = 0;
        while (std::getline(is, line))
        {
            ++number;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.resize(hash);
            const std::string body = trim(line);
            if (body.empty())
                continue;
            const auto eq = body.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(number) + ": expected 'key = value'");
            const std::string key = trim(std::string_view(body).substr(0, eq));
            const std::string value = trim(std::string_view(body).substr(eq + 1));
            if (key.empty() || value.empty())
                throw ConfigError(origin + ":" + std::to_string(number) + ": empty key or value");
            try
            {
                cfg.set(key, value);
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(origin + ":" + std::to_string(number) + ": " + e.what());
            }
        }
        return cfg;
    }

    KeyValueConfig KeyValueConfig::from_file(const std::filesystem::path &path)
    {
        std::string text;
        try
        {
            text = read_text(path);
        }
        catch (const IoError &)
        {
            throw ConfigError("cannot read config file: " + path.string());
        }
        return parse(text, path.string());
    }

    void KeyValueConfig::merge(const KeyValueConfig &other)
    {
        for (const auto &[k, v] : other.entries_)
            entries_[k] = v;
    }

    void KeyValueConfig::set(const std::string &key, const std::string &value)
    {
        const auto &keys = config_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError("unknown key '" + key + "'");
        entries_[key] = value;
    }

    std::string KeyValueConfig::get_string(const std::string &key, const std::string &fallback) const
    {
        const auto it = entries_.find(key);
        return it == entries_.end() ? fallback : it->second;
    }

    int KeyValueConfig::get_int(const std::string &key, int fallback) const
    {
        return has(key) ? parse_int(key, get_string(key, "")) : fallback;
    }

    double KeyValueConfig::get_double(const std::string &key, double fallback) const
    {
        return has(key) ? parse_double(key, get_string(key, "")) : fallback;
    }

    bool KeyValueConfig::get_bool(const std::string &key, bool fallback) const
    {
        if (!has(key))
            return fallback;
        const std::string v = get_string(key, "");
        if (v == "true" || v == "1" || v == "yes")
            return true;
        if (v == "false" || v == "0" || v == "no")
            return false;
        throw ConfigError("key '" + key + "': expected true or false");
    }

    std::vector<double> KeyValueConfig::get_doubles(const std::string &key, const std::vector<double> &fallback) const
    {
        if (!has(key))
            return fallback;
        const std::string v = get_string(key, "");
        if (v.find(':') != std::string::npos)
        {
            const auto parts = split(v, ':');
            if (parts.size() != 3)
                throw ConfigError("key '" + key + "': range must be start:stop:step");
            const double start = parse_double(key, parts[0]);
            const double stop = parse_double(key, parts[1]);
            const double step = parse_double(key, parts[2]);
            if (!(step > 0.0) || stop < start)
                throw ConfigError("key '" + key + "': range needs step > 0 and stop >= start");
            const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
            if (count > 100000)
                throw ConfigError("key '" + key + "': range too long");
            std::vector<double> out(count);
            for (std::size_t i = 0; i < count; ++i)
                out[i] = start + static_cast<double>(i) * step;
            return out;
        }
        std::vector<double> out;
        for (const auto &p : split(v, ','))
            out.push_back(parse_double(key, p));
        if (out.empty())
            throw ConfigError("key '" + key + "': empty list");
        return out;
    }

    std::vector<int> KeyValueConfig::get_ints(const std::string &key, const std::vector<int> &fallback) const
    {
        if (!has(key))
            return fallback;
        std::vector<int> out;
        for (const auto &p : split(get_string(key, ""), ','))
            out.push_back(parse_int(key, p));
        if (out.empty())
            throw ConfigError("key '" + key + "': empty list");
        return out;
    }

    std::string KeyValueConfig::dump() const
    {
        std::string out;
        for (const auto &[k, v] : entries_)
            out += k + " = " + v + "\n";
        return out;
    }

    ArraySpec array_from_config(const KeyValueConfig &cfg)
    {
        const double fc = cfg.get_double("fc", 30e9);
        if (!(fc > 0.0))
            throw ConfigError("fc must be > 0");
        const int nf = cfg.get_int("nf", 1);
        ArraySpec s = ArraySpec::half_wavelength(cfg.get_int("ntx", 1), cfg.get_int("nty", 1), cfg.get_int("nrx", 1),
                                                 cfg.get_int("nry", 1), nf, fc, cfg.get_double("df", nf > 1 ? 5e-4 : 0.0));
        s.dtx = cfg.get_double("dtx", s.dtx);
        s.dty = cfg.get_double("dty", s.dty);
        s.drx = cfg.get_double("drx", s.drx);
        s.dry = cfg.get_double("dry", s.dry);
        try
        {
            s.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }
        return s;
    }

    GeometryPose pose_from_config(const KeyValueConfig &cfg)
    {
        GeometryPose pose;
        pose.r = parse_vec3(cfg, "r", Vec3(0.0, 0.0, 10.0));
        const Vec3 e = parse_vec3(cfg, "euler", Vec3::Zero());
        pose.R = rotation_from_euler(e(0), e(1), e(2));
        if (!(pose.r.norm() > 0.0))
            throw ConfigError("pose translation r must be nonzero");
        return pose;
    }

    Amplitude amplitude_from_config(const KeyValueConfig &cfg, Amplitude fallback)
    {
        if (!cfg.has("amplitude"))
            return fallback;
        const std::string v = cfg.get_string("amplitude", "");
        if (v == "unit")
            return Amplitude::unit;
        if (v == "exact")
            return Amplitude::exact;
        throw ConfigError("amplitude must be unit or exact");
    }

    namespace
    {
        ShellMeasure measure_from_config(const KeyValueConfig &cfg)
        {
            const std::string v = cfg.get_string("shell_measure", "volume");
            if (v == "volume")
                return ShellMeasure::volume;
            if (v == "radius")
                return ShellMeasure::radius;
            throw ConfigError("shell_measure must be volume or radius");
        }
    } // namespace

    std::uint64_t seed_from_config(const KeyValueConfig &cfg)
    {
        const std::string v = cfg.get_string("seed", "1");
        std::uint64_t seed = 0;
        const auto res = std::from_chars(v.data(), v.data() + v.size(), seed);
        if (res.ec != std::errc() || res.ptr != v.data() + v.size())
            throw ConfigError("seed must be a nonnegative integer");
        return seed;
    }

    ExperimentConfig experiment_from_config(const KeyValueConfig &cfg)
    {
        ExperimentConfig e;
        e.spec = array_from_config(cfg);
        e.snr_grid = cfg.get_doubles("snr_db", {0.0, 5.0, 10.0, 15.0, 20.0});
        e.L_list = cfg.get_ints("L", {1, 2, 3});
        e.trials = cfg.get_int("trials", 100);
        e.amplitude = amplitude_from_config(cfg, Amplitude::unit);
        e.shell_min = cfg.get_double("shell_min", 5.0);
        e.shell_max = cfg.get_double("shell_max", 15.0);
        e.shell_measure = measure_from_config(cfg);
        e.seed = seed_from_config(cfg);
        e.threads = cfg.get_int("threads", 0);
        try
        {
            e.validate();
        }
        catch (const std::invalid_argument &err)
        {
            throw ConfigError(err.what());
        }
        return e;
    }

    MleConfig mle_from_config(const KeyValueConfig &cfg)
    {
        MleConfig m;
        const std::string cost = cfg.get_string("cost", "complex_beta");
        if (cost == "plain")
            m.cost_variant = CostVariant::plain;
        else if (cost == "complex_beta")
            m.cost_variant = CostVariant::complex_beta;
        else if (cost == "unit_beta")
            m.cost_variant = CostVariant::unit_beta;
        else
            throw ConfigError("cost must be plain, complex_beta or unit_beta");
        m.learning_rate = cfg.get_double("learning_rate", 0.01);
        m.iterations = cfg.get_int("iterations", 500);
        m.num_starts = cfg.get_int("starts", 128);
        m.shell_min = cfg.get_double("shell_min", 5.0);
        m.shell_max = cfg.get_double("shell_max", 15.0);
        m.shell_measure = measure_from_config(cfg);
        const std::string grad = cfg.get_string("gradient", "finite_difference");
        if (grad == "finite_difference")
            m.gradient = GradientMode::finite_difference;
        else if (grad == "analytic")
            m.gradient = GradientMode::analytic;
        else
            throw ConfigError("gradient must be finite_difference or analytic");
        m.fd_step = cfg.get_double("fd_step", 1e-6);
        m.threads = cfg.get_int("threads", 0);
        try
        {
            m.validate();
        }
        catch (const std::invalid_argument &err)
        {
            throw ConfigError(err.what());
        }
        return m;
    }

    LandscapeSetup landscape_from_config(const KeyValueConfig &cfg)
    {
        LandscapeSetup s;
        s.antennas = cfg.get_int("antennas", 256);
        s.fc = cfg.get_double("fc", 30e9);
        s.amplitude = amplitude_from_config(cfg, Amplitude::exact);
        if (s.antennas < 1 || !(s.fc > 0.0))
            throw ConfigError("landscape needs antennas >= 1 and fc > 0");
        return s;
    }

    namespace
    {
        std::string array_text(int ntx, int nty, int nrx, int nry, int nf)
        {
            return "ntx = " + std::to_string(ntx) + "\nnty = " + std::to_string(nty) + "\nnrx = " + std::to_string(nrx) +
                   "\nnry = " + std::to_string(nry) + "\nnf = " + std::to_string(nf) + "\n";
        }

        std::vector<Preset> build_registry()
        {
            std::vector<Preset> r;
            r.push_back({"ula32-single", "synth", "32x1 transmit ULA to a single receive antenna, r = (0, 0, 10) m",
                         array_text(32, 1, 1, 1, 1) + "amplitude = exact\nr = 0,0,10\n", ""});

            struct Setup
            {
                const char *tag;
                int desk[5];
                int full[5];
            };
            const Setup mse_setups[] = {
                {"ula-single", {32, 1, 1, 1, 1}, {32, 1, 1, 1, 1}},
                {"ula-ula", {32, 1, 32, 1, 1}, {32, 1, 32, 1, 1}},
                {"upa-upa", {8, 8, 8, 8, 1}, {32, 32, 32, 32, 1}},
                {"ula-single-wideband", {32, 1, 1, 1, 32}, {32, 1, 1, 1, 32}},
                {"ula-ula-wideband", {32, 1, 32, 1, 8}, {32, 1, 32, 1, 32}},
                {"upa-upa-wideband", {8, 8, 8, 8, 8}, {32, 32, 32, 32, 32}},
            };
            for (const bool unit : {true, false})
            {
                for (const auto &s : mse_setups)
                {
                    const std::string common = std::string("amplitude = ") + (unit ? "unit" : "exact") +
                                               "\nsnr_db = 0:20:1\nL = 1,2,3\ntrials = 100\nshell_min = 5\nshell_max = 15\n";
                    const bool same = std::equal(std::begin(s.desk), std::end(s.desk), std::begin(s.full));
                    std::string full;
                    if (!same)
                        full = array_text(s.full[0], s.full[1], s.full[2], s.full[3], s.full[4]);
                    const std::string name = std::string(unit ? "mse-unit-" : "mse-exact-") + s.tag;
                    r.push_back({name, "mse",
                                 std::string(unit ? "unit" : "exact") + "-amplitude MSE sweep, " +
                                     std::to_string(s.desk[0]) + "x" + std::to_string(s.desk[1]) + " -> " +
                                     std::to_string(s.desk[2]) + "x" + std::to_string(s.desk[3]) + ", Nf = " +
                                     std::to_string(s.desk[4]),
                                 array_text(s.desk[0], s.desk[1], s.desk[2], s.desk[3], s.desk[4]) + common, full});
                }
            }

            struct TrajSetup
            {
                int n[4];
                int desk_starts;
            };
            const TrajSetup traj[] = {
                {{2, 1, 1, 1}, 128},   {{8, 1, 1, 1}, 128},   {{32, 1, 1, 1}, 128},
                {{2, 1, 2, 1}, 128},   {{8, 1, 8, 1}, 128},   {{32, 1, 32, 1}, 128},
                {{2, 2, 2, 2}, 128},   {{8, 8, 8, 8}, 32},    {{32, 32, 32, 32}, 4},
            };
            for (const auto &t : traj)
            {
                const std::string text = array_text(t.n[0], t.n[1], t.n[2], t.n[3], 1) +
                                         "amplitude = exact\nr = 0,0,10\neuler = 0,0,0\nsnr_db = 10\ncost = complex_beta\n"
                                         "learning_rate = 0.01\niterations = 500\nstarts = " +
                                         std::to_string(t.desk_starts) + "\nshell_min = 5\nshell_max = 15\n";
                r.push_back({"mle-" + std::to_string(t.n[0]) + "x" + std::to_string(t.n[1]) + "-" + std::to_string(t.n[2]) +
                                 "x" + std::to_string(t.n[3]),
                             "mle",
                             "multistart trajectories, " + std::to_string(t.n[0]) + "x" + std::to_string(t.n[1]) +
                                 " -> " + std::to_string(t.n[2]) + "x" + std::to_string(t.n[3]),
                             text, "starts = 1024\n"});
            }

            r.push_back({"landscape-ula256", "landscape", "noiseless distance scan, 256-antenna ULA, D = 5 m, lambda = 1 cm",
                         "antennas = 256\nfc = 30e9\namplitude = exact\ndistance = 5\nlo = 4.6\nhi = 5.4\nstep = 0.0001\n",
                         ""});
            return r;
        }
    } // namespace

    const std::vector<Preset> &preset_registry()
    {
        static const std::vector<Preset> registry = build_registry();
        return registry;
    }

    const Preset *find_preset(std::string_view name)
    {
        for (const auto &p : preset_registry())
            if (p.name == name)
                return &p;
        return nullptr;
    }

} // namespace nfce
