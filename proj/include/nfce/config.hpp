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

#ifndef NFCE_CONFIG_HPP
#define NFCE_CONFIG_HPP

#include "nfce/geometry.hpp"
#include "nfce/mle.hpp"
#include "nfce/sim.hpp"

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nfce
{
    struct ConfigError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Flat `key = value` text. `#` starts a comment; blank lines are ignored; later keys override.
    // Only keys from the documented schema are accepted.
    class KeyValueConfig
    {
    public:
        static KeyValueConfig parse(std::string_view text, const std::string &origin = "<string>");
        static KeyValueConfig from_file(const std::filesystem::path &path);

        // Values of `other` win
        void merge(const KeyValueConfig &other);
        void set(const std::string &key, const std::string &value);

        bool has(const std::string &key) const { return entries_.count(key) != 0; }
        std::string get_string(const std::string &key, const std::string &fallback) const;
        int get_int(const std::string &key, int fallback) const;
        double get_double(const std::string &key, double fallback) const;
        bool get_bool(const std::string &key, bool fallback) const;

        // Comma list "a,b,c" or inclusive range "start:stop:step"
        std::vector<double> get_doubles(const std::string &key, const std::vector<double> &fallback) const;
        std::vector<int> get_ints(const std::string &key, const std::vector<int> &fallback) const;

        const std::map<std::string, std::string> &entries() const { return entries_; }

        // Sorted `key = value` lines
        std::string dump() const;

    private:
        std::map<std::string, std::string> entries_;
    };

    const std::vector<std::string> &config_keys();

    ArraySpec array_from_config(const KeyValueConfig &cfg);
    GeometryPose pose_from_config(const KeyValueConfig &cfg);
    Amplitude amplitude_from_config(const KeyValueConfig &cfg, Amplitude fallback);
    std::uint64_t seed_from_config(const KeyValueConfig &cfg); // key `seed`, default 1
    ExperimentConfig experiment_from_config(const KeyValueConfig &cfg);
    MleConfig mle_from_config(const KeyValueConfig &cfg);
    LandscapeSetup landscape_from_config(const KeyValueConfig &cfg);

    struct Preset
    {
        std::string name;
        std::string subcommand;  // the subcommand the preset is meant for
        std::string description;
        std::string text;        // desk-scale configuration
        std::string full_text;   // overrides applied with --full-size; empty when desk scale is full scale
    };

    const std::vector<Preset> &preset_registry();
    const Preset *find_preset(std::string_view name);

} // namespace nfce

#endif
